"""Batch command-line front end.

Subcommands: enumerate | qap | decompose | sequence | kak | roots | verify.
Exit codes: 0 all pass, 1 verification failures, 2 usage errors.  Output is
deterministic for a fixed configuration and seed; QAPKIT_THREADS caps the
worker fan-out of the verification sweeps (everything here runs in one
process, so it is a cap, not a request).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

import numpy as np

from . import gf2
from .bisubalgebra import BiSubalgebra, intrinsic_cartan, span_of
from .cartan import (
    AI,
    AII,
    AIII,
    DividedQAP,
    decide_type,
    enumerate_decompositions,
    intrinsic_aiii_t,
    nonintrinsic_aiii,
    render_cell_lambda,
    validate_decomposition,
)
from .kak import (
    factorize_sequence,
    kak,
    read_matrix,
    write_matrix,
)
from .partition import check_duality
from .qap import QAPartition, build_coquotient, build_qap, intrinsic_qap
from .rootsystem import corrupt_partition, generate, qap_partition_of, verify_criteria
from .sequence import BoundViolationError, build_sequence
from .spinor import SpinorIndex

SYMBOLIC_P_CAP = 5
MATRIX_P_CAP = 3


class UsageError(ValueError):
    pass


def _threads_cap() -> int:
    raw = os.environ.get("QAPKIT_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise UsageError(f"QAPKIT_THREADS must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise UsageError("QAPKIT_THREADS must be at least 1")
    return cap


def _parse_spinors(text: str, p: int) -> list[int]:
    out = []
    for token in text.replace(",", " ").split():
        s = SpinorIndex.parse(token)
        if s.p != p:
            raise UsageError(f"{token} does not live on {p} qubits")
        out.append(s.label)
    return out


def _emit(payload, fmt: str, text_renderer):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_renderer(payload):
            print(line)


def _check_p(p: int, matrix: bool = False):
    cap = MATRIX_P_CAP if matrix else SYMBOLIC_P_CAP
    if not 1 <= p <= cap:
        raise UsageError(f"p must be between 1 and {cap} for this command")


# -- enumerate -------------------------------------------------------------


def cmd_enumerate(args) -> int:
    _check_p(args.p)
    if args.p > 3:
        raise UsageError("exhaustive enumeration is capped at p = 3")
    width = 2 * args.p
    rows = []
    for basis in gf2.all_subspaces(width):
        b = BiSubalgebra(args.p, basis)
        if args.order is not None and b.order != args.order:
            continue
        if args.abelian_only and not b.is_abelian():
            continue
        if args.cartan_only and not b.is_cartan():
            continue
        rows.append(b)
    rows.sort(key=lambda b: (b.order, b.basis))
    payload = {
        "p": args.p,
        "order": args.order,
        "count": len(rows),
        "members": [b.to_json() for b in rows],
    }

    def text(data):
        yield f"bi-subalgebras of su(2^{data['p']})" + (
            f" with order {data['order']}" if data["order"] is not None else ""
        )
        yield f"count: {data['count']}"
        for item in data["members"]:
            yield "  order %d  basis %s" % (item["order"], " ".join(item["basis"]) or "-")

    _emit(payload, args.format, text)
    return 0


# -- qap --------------------------------------------------------------------


def _resolve_partition(args) -> QAPartition:
    p = args.p
    if args.cartan:
        cartan = span_of(_parse_spinors(args.cartan, p), p=p)
    else:
        cartan = intrinsic_cartan(p)
    if args.center_basis:
        center = span_of(_parse_spinors(args.center_basis, p), p=p)
    elif args.rank:
        center = BiSubalgebra(p, cartan.basis[args.rank :])
    else:
        center = cartan
    return build_qap(cartan, center)


def _qap_payload(part: QAPartition, coquotient: str | None, lam: bool):
    if coquotient:
        q = build_coquotient(part, part.key_of_cell_label(coquotient))
        rows = []
        for left, right in q.pairs():
            rows.append(
                {
                    "left": part.label_of_key(left),
                    "left_members": [str(s) for s in part.subspace(left).spinors()],
                    "right": part.label_of_key(right),
                    "right_members": [str(s) for s in part.subspace(right).spinors()],
                }
            )
            if lam:
                rows[-1]["left_lambda"] = render_cell_lambda(part, left)
                rows[-1]["right_lambda"] = render_cell_lambda(part, right)
        center_cell = {
            "label": part.label_of_key(q.center_key),
            "members": [str(s) for s in part.subspace(q.center_key).spinors()],
        }
        if lam:
            center_cell["lambda"] = render_cell_lambda(part, q.center_key)
        return {
            "kind": "coquotient",
            "p": part.p,
            "rank": part.rank,
            "center_kind": "degrade" if q.is_degrade else "regular",
            "top": center_cell,
            "rows": rows,
        }
    data = part.to_json()
    if lam:
        for cell in data["cells"]:
            key = part.key_of_cell_label(cell["label"])
            cell["lambda"] = render_cell_lambda(part, key)
    data["kind"] = "quotient"
    return data


def cmd_qap(args) -> int:
    _check_p(args.p)
    part = _resolve_partition(args)
    payload = _qap_payload(part, args.coquotient, args.lambda_render)

    def text(data):
        if data["kind"] == "coquotient":
            yield f"co-quotient table, center {data['top']['label']} ({data['center_kind']})"
            yield "  " + " ".join(data["top"]["members"])
            for row in data["rows"]:
                left = " ".join(row["left_members"]) or "{0}"
                right = " ".join(row["right_members"]) or "{0}"
                yield f"{row['left']:>16}: {left:48s} | {right:48s} :{row['right']}"
        else:
            yield f"quotient-algebra partition, p={data['p']} rank={data['rank']}"
            yield "  center " + " ".join(data["center"]["basis"])
            for cell in data["cells"]:
                members = " ".join(cell["members"]) or "{0}"
                yield f"{cell['label']:>16}: {members}"

    _emit(payload, args.format, text)
    return 0


# -- decompose ---------------------------------------------------------------


def cmd_decompose(args) -> int:
    _check_p(args.p)
    if args.mn:
        m, n = (int(tok) for tok in args.mn.split(","))
        div = DividedQAP(args.p, m, n)
        dec = (
            nonintrinsic_aiii(div, args.block_shift)
            if args.block_shift
            else intrinsic_aiii_t(div)
        )
        validate_decomposition(dec)
        payload = {
            "source": f"divided su({m}+{n})",
            "decompositions": [
                {
                    "type": AIII,
                    "t_dim": dec.t_dim(),
                    "t": [div.label_of_key(k) for k in dec.nonnull_t()],
                    "p": [div.label_of_key(k) for k in dec.nonnull_p()],
                    "t_lambda": sorted(
                        tok for k in dec.nonnull_t() for tok in div.render(k)
                    )
                    if args.lambda_render
                    else None,
                }
            ],
        }
    else:
        part = intrinsic_qap(args.p, args.rank)
        found = []
        for dec in enumerate_decompositions(part):
            decision = decide_type(dec)
            if args.type not in ("all", decision.chosen):
                continue
            validate_decomposition(dec, use_matrices=args.p <= MATRIX_P_CAP)
            found.append(
                {
                    "type": decision.chosen,
                    "t_dim": dec.t_dim(),
                    "t": [part.label_of_key(k) for k in dec.nonnull_t()],
                    "p": [part.label_of_key(k) for k in dec.nonnull_p()],
                }
            )
            if args.limit and len(found) >= args.limit:
                break
        payload = {
            "source": f"intrinsic rank-{args.rank} partition of su(2^{args.p})",
            "decompositions": found,
        }

    def text(data):
        yield data["source"]
        for item in data["decompositions"]:
            yield f"type {item['type']}  t-dimension {item['t_dim']}"
            yield "  t: " + " ".join(item["t"])
            yield "  p: " + " ".join(item["p"])
            if item.get("t_lambda"):
                yield "  t lambda: " + " ".join(item["t_lambda"])

    _emit(payload, args.format, text)
    return 0


# -- sequence ----------------------------------------------------------------


def cmd_sequence(args) -> int:
    _check_p(args.p)
    part = intrinsic_qap(args.p, args.rank)
    try:
        seq = build_sequence(part, args.length)
    except BoundViolationError as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return 1
    payload = seq.to_json()
    if args.type and any(
        level["type"] != args.type for level in payload["levels"]
    ):
        payload["note"] = f"requested type {args.type} not realized on every level"

    def text(data):
        yield f"decomposition sequence of length {data['length']}"
        for level in data["levels"]:
            yield (
                f"level {level['level']}: type {level['type']} "
                f"(admissible {' '.join(level['admissible_types'])})"
            )
            yield "  t: " + " ".join(level["t"])
            yield "  p: " + " ".join(level["p"])
        if "note" in data:
            yield "note: " + data["note"]

    _emit(payload, args.format, text)
    return 0


# -- kak ---------------------------------------------------------------------


def cmd_kak(args) -> int:
    u = read_matrix(args.infile)
    n = u.shape[0]
    p = n.bit_length() - 1
    _check_p(p, matrix=True)
    if args.sequence:
        types = [tok.strip().upper() for tok in args.sequence.split(",")]
        mn = tuple(int(x) for x in args.mn.split(",")) if args.mn else None
        tree = factorize_sequence(u, types, tol=args.tol, mn=mn)
        payload = tree.to_json()
        payload["recomposition_residual"] = tree.recomposition_residual(u)
        ok = payload["recomposition_residual"] < args.tol * 10 * tree.depth

        def text(data):
            yield f"factor tree of depth {len(data['types'])}: {' '.join(data['types'])}"
            yield f"recomposition residual: {data['recomposition_residual']:.3e}"
            for key, res in data["residuals"].items():
                yield f"  {key}: residual {res:.3e}"

        _emit(payload, args.format, text)
        return 0 if ok else 1
    kind = args.type.upper()
    m = int(args.mn.split(",")[0]) if args.mn else None
    result = kak(kind, u, m=m, tol=args.tol)
    payload = {
        "type": kind,
        "residual": result.residual,
        "metric_residual_k0": result.metric.constraint_residual(result.k0),
        "metric_residual_k1": result.metric.constraint_residual(result.k1),
    }
    if args.outfile:
        write_matrix(args.outfile + ".k0", result.k0)
        write_matrix(args.outfile + ".a", result.a)
        write_matrix(args.outfile + ".k1", result.k1)
        payload["written"] = [args.outfile + ext for ext in (".k0", ".a", ".k1")]

    def text(data):
        yield f"type {data['type']} factorization"
        yield f"recomposition residual: {data['residual']:.3e}"
        yield f"metric residuals: {data['metric_residual_k0']:.3e} {data['metric_residual_k1']:.3e}"
        for path in data.get("written", []):
            yield f"wrote {path}"

    _emit(payload, args.format, text)
    return 0 if result.residual < 1e-7 else 1


# -- roots -------------------------------------------------------------------


def cmd_roots(args) -> int:
    rs = generate(args.kind, args.rank)
    payload = {
        "kind": rs.kind,
        "rank": rs.rank_l,
        "count": len(rs),
        "roots": sorted(map(list, rs.roots)),
    }
    status = 0
    from .rootsystem import UnsupportedSystemError

    try:
        part = qap_partition_of(rs)
    except UnsupportedSystemError:
        part = None
    if part is None and args.verify:
        print("no conjugate-pair construction for this system", file=sys.stderr)
        return 2
    if part is not None:
        payload["pairs"] = {
            name: sorted(map(list, members)) for name, members in part.subspaces
        }
        payload["pair_count"] = part.pair_count()
        if args.verify:
            report = verify_criteria(rs, part)
            payload["criteria"] = {
                "negation": report.negation_ok,
                "addition": report.addition_ok,
            }
            status = 0 if report.all_pass else 1

    def text(data):
        yield f"root system {data['kind']} rank {data['rank']}: {data['count']} roots"
        if "pair_count" in data:
            yield f"conjugate pairs: {data['pair_count']}"
            for name, members in sorted(data["pairs"].items()):
                yield f"  {name}: " + " ".join(
                    "(" + ",".join(str(c) for c in r) + ")" for r in members
                )
        if "criteria" in data:
            yield f"criterion 1 (negation placement): {'pass' if data['criteria']['negation'] else 'FAIL'}"
            yield f"criterion 2 (additive closure):   {'pass' if data['criteria']['addition'] else 'FAIL'}"

    _emit(payload, args.format, text)
    return status


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    _check_p(args.p)
    rng = random.Random(args.seed)
    failures = []
    checks = []

    def record(name, ok):
        checks.append({"check": name, "ok": bool(ok)})
        if not ok:
            failures.append(name)

    p = args.p
    # duality sweep
    if p <= 2:
        ok = all(
            check_duality(BiSubalgebra(p, basis)) for basis in gf2.all_subspaces(2 * p)
        )
        record("duality: exhaustive over all bi-subalgebras", ok)
    else:
        ok = True
        for _ in range(args.samples):
            rows = tuple(
                rng.randrange(1, 1 << (2 * p)) for _ in range(rng.randrange(0, 2 * p))
            )
            ok = ok and check_duality(BiSubalgebra(p, rows))
        record(f"duality: {args.samples} random bi-subalgebras", ok)

    # closure and group orders for every rank
    for r in range(p + 1):
        part = intrinsic_qap(p, r, validate=False)
        try:
            if args.inject_fault and r == 0:
                raise AssertionError("injected fault")
            part.validate_closure()
            ok = part.key_count() == 1 << (p + r + 1)
            ok = ok and part.group_table_is_elementary_abelian()
        except AssertionError:
            ok = False
        record(f"closure and group order: rank {r}", ok)

    # decomposition conditions
    for r in range(min(p, 1) + 1):
        part = intrinsic_qap(p, r, validate=False)
        ok = True
        for dec in enumerate_decompositions(part):
            try:
                validate_decomposition(dec, use_matrices=p <= 2)
                decide_type(dec)
            except Exception:
                ok = False
                break
        record(f"decomposition sweep: rank {r}", ok)

    payload = {"p": p, "checks": checks, "failures": failures}

    def text(data):
        for item in data["checks"]:
            yield ("PASS  " if item["ok"] else "FAIL  ") + item["check"]
        yield f"{len(data['checks']) - len(data['failures'])}/{len(data['checks'])} checks passed"

    _emit(payload, args.format, text)
    return 1 if failures else 0


# -- wiring ------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qapkit",
        description="quotient-algebra partitions and KAK factorization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, matrix=False):
        sp.add_argument("--p", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("enumerate", help="list bi-subalgebras")
    common(sp)
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--abelian-only", action="store_true")
    sp.add_argument("--cartan-only", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("qap", help="quotient / co-quotient tables")
    common(sp)
    sp.add_argument("--rank", type=int, default=0)
    sp.add_argument("--intrinsic", action="store_true", help="use the diagonal frame")
    sp.add_argument("--cartan", default=None, help="comma list of frame spinors")
    sp.add_argument("--center-basis", default=None, help="comma list of center spinors")
    sp.add_argument("--coquotient", default=None, help="center cell label, e.g. W(B_000;1)")
    sp.add_argument("--lambda-render", action="store_true")
    sp.set_defaults(func=cmd_qap)

    sp = sub.add_parser("decompose", help="enumerate Cartan decompositions")
    common(sp)
    sp.add_argument("--rank", type=int, default=0)
    sp.add_argument("--type", choices=(AI, AII, AIII, "all"), default="all")
    sp.add_argument("--mn", default=None, help="m,n block split for the divided route")
    sp.add_argument("--block-shift", type=int, default=0)
    sp.add_argument("--limit", type=int, default=0)
    sp.add_argument("--lambda-render", action="store_true")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("sequence", help="build a t-p decomposition sequence")
    common(sp)
    sp.add_argument("--rank", type=int, default=0)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--type", choices=(AI, AII, AIII), default=None)
    sp.set_defaults(func=cmd_sequence)

    sp = sub.add_parser("kak", help="factor a unitary matrix")
    common(sp, matrix=True)
    sp.add_argument("--type", choices=(AI, AII, AIII), default=AI)
    sp.add_argument("--mn", default=None)
    sp.add_argument("--sequence", default=None, help="comma list of per-level types")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out", dest="outfile", default=None)
    sp.set_defaults(func=cmd_kak)

    sp = sub.add_parser("roots", help="root systems and their pair partitions")
    common(sp)
    sp.add_argument("--kind", choices=("A", "B", "C", "D", "G2"), required=True)
    sp.add_argument("--rank", type=int, default=3)
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("verify", help="run the invariant suite")
    common(sp)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--inject-fault", action="store_true", help="negative control")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        _threads_cap()
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
