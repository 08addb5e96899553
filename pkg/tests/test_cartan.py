import pytest

import fixtures_su8 as fx
from qapkit.bisubalgebra import intrinsic_cartan, span_of
from qapkit.cartan import (
    AI,
    AII,
    AIII,
    Decomposition,
    DividedQAP,
    MalformedDecompositionError,
    classify_abelian,
    decide_type,
    decomposition_from_functional,
    decomposition_from_nonnull_t,
    divide_intrinsic,
    enumerate_decompositions,
    intrinsic_aiii_t,
    maximal_abelian_in_p,
    nonintrinsic_aiii,
    pairs_of_gamma,
    render_cell_lambda,
    validate_decomposition,
)
from qapkit.qap import build_qap, intrinsic_qap
from qapkit.spinor import SpinorIndex


def lab(token):
    z, a = token.split("|")
    return SpinorIndex(len(z), int(z, 2), int(a, 2)).label


def keyset(part, triples):
    return [part.make_key(int(g, 2), i, e) for g, i, e in triples]


CIII = span_of([lab(t) for t in fx.CARTAN_CIII.split()], p=3)


class TestEnumerate:
    def test_count_matches_hyperplanes(self):
        part = intrinsic_qap(2, 0)
        decs = list(enumerate_decompositions(part))
        assert len(decs) == (1 << (2 + 0 + 1)) - 1
        assert len({d.t_keys for d in decs}) == len(decs)

    def test_su2_toy_three_decompositions(self):
        part = build_qap(span_of([lab("1|0")], p=1))
        decs = list(enumerate_decompositions(part))
        assert len(decs) == 3
        for d in decs:
            validate_decomposition(d)
            assert len([k for k in d.t_keys if part.cells[k] - {0}]) == 1

    def test_all_decompositions_valid_p2(self):
        for r in (0, 1):
            part = intrinsic_qap(2, r)
            for dec in enumerate_decompositions(part):
                validate_decomposition(dec)


class TestTypeLaw:
    def test_intrinsic_ai_su8(self):
        part = intrinsic_qap(3, 0)
        # epsilon functional: t = all hatted cells
        dec = decomposition_from_functional(part, 0b1)
        assert dec.t_dim() == 28
        decision = decide_type(dec)
        assert decision.chosen == AI
        desc = decision.abelian
        assert desc.kind == "cartan"
        assert desc.labels == intrinsic_cartan(3).members

    def test_intrinsic_aii_su8(self):
        part = intrinsic_qap(3, 1)
        dec = decomposition_from_nonnull_t(part, keyset(part, fx.E_T2_HAT))
        assert dec.t_dim() == 36
        decision = decide_type(dec)
        assert decision.chosen == AII
        assert decision.abelian.labels == span_of(
            [lab("001|000"), lab("010|000")], p=3
        ).members

    def test_appendix_ai_su8(self):
        part = intrinsic_qap(3, 1)
        dec = decomposition_from_nonnull_t(part, keyset(part, fx.E_T1))
        assert dec.t_dim() == 28
        assert decide_type(dec).chosen == AI

    def test_intrinsic_aiii_su8(self):
        part = build_qap(CIII, span_of([lab("010|000"), lab("001|000")], p=3))
        dec = decomposition_from_nonnull_t(part, keyset(part, fx.E_T3_HAT))
        assert dec.t_dim() == 31
        decision = decide_type(dec)
        assert decision.chosen == AIII
        # the abelian side is the coset completing the frame
        assert decision.abelian.kind == "coset"
        assert decision.abelian.labels == frozenset(
            lab(t) for t in fx.C8_TOP.split()
        )

    def test_type_counts_su8_rank1(self):
        part = intrinsic_qap(3, 1)
        dims = {AI: set(), AII: set(), AIII: set()}
        for dec in enumerate_decompositions(part):
            validate_decomposition(dec, use_matrices=False)
            decision = decide_type(dec)
            dims[decision.chosen].add(dec.t_dim())
        assert dims[AI] == {28}
        assert dims[AII] == {36}
        assert dims[AIII] == {31}

    def test_classify_coset_and_rejects_non_coset(self):
        desc = classify_abelian(frozenset({lab("001|000"), lab("010|000")}), 3)
        assert desc.kind == "coset" and desc.r == 2
        with pytest.raises(MalformedDecompositionError):
            classify_abelian(
                frozenset({lab("001|000"), lab("010|000"), lab("100|000")}), 3
            )


class TestLambdaRendering:
    def test_pairs_of_gamma(self):
        assert pairs_of_gamma(0b001, 3) == [(1, 2), (3, 4), (5, 6), (7, 8)]
        assert pairs_of_gamma(0b100, 3) == [(1, 5), (2, 6), (3, 7), (4, 8)]

    def test_cell_rendering_matches_merged_table(self):
        part = intrinsic_qap(3, 0)
        for (gamma, eps), text in fx.D1_LAMBDA.items():
            key = part.make_key(int(gamma, 2), 0, eps)
            want = sorted(
                ("lh" if tok.endswith("h") else "l") + tok.rstrip("h")
                for tok in text.split()
            )
            assert sorted(render_cell_lambda(part, key)) == want

    def test_d1_row_pairing(self):
        part = intrinsic_qap(3, 0)
        from qapkit.qap import build_coquotient

        center = part.make_key(0b100, 0, 0)
        q = build_coquotient(part, center)
        got = {frozenset(pair) for pair in q.pairs()}
        want = {
            frozenset(
                (part.make_key(int(g1, 2), 0, e1), part.make_key(int(g2, 2), 0, e2))
            )
            for (g1, e1), (g2, e2) in fx.D1_ROW_PAIRS
        }
        assert got == want


class TestDivided:
    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            DividedQAP(3, 5, 4)
        with pytest.raises(ValueError):
            DividedQAP(3, 8, 0)

    def test_balanced_cells(self):
        div = DividedQAP(3, 4, 4)
        # gamma with leading bit 0 stays block-diagonal, leading bit 1 straddles
        assert div.cells[div.make_key(0b001, 1, 1)] == frozenset()
        assert len(div.cells[div.make_key(0b001, 1, 0)]) == 4
        assert len(div.cells[div.make_key(0b100, 1, 1)]) == 4
        assert div.cells[div.make_key(0b100, 1, 0)] == frozenset()

    def test_cartan_slices(self):
        div = DividedQAP(3, 5, 3)
        assert len(div.cells[div.make_key(0, 1, 0)]) == 8
        assert div.cells[div.make_key(0, 1, 1)] == frozenset()
        assert div.cells[div.make_key(0, 0, 0)] == frozenset()
        assert div.cells[div.make_key(0, 0, 1)] == frozenset()

    def test_closure_all_splits_p3(self):
        for m in (4, 5, 6, 7):
            DividedQAP(3, m, 8 - m, validate=True)

    def test_division_requires_intrinsic_rank0(self):
        with pytest.raises(ValueError):
            divide_intrinsic(intrinsic_qap(3, 1), 4, 4)
        with pytest.raises(ValueError):
            divide_intrinsic(build_qap(CIII), 4, 4)


class TestIntrinsicAIII:
    @pytest.mark.parametrize(
        "m,n,dim", [(4, 4, 31), (5, 3, 33), (6, 2, 39), (7, 1, 49)]
    )
    def test_dimensions(self, m, n, dim):
        dec = intrinsic_aiii_t(DividedQAP(3, m, n))
        assert dec.t_dim() == dim
        validate_decomposition(dec)

    def test_su53_block_membership(self):
        div = DividedQAP(3, 5, 3)
        dec = intrinsic_aiii_t(div)
        members = {m for k in dec.nonnull_t() for m in div.cells[k]}
        lam = {m[1:] for m in members if m[0] == "lam"}
        blocks = lambda j: 0 if j <= 5 else 1
        assert all(blocks(k) == blocks(l) for k, l in lam)
        assert len(lam) == 13  # C(5,2) + C(3,2)

    def test_abelian_option_in_p(self):
        div = DividedQAP(3, 4, 4)
        dec = intrinsic_aiii_t(div)
        a_key = div.make_key(0b100, 0, 1)
        assert a_key in dec.p_keys
        assert div.cells_commute(a_key, a_key)
        for k in dec.nonnull_p():
            if k != a_key:
                assert not div.cells_commute(a_key, k)

    def test_su44_equals_undivided_route(self):
        div = DividedQAP(3, 4, 4)
        dec = intrinsic_aiii_t(div)
        t_lams = {m for k in dec.nonnull_t() for m in div.cells[k] if m[0] != "diag"}
        part = intrinsic_qap(3, 0)
        undivided = decomposition_from_functional(part, 0b100 << 1)
        want = set()
        for k in undivided.nonnull_t():
            gamma, _, eps = part.split_key(k)
            if gamma == 0:
                continue
            kind = "lam" if eps else "lamhat"
            want |= {(kind, a, b) for a, b in pairs_of_gamma(gamma, 3)}
        assert t_lams == want


class TestNonintrinsicAIII:
    def test_l0_is_intrinsic(self):
        div = DividedQAP(3, 5, 3)
        assert nonintrinsic_aiii(div, 0).t_keys == intrinsic_aiii_t(div).t_keys

    def test_su53_in_71_division(self):
        div = DividedQAP(3, 7, 1)
        dec = nonintrinsic_aiii(div, 1)
        assert dec.t_dim() == 33
        validate_decomposition(dec)
        # t takes kappa = a.gamma with a = 101, up to block relabeling
        got = {div.split_key(k) for k in dec.nonnull_t()}
        assert (0, 1, 0) in got

    def test_signature_arithmetic(self):
        div = DividedQAP(3, 5, 3)
        dec = nonintrinsic_aiii(div, 1)
        assert dec.t_dim() == 3**2 + 5**2 - 1
        validate_decomposition(dec)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            nonintrinsic_aiii(DividedQAP(3, 5, 3), 2)
