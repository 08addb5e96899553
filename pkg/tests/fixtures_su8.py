"""Golden su(8) quotient/co-quotient tables, transcribed cell by cell.

Member tokens are written ``zeta|alpha``.  Four printing slips in the source
tables are corrected here (each provable from the surrounding structure):

* canonical rank-one quotient and co-quotient (C4/C5): the hatted cell of
  the 101-family at index 1 is printed as a duplicate of the index-0 cell;
  the corrected members are 001|101, 011|101.
* rank-one table over the second Cartan frame (C7): the last four rows all
  carry the subscript 011; two of them belong to the 111-family, and the
  011-family row at index 1 has its two columns transposed.
* the companion co-quotient (C8): same duplicated subscripts, and the
  transposed 011-row propagates into one transposed pairing.
"""

CARTAN_C0 = (
    "000|000 001|000 010|000 011|000 100|000 101|000 110|000 111|000"
)

# ---------------------------------------------------------------- C1
# intrinsic rank-0 quotient algebra over C_[0]
C1_ROWS = {
    "001": ("000|001 010|001 100|001 110|001", "001|001 011|001 101|001 111|001"),
    "010": ("000|010 001|010 100|010 101|010", "010|010 011|010 110|010 111|010"),
    "011": ("000|011 011|011 100|011 111|011", "001|011 010|011 101|011 110|011"),
    "100": ("000|100 001|100 010|100 011|100", "100|100 101|100 110|100 111|100"),
    "101": ("000|101 010|101 101|101 111|101", "001|101 011|101 100|101 110|101"),
    "110": ("000|110 001|110 110|110 111|110", "010|110 011|110 100|110 101|110"),
    "111": ("000|111 011|111 101|111 110|111", "001|111 010|111 100|111 111|111"),
}
C1_FOOTER = {
    "001": "000|000 010|000 100|000 110|000",
    "010": "000|000 001|000 100|000 101|000",
    "011": "000|000 011|000 100|000 111|000",
    "100": "000|000 001|000 010|000 011|000",
    "101": "000|000 010|000 101|000 111|000",
    "110": "000|000 001|000 110|000 111|000",
    "111": "000|000 011|000 101|000 110|000",
}

# ---------------------------------------------------------------- C2
# intrinsic rank-1 quotient algebra, center B_100
C2_CENTER = "000|000 001|000 010|000 011|000"
C2_CELLS = {
    ("000", 1, 1): "100|000 101|000 110|000 111|000",
    ("000", 0, 0): "",
    ("000", 1, 0): "",
    ("100", 0, 1): "000|100 001|100 010|100 011|100",
    ("100", 0, 0): "",
    ("100", 1, 1): "",
    ("100", 1, 0): "100|100 101|100 110|100 111|100",
    ("001", 0, 1): "000|001 010|001",
    ("001", 0, 0): "001|001 011|001",
    ("001", 1, 1): "100|001 110|001",
    ("001", 1, 0): "101|001 111|001",
    ("101", 0, 1): "000|101 010|101",
    ("101", 0, 0): "001|101 011|101",
    ("101", 1, 1): "101|101 111|101",
    ("101", 1, 0): "100|101 110|101",
    ("010", 0, 1): "000|010 001|010",
    ("010", 0, 0): "010|010 011|010",
    ("010", 1, 1): "100|010 101|010",
    ("010", 1, 0): "110|010 111|010",
    ("110", 0, 1): "000|110 001|110",
    ("110", 0, 0): "010|110 011|110",
    ("110", 1, 1): "110|110 111|110",
    ("110", 1, 0): "100|110 101|110",
    ("011", 0, 1): "000|011 011|011",
    ("011", 0, 0): "001|011 010|011",
    ("011", 1, 1): "100|011 111|011",
    ("011", 1, 0): "101|011 110|011",
    ("111", 0, 1): "000|111 011|111",
    ("111", 0, 0): "001|111 010|111",
    ("111", 1, 1): "101|111 110|111",
    ("111", 1, 0): "100|111 111|111",
}

# ---------------------------------------------------------------- C3
# co-quotient of C2 given by the coset B^{[1,1]}; rows pair (gamma,i,eps)
# with (gamma, i^1, eps^1)
C3_TOP = "100|000 101|000 110|000 111|000"
C3_PAIRS = [
    (("000", 0, 1), ("000", 1, 0)),
    (("100", 0, 1), ("100", 1, 0)),
    (("100", 1, 1), ("100", 0, 0)),
    (("001", 0, 1), ("001", 1, 0)),
    (("001", 1, 1), ("001", 0, 0)),
    (("101", 1, 1), ("101", 0, 0)),
    (("101", 0, 1), ("101", 1, 0)),
    (("010", 0, 1), ("010", 1, 0)),
    (("010", 1, 1), ("010", 0, 0)),
    (("110", 1, 1), ("110", 0, 0)),
    (("110", 0, 1), ("110", 1, 0)),
    (("011", 0, 1), ("011", 1, 0)),
    (("011", 1, 1), ("011", 0, 0)),
    (("111", 1, 1), ("111", 0, 0)),
    (("111", 0, 1), ("111", 1, 0)),
]

# ---------------------------------------------------------------- C4
# canonical rank-1 quotient algebra, center B_001
C4_CENTER = "000|000 010|000 100|000 110|000"
C4_CELLS = {
    ("000", 1, 1): "001|000 011|000 101|000 111|000",
    ("001", 0, 1): "000|001 010|001 100|001 110|001",
    ("001", 0, 0): "",
    ("001", 1, 1): "",
    ("001", 1, 0): "001|001 011|001 101|001 111|001",
    ("010", 0, 1): "000|010 100|010",
    ("010", 0, 0): "010|010 110|010",
    ("010", 1, 1): "001|010 101|010",
    ("010", 1, 0): "011|010 111|010",
    ("011", 0, 1): "000|011 100|011",
    ("011", 0, 0): "010|011 110|011",
    ("011", 1, 1): "011|011 111|011",
    ("011", 1, 0): "001|011 101|011",
    ("100", 0, 1): "000|100 010|100",
    ("100", 0, 0): "100|100 110|100",
    ("100", 1, 1): "001|100 011|100",
    ("100", 1, 0): "101|100 111|100",
    ("101", 0, 1): "000|101 010|101",
    ("101", 0, 0): "100|101 110|101",
    ("101", 1, 1): "101|101 111|101",
    ("101", 1, 0): "001|101 011|101",  # corrected duplicate in the source
    ("110", 0, 1): "000|110 110|110",
    ("110", 0, 0): "010|110 100|110",
    ("110", 1, 1): "001|110 111|110",
    ("110", 1, 0): "011|110 101|110",
    ("111", 0, 1): "000|111 110|111",
    ("111", 0, 0): "010|111 100|111",
    ("111", 1, 1): "011|111 101|111",
    ("111", 1, 0): "001|111 111|111",
}

# ---------------------------------------------------------------- C5
C5_TOP = "001|000 011|000 101|000 111|000"
C5_PAIRS = [
    (("000", 0, 1), ("000", 1, 0)),
    (("001", 0, 1), ("001", 1, 0)),
    (("001", 1, 1), ("001", 0, 0)),
    (("010", 0, 1), ("010", 1, 0)),
    (("010", 1, 1), ("010", 0, 0)),
    (("011", 1, 1), ("011", 0, 0)),
    (("011", 0, 1), ("011", 1, 0)),
    (("100", 0, 1), ("100", 1, 0)),
    (("100", 1, 1), ("100", 0, 0)),
    (("101", 1, 1), ("101", 0, 0)),
    (("101", 0, 1), ("101", 1, 0)),
    (("110", 0, 1), ("110", 1, 0)),
    (("110", 1, 1), ("110", 0, 0)),
    (("111", 1, 1), ("111", 0, 0)),
    (("111", 0, 1), ("111", 1, 0)),
]

# ---------------------------------------------------------------- C6
# rank-0 quotient algebra over the Cartan frame C_III
CARTAN_CIII = (
    "000|000 001|000 010|000 011|000 100|100 101|100 110|100 111|100"
)
C6_ROWS = {
    "100": ("000|100 001|100 010|100 011|100", "100|000 101|000 110|000 111|000"),
    "001": ("000|001 010|001 100|101 110|101", "001|001 011|001 101|101 111|101"),
    "101": ("101|001 111|001 000|101 010|101", "100|001 110|001 001|101 011|101"),
    "010": ("000|010 001|010 100|110 101|110", "010|010 011|010 110|110 111|110"),
    "110": ("110|010 111|010 000|110 001|110", "100|010 101|010 010|110 011|110"),
    "011": ("000|011 011|011 100|111 111|111", "001|011 010|011 101|111 110|111"),
    "111": ("101|011 110|011 000|111 011|111", "100|011 111|011 001|111 010|111"),
}
C6_FOOTER = {
    "001": "000|000 010|000 100|100 110|100",
    "010": "000|000 001|000 100|100 101|100",
    "011": "000|000 011|000 100|100 111|100",
    "100": "000|000 001|000 010|000 011|000",
    "101": "000|000 010|000 101|100 111|100",
    "110": "000|000 001|000 110|100 111|100",
    "111": "000|000 011|000 101|100 110|100",
}

# ---------------------------------------------------------------- C7
# rank-1 quotient algebra over C_III, center B-hat_100
C7_CENTER = "000|000 001|000 010|000 011|000"
C7_CELLS = {
    ("000", 1, 1): "100|100 101|100 110|100 111|100",
    ("100", 0, 1): "000|100 001|100 010|100 011|100",
    ("100", 0, 0): "",
    ("100", 1, 1): "",
    ("100", 1, 0): "100|000 101|000 110|000 111|000",
    ("001", 0, 1): "000|001 010|001",
    ("001", 0, 0): "001|001 011|001",
    ("001", 1, 1): "100|101 110|101",
    ("001", 1, 0): "101|101 111|101",
    ("101", 0, 1): "000|101 010|101",
    ("101", 0, 0): "001|101 011|101",
    ("101", 1, 1): "101|001 111|001",
    ("101", 1, 0): "100|001 110|001",
    ("010", 0, 1): "000|010 001|010",
    ("010", 0, 0): "010|010 011|010",
    ("010", 1, 1): "100|110 101|110",
    ("010", 1, 0): "110|110 111|110",
    ("110", 0, 1): "000|110 001|110",
    ("110", 0, 0): "010|110 011|110",
    ("110", 1, 1): "110|010 111|010",
    ("110", 1, 0): "100|010 101|010",
    ("011", 0, 1): "000|011 011|011",
    ("011", 0, 0): "001|011 010|011",
    # columns transposed in the source; unhatted members have parity 1
    ("011", 1, 1): "100|111 111|111",
    ("011", 1, 0): "101|111 110|111",
    # subscripts printed as 011 in the source
    ("111", 0, 1): "000|111 011|111",
    ("111", 0, 0): "001|111 010|111",
    ("111", 1, 1): "101|011 110|011",
    ("111", 1, 0): "100|011 111|011",
}

# ---------------------------------------------------------------- C8
C8_TOP = "100|100 101|100 110|100 111|100"
C8_PAIRS = [
    (("000", 0, 1), ("000", 1, 0)),
    (("100", 0, 1), ("100", 1, 0)),
    (("100", 1, 1), ("100", 0, 0)),
    (("001", 0, 1), ("001", 1, 0)),
    (("001", 1, 1), ("001", 0, 0)),
    (("101", 1, 1), ("101", 0, 0)),
    (("101", 0, 1), ("101", 1, 0)),
    (("010", 0, 1), ("010", 1, 0)),
    (("010", 1, 1), ("010", 0, 0)),
    (("110", 1, 1), ("110", 0, 0)),
    (("110", 0, 1), ("110", 1, 0)),
    (("011", 0, 1), ("011", 1, 0)),
    (("011", 1, 1), ("011", 0, 0)),
    (("111", 1, 1), ("111", 0, 0)),
    (("111", 0, 1), ("111", 1, 0)),
]

# ------------------------------------------------------- Appendix D, merged
# co-quotient of the intrinsic rank-0 table given by the hatted 100-cell,
# in lambda rendering: (k, l) index pairs, hat flag per cell
D1_TOP = ("100", 0)  # gamma, eps of the center cell
D1_LAMBDA = {
    ("100", 0): "15h 26h 37h 48h",
    ("100", 1): "15 26 37 48",
    ("001", 0): "12h 34h 56h 78h",
    ("001", 1): "12 34 56 78",
    ("101", 0): "16h 25h 38h 47h",
    ("101", 1): "16 25 38 47",
    ("010", 0): "13h 24h 57h 68h",
    ("010", 1): "13 24 57 68",
    ("110", 0): "17h 28h 35h 46h",
    ("110", 1): "17 28 35 46",
    ("011", 0): "14h 23h 58h 67h",
    ("011", 1): "14 23 58 67",
    ("111", 0): "18h 27h 36h 45h",
    ("111", 1): "18 27 36 45",
}
D1_ROW_PAIRS = [
    (("000", 1), ("100", 1)),
    (("101", 0), ("001", 0)),
    (("001", 1), ("101", 1)),
    (("110", 0), ("010", 0)),
    (("010", 1), ("110", 1)),
    (("111", 0), ("011", 0)),
    (("011", 1), ("111", 1)),
]

# ----------------------------------------------- Appendix E, decompositions
# over the intrinsic rank-1 partition (C2); keys are (gamma, i, eps)
E_T2_HAT = [  # intrinsic type-AII subalgebra, sp(4), 36 generators
    ("000", 1, 1),
    ("001", 0, 0), ("001", 1, 1),
    ("010", 0, 0), ("010", 1, 1),
    ("011", 0, 0), ("011", 1, 1),
    ("100", 0, 1), ("100", 1, 0),
    ("101", 0, 1), ("101", 1, 0),
    ("110", 0, 1), ("110", 1, 0),
    ("111", 0, 1), ("111", 1, 0),
]
E_T1 = [  # type-AI subalgebra, so(8), 28 generators
    ("001", 0, 0), ("001", 1, 0),
    ("010", 0, 1), ("010", 1, 1),
    ("011", 0, 1), ("011", 1, 1),
    ("100", 0, 0), ("100", 1, 0),
    ("101", 0, 0), ("101", 1, 0),
    ("110", 0, 1), ("110", 1, 1),
    ("111", 0, 1), ("111", 1, 1),
]
# over the rank-1 partition of the C_III frame (C7)
E_T3_HAT = [  # intrinsic type-AIII subalgebra, c + su(4) + su(4)
    ("000", 0, 1),
    ("001", 0, 1), ("001", 0, 0),
    ("010", 0, 1), ("010", 0, 0),
    ("011", 0, 1), ("011", 0, 0),
    ("100", 1, 1), ("100", 1, 0),
    ("101", 1, 1), ("101", 1, 0),
    ("110", 1, 1), ("110", 1, 0),
    ("111", 1, 1), ("111", 1, 0),
]


def tokens(text):
    return frozenset(text.split()) if text else frozenset()
