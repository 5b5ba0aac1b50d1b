"""Values as published for G_I..G_IV, used only for comparison in reports.

Each entry is a claim to be checked against computation, never an input to
it.  Known internal inconsistencies are kept verbatim.
"""
from __future__ import annotations

from fractions import Fraction

__all__ = [
    "ORDERS_AND_CLASSES",
    "CLASS_SIZES",
    "DIM_T",
    "CENTER_DIM",
    "DEGREES",
    "BLOCK_COUNTS",
    "block_count_matrix",
    "DIMENSION_SERIES",
    "RING_GENERATORS",
    "E_POLY_DEGREES",
    "PRINTED_PHI",
    "PRINTED_PHI_LABELS",
    "G3_IDENTITIES",
]

# order, number of conjugacy classes
ORDERS_AND_CLASSES = {"I": (16, 7), "II": (192, 32), "III": (48, 14), "IV": (12, 6)}

CLASS_SIZES = {
    "I": [1, 4, 2, 1, 4, 2, 2],
    "II": [1, 6, 6, 6, 6, 12, 12, 6, 12, 12, 6, 1, 6, 6, 8, 8, 8, 1,
           1, 8, 1, 6, 6, 8, 8, 8, 1, 6, 1, 6, 8, 1],
    "III": [1, 4, 4, 1, 4, 4, 6, 1, 4, 4, 1, 4, 4, 6],
    "IV": [1, 3, 3, 2, 2, 1],
}


DIM_T = {"I": 64, "II": 2808, "III": 300, "IV": 44}

# the fourth center item is printed as G_III again; read as G_IV
CENTER_DIM = {"I": 5, "II": 6, "III": 3, "IV": 3}

# the fourth degree row is printed as T(G_III) again; read as G_IV
DEGREES = {
    "I": [1, 1, 2, 3, 7],
    "II": [4, 8, 12, 16, 24, 32],
    "III": [2, 10, 16],
    "IV": [2, 2, 6],
}

# rows of the basis-distribution matrices, one digit per entry
BLOCK_COUNTS = {
    "I": [
        "1111111",
        "1311211",
        "1121122",
        "1111111",
        "1211311",
        "1121122",
        "1121122",
    ],
    "II": [
        "11111111111111111111111111111111",
        "13333333333133222112133222131321",
        "13333333333133222112133222131321",
        "13333333333133222112133222131321",
        "13333333333133222112133222131321",
        "13333553553133333113133333131331",
        "13333553553133333113133333131331",
        "13333333333133222112133222131321",
        "13333553553133333113133333131331",
        "13333553553133333113133333131331",
        "13333333333133222112133222131321",
        "11111111111111111111111111111111",
        "13333333333133222112133222131321",
        "13333333333133222112133222131321",
        "12222332332122444114122444121241",
        "12222332332122444114122444121241",
        "12222332332122444114122444121241",
        "11111111111111111111111111111111",
        "11111111111111111111111111111111",
        "12222332332122444114122444121241",
        "11111111111111111111111111111111",
        "13333333333133222112133222131321",
        "13333333333133222112133222131321",
        "12222332332122444114122444121241",
        "12222332332122444114122444121241",
        "12222332332122444114122444121241",
        "11111111111111111111111111111111",
        "13333333333133222112133222131321",
        "11111111111111111111111111111111",
        "13333333333133222112133222131321",
        "12222332332122444114122444121241",
        "11111111111111111111111111111111",
    ],
    "III": [
        "11111111111111",
        "12212221221222",
        "12212221221222",
        "11111111111111",
        "12212221221222",
        "12212221221222",
        "12212231221223",
        "11111111111111",
        "12212221221222",
        "12212221221222",
        "11111111111111",
        "12212221221222",
        "12212221221222",
        "12212231221223",
    ],
    "IV": [
        "111111",
        "122111",
        "122111",
        "111221",
        "111221",
        "111111",
    ],
}


def block_count_matrix(name: str) -> list[list[int]]:
    return [[int(ch) for ch in row] for row in BLOCK_COUNTS[name]]


# 1 / ((1 - t^a)(1 - t^b))
DIMENSION_SERIES = {"I": (2, 8), "II": (8, 24), "III": (4, 12), "IV": (2, 6)}

# generators f, g of the invariant rings, as {(deg_x, deg_y): coefficient}
RING_GENERATORS = {
    "I": {
        "f": "x^2 + y^2",
        "g": "x^2*y^2*(x^2 - y^2)^2",
    },
    "II": {
        "f": "x^8 + 14*x^4*y^4 + y^8",
        "g": "x^4*y^4*(x^4 - y^4)^4",
    },
    "III": {
        "f": "x^4 + 8*x*y^3",
        "g": "y^3*(x^3 - y^3)^3",
    },
    "IV": {
        "f": "x^2 + 3*y^2",
        "g": "y^2*(x^2 - y^2)^2",
    },
}

# degrees of the E-polynomial generators of each invariant ring
E_POLY_DEGREES = {"I": (2, 8), "II": (8, 24), "III": (4, 12), "IV": (2, 6)}


def _poly(scale, coeffs: dict[tuple[int, int], int]) -> dict[tuple[int, int], Fraction]:
    return {k: Fraction(scale) * v for k, v in coeffs.items()}


# printed explicit forms; keys (group, degree as computed)
PRINTED_PHI = {
    ("I", 2): _poly(Fraction(1, 2), {(2, 0): 1, (0, 2): 1}),
    ("I", 8): _poly(Fraction(1, 32), {(8, 0): 9, (6, 2): 28, (4, 4): 70, (2, 6): 28, (0, 8): 9}),
    ("II", 8): _poly(Fraction(1, 24), {(8, 0): 5, (4, 4): 70, (0, 8): 5}),
    ("II", 24): _poly(Fraction(1, 6144), {
        (24, 0): 1, (20, 4): 10626, (16, 8): 735471, (12, 12): 2704156,
        (8, 16): 735471, (4, 20): 10626, (0, 24): 1025,
    }),
    ("III", 4): _poly(Fraction(1, 3), {(4, 0): 1, (1, 3): 8}),
    ("III", 12): _poly(243, {(12, 0): 61, (9, 3): 440, (6, 6): 14784, (3, 9): 28160, (0, 12): 1024}),
    ("IV", 2): _poly(Fraction(1, 2), {(2, 0): 1, (0, 2): 3}),
    ("IV", 6): _poly(Fraction(1, 32), {(6, 0): 11, (4, 2): 45, (2, 4): 405, (0, 6): 243}),
}

# label under which each form is printed, where it differs from its degree
PRINTED_PHI_LABELS = {("IV", 2): "phi_8", ("IV", 6): "phi_24"}

# f = 3 phi_4 and g = (1647 phi_4^3 - 243 phi_12) / 1024 for G_III
G3_IDENTITIES = {
    "f": {(1, 0): Fraction(3)},
    "g": {(3, 0): Fraction(1647, 1024), (0, 1): Fraction(-243, 1024)},
}
