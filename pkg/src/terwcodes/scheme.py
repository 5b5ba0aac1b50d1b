"""Group association schemes X(G): relations (x, y) in R_i iff y x^-1 in C_i."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .linalg import FieldMatrix
from .matgroup import ConjugacyData, FiniteMatrixGroup

__all__ = [
    "AssociationScheme",
    "IntersectionNumberMismatch",
    "build_scheme",
    "intersection_numbers",
    "dimension_upper_bound",
    "dimension_lower_bound",
    "verify_bose_mesner",
]

log = logging.getLogger(__name__)


class IntersectionNumberMismatch(AssertionError):
    def __init__(self, i: int, j: int, k: int, by_matrix: int, by_count: int):
        self.triple = (i, j, k)
        super().__init__(
            f"p[{i}][{j}][{k}]: matrix expansion gives {by_matrix}, pair count gives {by_count}"
        )


@dataclass
class AssociationScheme:
    group: FiniteMatrixGroup
    class_data: ConjugacyData
    relation: np.ndarray  # relation[x, y] = i  iff  (x, y) in R_i
    p: np.ndarray  # p[i, j, k]

    @property
    def d(self) -> int:
        """Number of non-identity relations (the scheme's class)."""
        return len(self.class_data) - 1

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def class_sizes(self) -> list[int]:
        return self.class_data.sizes

    def adjacency_array(self, i: int) -> np.ndarray:
        return (self.relation == i).astype(np.int64)

    def adjacency(self, i: int) -> FieldMatrix:
        rows, cols = np.nonzero(self.relation == i)
        return FieldMatrix(self.n, self.n, {(int(r), int(c)): 1 for r, c in zip(rows, cols)})

    def adjacency_matrices(self) -> list[FieldMatrix]:
        return [self.adjacency(i) for i in range(self.d + 1)]

    def nonzero_triples(self) -> int:
        return int(np.count_nonzero(self.p))

    def p_nested(self) -> list:
        return self.p.tolist()


def _relation_matrix(g: FiniteMatrixGroup, cd: ConjugacyData) -> np.ndarray:
    n = g.order
    class_of = np.asarray(cd.class_of, dtype=np.int64)
    inv = g.inverse_index()
    if g.mult_table is not None:
        # relation[x, y] = class of y * x^-1
        prod = g.mult_table[:, inv]  # prod[y, x] = y * x^-1
        return class_of[prod.T]
    rel = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        xi = int(inv[x])
        for y in range(n):
            rel[x, y] = class_of[g.mul(y, xi)]
    return rel


def build_scheme(g: FiniteMatrixGroup) -> AssociationScheme:
    """Build X(G) and verify its defining identities exactly."""
    cd = g.classes()
    rel = _relation_matrix(g, cd)
    size = len(cd)
    n = g.order
    assert np.array_equal(rel == 0, np.eye(n, dtype=bool)), "A_0 must be the identity"
    counts = np.stack([(rel == i).sum(axis=1) for i in range(size)])
    assert all((counts[i] == len(cd.classes[i])).all() for i in range(size)), "row sums must equal class sizes"
    s = AssociationScheme(g, cd, rel, np.zeros((size, size, size), dtype=np.int64))
    s.p = intersection_numbers(s)
    if not verify_bose_mesner(s):
        raise AssertionError("Bose-Mesner closure or commutativity fails")
    return s


def intersection_numbers(s: AssociationScheme) -> np.ndarray:
    """p_ij^k from the expansion A_i A_j = sum_k p_ij^k A_k, cross-checked by counting.

    The counting side is |{(x, y) in C_i x C_j : x y = z}| for a fixed z in
    C_k, evaluated at up to two choices of z to confirm independence from z.
    """
    g, cd, rel = s.group, s.class_data, s.relation
    size = len(cd)
    mats = np.stack([(rel == i).astype(np.float64) for i in range(size)])
    p = np.zeros((size, size, size), dtype=np.int64)
    for i in range(size):
        # row 0 of A_i A_j for every j at once
        rows = np.rint(np.einsum("z,jzy->jy", mats[i, 0], mats)).astype(np.int64)
        for j in range(size):
            row = rows[j]
            for k in range(size):
                vals = row[list(cd.classes[k])]
                assert (vals == vals[0]).all(), f"A_{i}A_{j} not constant on class {k}"
                p[i, j, k] = vals[0]
    # independent pair count
    class_of = np.asarray(cd.class_of)
    members = [np.asarray(c) for c in cd.classes]
    for k in range(size):
        zs = list(cd.classes[k][:2])
        for z in zs:
            for i in range(size):
                xs = members[i]
                inv = g.inverse_index()
                # y = x^-1 z must lie in C_j
                ys = np.array([g.mul(int(inv[x]), z) for x in xs], dtype=np.int64)
                tally = np.bincount(class_of[ys], minlength=size)
                for j in range(size):
                    if tally[j] != p[i, j, k]:
                        err = IntersectionNumberMismatch(i, j, k, int(p[i, j, k]), int(tally[j]))
                        log.error("%s", err)
                        raise err
    assert np.array_equal(p, p.transpose(1, 0, 2)), "p_ij^k must be symmetric in i, j"
    return p


def dimension_upper_bound(s: AssociationScheme) -> int:
    n = s.n
    total = 0
    for size in s.class_sizes:
        assert n % size == 0
        total += n // size
    return total


def dimension_lower_bound(s: AssociationScheme) -> int:
    return s.nonzero_triples()


def verify_bose_mesner(s: AssociationScheme) -> bool:
    """Check A_i A_j = sum_k p_ij^k A_k and A_i A_j = A_j A_i for every pair."""
    size = len(s.class_data)
    mats = [s.adjacency_array(i).astype(np.float64) for i in range(size)]
    for i in range(size):
        for j in range(size):
            prod = np.rint(mats[i] @ mats[j]).astype(np.int64)
            other = np.rint(mats[j] @ mats[i]).astype(np.int64)
            expansion = sum(int(s.p[i, j, k]) * (s.relation == k) for k in range(size))
            if not (np.array_equal(prod, expansion) and np.array_equal(prod, other)):
                return False
    return True
