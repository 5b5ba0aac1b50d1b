"""Exact linear algebra over Q and Q(zeta_24).

Two engines live here:

* a generic Gauss-Jordan over any exact field scalar (``Fraction`` or
  ``CycNum``), used for small systems;
* a vectorised fraction-free integer engine (numpy ``int64`` with automatic
  promotion to Python ints on overflow risk) for rational data, used for the
  large, sparse 0/1-ish systems of the Terwilliger computations.

Rational inputs are scaled row by row to primitive integer vectors, so the
integer engine is exact for all of Q.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .exactnum import CycNum

__all__ = [
    "FieldMatrix",
    "SpanTracker",
    "DimensionMismatch",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "int_row_basis",
]

_SAFE = 1 << 30


class DimensionMismatch(ValueError):
    pass


def _is_zero(x) -> bool:
    return x == 0 if not isinstance(x, CycNum) else x.is_zero()


def _inverse(x):
    return x.inverse() if isinstance(x, CycNum) else 1 / Fraction(x)


def _size(x) -> int:
    if isinstance(x, CycNum):
        return x.size()
    x = Fraction(x)
    return x.numerator.bit_length() + x.denominator.bit_length()


def _all_rational(values: Iterable) -> bool:
    for v in values:
        if isinstance(v, CycNum):
            if not v.is_rational():
                return False
        elif not isinstance(v, (int, Fraction, np.integer)):
            return False
    return True


class FieldMatrix:
    """Immutable matrix with sparse storage ``{(row, col): value}``."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        self.rows = rows
        self.cols = cols
        ent = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if not _is_zero(v):
                ent[(r, c)] = v
        self._entries = ent

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "FieldMatrix":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(rows, cols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, n: int) -> "FieldMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "FieldMatrix":
        return cls(rows, cols)

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def __getitem__(self, rc):
        return self._entries.get(rc, 0)

    def nnz(self) -> int:
        return len(self._entries)

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def row(self, r: int) -> list:
        return [self._entries.get((r, c), 0) for c in range(self.cols)]

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        ent = dict(self._entries)
        for k, v in other._entries.items():
            ent[k] = ent.get(k, 0) + v
        return FieldMatrix(self.rows, self.cols, ent)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        return self + other.scale(-1)

    def scale(self, s) -> "FieldMatrix":
        return FieldMatrix(self.rows, self.cols, {k: v * s for k, v in self._entries.items()})

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row: dict[int, list] = {}
        for (r, c), v in other._entries.items():
            by_row.setdefault(r, []).append((c, v))
        ent: dict = {}
        for (r, k), v in self._entries.items():
            for c, w in by_row.get(k, ()):
                ent[(r, c)] = ent.get((r, c), 0) + v * w
        return FieldMatrix(self.rows, other.cols, ent)

    def __repr__(self):
        return f"FieldMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# integer engine

def _as_int_rows(rows: Sequence[Sequence]) -> np.ndarray:
    """Scale every rational row to a primitive integer row."""
    out = []
    big = False
    for r in rows:
        fr = [Fraction(v.to_rational() if isinstance(v, CycNum) else v) for v in r]
        d = 1
        for f in fr:
            d = lcm(d, f.denominator)
        ints = [int(f * d) for f in fr]
        if any(abs(v) >= _SAFE for v in ints):
            big = True
        out.append(ints)
    if not out:
        return np.zeros((0, 0), dtype=np.int64)
    arr = np.array(out, dtype=object if big else np.int64)
    return _primitive(arr)


def _primitive(arr: np.ndarray) -> np.ndarray:
    if arr.size == 0:
        return arr
    if arr.dtype == object:
        for i in range(arr.shape[0]):
            g = 0
            for v in arr[i]:
                g = gcd(g, int(v))
            if g > 1:
                arr[i] = arr[i] // g
        return arr
    g = np.gcd.reduce(arr, axis=1)
    g[g == 0] = 1
    return arr // g[:, None]


def _widen_if_needed(*arrays: np.ndarray) -> list[np.ndarray]:
    risky = any(a.dtype != object and a.size and int(np.abs(a).max()) >= _SAFE for a in arrays)
    if risky:
        return [a.astype(object) for a in arrays]
    if any(a.dtype == object for a in arrays):
        return [a.astype(object) for a in arrays]
    return list(arrays)


def _eliminate(target: np.ndarray, prow: np.ndarray, pcol: int) -> np.ndarray:
    """Clear column ``pcol`` of ``target`` rows using pivot row ``prow`` (fraction free)."""
    if target.shape[0] == 0:
        return target
    coef = target[:, pcol]
    mask = coef != 0
    if not mask.any():
        return target
    target, prow = _widen_if_needed(target, prow)
    sub = target[mask]
    p = prow[pcol]
    c = sub[:, pcol]
    sub = sub * p - c[:, None] * prow[None, :]
    target = target.copy()
    target[mask] = _primitive(sub)
    return target


def int_row_basis(arr: np.ndarray) -> tuple[np.ndarray, list[int], list[int]]:
    """Fraction-free echelon basis of the row space of an integer matrix.

    Returns ``(R, pivots, selected)``: ``R`` holds primitive reduced rows
    (every pivot column zero in all other rows), ``pivots`` their pivot
    columns, ``selected`` the indices of the input rows that were independent
    of all earlier rows (row rank profile).
    """
    tracker = SpanTracker(arr.shape[1] if arr.ndim == 2 else 0)
    selected = tracker.add_many_int(arr)
    return tracker.int_rows(), list(tracker.pivots), selected


class SpanTracker:
    """Incremental span of vectors in a fixed ambient dimension.

    Stored rows are kept in reduced echelon form.  Rational vectors go to the
    integer engine; vectors with genuinely cyclotomic entries switch the
    tracker into the generic engine (rows as sparse dicts of CycNum).
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.pivots: list[int] = []
        self._int_rows = np.zeros((0, ambient_dim), dtype=np.int64)
        self._generic: list[dict] | None = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.rank

    def int_rows(self) -> np.ndarray:
        if self._generic is not None:
            raise TypeError("tracker holds cyclotomic rows")
        return self._int_rows

    def rows(self) -> list[list]:
        """Stored rows as dense lists (pivot entries normalised to 1)."""
        if self._generic is not None:
            return [[r.get(c, 0) for c in range(self.ambient_dim)] for r in self._generic]
        out = []
        for row, p in zip(self._int_rows, self.pivots):
            piv = int(row[p])
            out.append([Fraction(int(v), piv) for v in row])
        return out

    # -- adding -------------------------------------------------------
    def _check(self, v) -> None:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")

    def add(self, v) -> bool:
        """Add one vector; True iff it enlarged the span."""
        if isinstance(v, dict):
            dense = [0] * self.ambient_dim
            for k, x in v.items():
                if not 0 <= k < self.ambient_dim:
                    raise DimensionMismatch(f"index {k} outside ambient dimension {self.ambient_dim}")
                dense[k] = x
            v = dense
        self._check(v)
        if self._generic is None and _all_rational(v):
            return bool(self.add_many_int(_as_int_rows([v])))
        return self._add_generic(v)

    def add_many(self, vectors: Iterable) -> list[int]:
        vectors = list(vectors)
        if self._generic is None and all(_all_rational(v) for v in vectors):
            for v in vectors:
                self._check(v)
            return self.add_many_int(_as_int_rows(vectors) if vectors else np.zeros((0, self.ambient_dim), np.int64))
        return [t for t, v in enumerate(vectors) if self.add(v)]

    def add_many_int(self, arr: np.ndarray) -> list[int]:
        """Batch insertion of integer rows; returns indices that enlarged the span."""
        if self._generic is not None:
            return [t for t, v in enumerate(arr.tolist()) if self._add_generic(v)]
        arr = np.asarray(arr)
        if arr.ndim != 2 or (arr.shape[0] and arr.shape[1] != self.ambient_dim):
            raise DimensionMismatch("batch has wrong width")
        if arr.shape[0] == 0:
            return []
        if arr.dtype != object:
            arr = arr.astype(np.int64)
        cand = _primitive(arr.copy())
        for row, p in zip(self._int_rows, self.pivots):
            cand = _eliminate(cand, row, p)
        alive = np.flatnonzero((cand != 0).any(axis=1))
        selected = []
        rows = self._int_rows
        while alive.size:
            t = int(alive[0])
            new = cand[t]
            p = int(np.flatnonzero(new != 0)[0])
            if new[p] < 0:
                new = -new
            rest = alive[1:]
            sub = _eliminate(cand[rest], new, p)
            if sub.dtype == object and cand.dtype != object:
                cand = cand.astype(object)
            cand[rest] = sub
            rows = _eliminate(rows, new, p)
            rows, new2 = _widen_if_needed(rows, new[None, :])
            rows = np.vstack([rows, new2])
            self.pivots.append(p)
            selected.append(t)
            alive = rest[(cand[rest] != 0).any(axis=1)] if rest.size else rest
        self._int_rows = rows
        return selected

    def _to_generic(self) -> None:
        if self._generic is not None:
            return
        self._generic = []
        for row, p in zip(self._int_rows, self.pivots):
            piv = int(row[p])
            self._generic.append({c: Fraction(int(v), piv) for c, v in enumerate(row) if v})

    def _add_generic(self, v) -> bool:
        self._to_generic()
        vec = {c: x for c, x in enumerate(v) if not _is_zero(x)}
        for row, p in zip(self._generic, self.pivots):
            f = vec.get(p)
            if f is None:
                continue
            for c, x in row.items():
                nv = vec.get(c, 0) - f * x
                if _is_zero(nv):
                    vec.pop(c, None)
                else:
                    vec[c] = nv
        if not vec:
            return False
        p = min(vec)
        inv = _inverse(vec[p])
        vec = {c: x * inv for c, x in vec.items()}
        for idx, row in enumerate(self._generic):
            f = row.get(p)
            if f is None:
                continue
            for c, x in vec.items():
                nv = row.get(c, 0) - f * x
                if _is_zero(nv):
                    row.pop(c, None)
                else:
                    row[c] = nv
        self._generic.append(vec)
        self.pivots.append(p)
        return True

    def contains(self, v) -> bool:
        """Membership test without modifying the tracker."""
        probe = SpanTracker(self.ambient_dim)
        probe.pivots = list(self.pivots)
        if self._generic is not None:
            probe._generic = [dict(r) for r in self._generic]
        else:
            probe._int_rows = self._int_rows.copy()
        return not probe.add(v)


# ---------------------------------------------------------------------------
# dense generic routines

def _dense(m) -> tuple[list[list], int, int]:
    if isinstance(m, FieldMatrix):
        return m.to_dense(), m.rows, m.cols
    rows = [list(r) for r in m]
    return rows, len(rows), (len(rows[0]) if rows else 0)


def _rref_generic(a: list[list], cols: int) -> tuple[list[list], list[int]]:
    a = [list(r) for r in a]
    pivots = []
    r = 0
    for c in range(cols):
        if r >= len(a):
            break
        cands = [i for i in range(r, len(a)) if not _is_zero(a[i][c])]
        if not cands:
            continue
        best = min(cands, key=lambda i: (_size(a[i][c]), i))
        a[r], a[best] = a[best], a[r]
        p = a[r][c]
        inv = _inverse(p)
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and not _is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_rational(a: list[list], cols: int) -> tuple[list[list], list[int]]:
    rows_int = _as_int_rows(a) if a else np.zeros((0, cols), np.int64)
    t = SpanTracker(cols)
    t.add_many_int(rows_int)
    order = sorted(range(t.rank), key=lambda k: t.pivots[k])
    stored = t.rows()
    reduced = [stored[k] for k in order]
    pivots = [t.pivots[k] for k in order]
    zero = [Fraction(0)] * cols
    reduced += [list(zero) for _ in range(len(a) - len(reduced))]
    return reduced, pivots


def rref(m) -> tuple[FieldMatrix, int]:
    """Reduced row echelon form and rank."""
    a, rows, cols = _dense(m)
    flat = [x for r in a for x in r]
    if _all_rational(flat):
        red, piv = _rref_rational(a, cols)
    else:
        red, piv = _rref_generic(a, cols)
    return FieldMatrix(rows, cols, {(i, j): v for i, r in enumerate(red) for j, v in enumerate(r)}), len(piv)


def rank(m) -> int:
    return rref(m)[1]


def kernel_basis(m) -> list[list]:
    """Basis of {v : m v = 0}, one vector per free column."""
    a, rows, cols = _dense(m)
    red, _ = rref(FieldMatrix.from_dense(a) if rows else FieldMatrix(0, cols))
    dense = red.to_dense()
    pivots = []
    for r in dense:
        nz = [c for c, x in enumerate(r) if not _is_zero(x)]
        if nz:
            pivots.append(nz[0])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in zip(dense, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


def solve(m, b: Sequence):
    """Exact solution of m x = b, or None when the system is inconsistent."""
    a, rows, cols = _dense(m)
    if len(b) != rows:
        raise DimensionMismatch("right-hand side length differs from row count")
    aug = [list(r) + [b[i]] for i, r in enumerate(a)]
    flat = [x for r in aug for x in r]
    red, piv = (_rref_rational if _all_rational(flat) else _rref_generic)(aug, cols + 1)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for r, p in zip(red, piv):
        x[p] = r[cols]
    return x
