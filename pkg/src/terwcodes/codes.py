"""Linear codes over F_2, F_3 and F_4 and the invariance of their weight enumerators.

Field elements are small integers.  For q = 2, 3 they are residues; for q = 4
the integer a + 2b stands for a + b*w with w^2 = w + 1, so 2 is w and 3 is
w^2 = 1 + w.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence

from .invariants import BivarPoly, act_on
from .matgroup import builtin_group, mat_text

__all__ = [
    "FiniteFieldElem",
    "LinearCode",
    "CodeTooLarge",
    "CodeInputError",
    "weight_enumerator",
    "dual_code",
    "is_self_dual",
    "classify_type",
    "check_enumerator_invariance",
    "FIXTURES",
    "fixture",
    "parse_code",
    "load_code",
    "TYPE_GROUP",
]

FIELD_ORDERS = (2, 3, 4)
ENUMERATION_GUARD = 24
TYPE_GROUP = {"I": "I", "II": "II", "III": "III", "IV": "IV"}

# F_4 tables on the encoding a + 2b
_LOG4 = {1: 0, 2: 1, 3: 2}
_EXP4 = [1, 2, 3]


def _mul4(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP4[(_LOG4[a] + _LOG4[b]) % 3]


def f_add(q: int, a: int, b: int) -> int:
    return a ^ b if q == 4 else (a + b) % q


def f_neg(q: int, a: int) -> int:
    return a if q == 4 else (-a) % q


def f_mul(q: int, a: int, b: int) -> int:
    return _mul4(a, b) if q == 4 else (a * b) % q


def f_inv(q: int, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    if q == 4:
        return _EXP4[(-_LOG4[a]) % 3]
    return pow(a, -1, q)


def f_conj(q: int, a: int) -> int:
    """Frobenius a -> a^q0 (identity for prime q, squaring for q = 4)."""
    return _mul4(a, a) if q == 4 else a


@total_ordering
@dataclass(frozen=True)
class FiniteFieldElem:
    q: int
    value: int

    def __post_init__(self):
        if self.q not in FIELD_ORDERS:
            raise ValueError(f"field order must be one of {FIELD_ORDERS}")
        if not 0 <= self.value < self.q:
            raise ValueError(f"{self.value} is not an element of F_{self.q}")

    @classmethod
    def from_pair(cls, a: int, b: int) -> "FiniteFieldElem":
        """a + b*w in F_4."""
        if a not in (0, 1) or b not in (0, 1):
            raise ValueError("F_4 pairs must be bits")
        return cls(4, a + 2 * b)

    def pair(self) -> tuple[int, int]:
        return (self.value & 1, self.value >> 1)

    def _check(self, other):
        if not isinstance(other, FiniteFieldElem):
            other = FiniteFieldElem(self.q, other % self.q if self.q != 4 else other)
        if other.q != self.q:
            raise ValueError("mixed field orders")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FiniteFieldElem(self.q, f_add(self.q, self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        return FiniteFieldElem(self.q, f_neg(self.q, self.value))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return FiniteFieldElem(self.q, f_mul(self.q, self.value, other.value))

    __rmul__ = __mul__

    def inverse(self) -> "FiniteFieldElem":
        return FiniteFieldElem(self.q, f_inv(self.q, self.value))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def conjugate(self) -> "FiniteFieldElem":
        return FiniteFieldElem(self.q, f_conj(self.q, self.value))

    def __lt__(self, other):
        return (self.q, self.value) < (other.q, other.value)

    def __str__(self):
        if self.q == 4:
            return ("0", "1", "w", "w^2")[self.value]
        return str(self.value)


class CodeTooLarge(ValueError):
    pass


class CodeInputError(ValueError):
    pass


def _rref(q: int, rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    m = [list(r) for r in rows]
    col = 0
    r = 0
    while r < len(m) and col < n:
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f_inv(q, m[r][col])
        m[r] = [f_mul(q, inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                c = m[i][col]
                m[i] = [f_add(q, a, f_neg(q, f_mul(q, c, b))) for a, b in zip(m[i], m[r])]
        r += 1
        col += 1
    out_rows = [tuple(row) for row in m[:r]]
    return out_rows


@dataclass(frozen=True)
class LinearCode:
    """Row space of a generator matrix over F_q, kept in reduced row echelon form."""

    q: int
    n: int
    generator: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, q: int, rows: Sequence[Sequence[int]], n: int | None = None) -> "LinearCode":
        if q not in FIELD_ORDERS:
            raise CodeInputError(f"field order must be one of {FIELD_ORDERS}, got {q}")
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise CodeInputError("length is required for an empty generator matrix")
            n = len(rows[0])
        for r in rows:
            if len(r) != n:
                raise CodeInputError("generator rows have unequal lengths")
            for v in r:
                if not (isinstance(v, int) and 0 <= v < q):
                    raise CodeInputError(f"entry {v!r} is not an element of F_{q}")
        return cls(q, n, tuple(_rref(q, rows, n)))

    @property
    def k(self) -> int:
        return len(self.generator)

    def size(self) -> int:
        return self.q ** self.k

    def codewords(self):
        if self.k > ENUMERATION_GUARD:
            raise CodeTooLarge(f"k = {self.k} exceeds the enumeration guard {ENUMERATION_GUARD}")
        words = [tuple([0] * self.n)]
        for row in self.generator:
            nxt = []
            for w in words:
                for c in range(self.q):
                    nxt.append(tuple(f_add(self.q, a, f_mul(self.q, c, b)) for a, b in zip(w, row)))
            words = nxt
        return words

    def contains(self, word: Sequence[int]) -> bool:
        return _rref(self.q, list(self.generator) + [list(word)], self.n) == list(self.generator)


def weight_enumerator(c: LinearCode) -> BivarPoly:
    """sum over codewords of x^(n - wt) y^wt."""
    counts: dict[int, int] = {}
    for w in c.codewords():
        wt = sum(1 for v in w if v)
        counts[wt] = counts.get(wt, 0) + 1
    return BivarPoly({(c.n - wt, wt): m for wt, m in counts.items()})


def _form(q: int, u: Sequence[int], v: Sequence[int], hermitian: bool) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = f_add(q, acc, f_mul(q, a, f_conj(q, b) if hermitian else b))
    return acc


def dual_code(c: LinearCode, hermitian: bool = False) -> LinearCode:
    """Orthogonal complement under the dot product (or the Hermitian form over F_4)."""
    q, n = c.q, c.n
    if hermitian and q != 4:
        raise ValueError("the Hermitian form is only defined here for q = 4")
    g = c.generator
    # the Hermitian dual is the Euclidean dual of the conjugate code
    if hermitian:
        g = tuple(tuple(f_conj(q, v) for v in row) for row in g)
    pivots = [next(j for j, v in enumerate(row) if v) for row in g]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for row, p in zip(g, pivots):
            vec[p] = f_neg(q, row[f])
        basis.append(vec)
    d = LinearCode.from_rows(q, basis, n)
    assert all(_form(q, u, v, hermitian) == 0 for u in c.generator for v in d.generator)
    assert d.k == n - c.k
    return d


def is_self_dual(c: LinearCode, hermitian: bool = False) -> bool:
    return 2 * c.k == c.n and all(
        _form(c.q, u, v, hermitian) == 0 for u in c.generator for v in c.generator
    )


def classify_type(c: LinearCode, hermitian: bool = False) -> str:
    """Type I-IV of a self-dual code, or "none".

    Doubly-even binary codes are Type II, not Type I.
    """
    if not is_self_dual(c, hermitian):
        return "none"
    weights = {sum(1 for v in w if v) for w in c.codewords()}
    if c.q == 2:
        if all(w % 4 == 0 for w in weights):
            return "II"
        return "I" if all(w % 2 == 0 for w in weights) else "none"
    if c.q == 3:
        return "III" if all(w % 3 == 0 for w in weights) else "none"
    return "IV" if all(w % 2 == 0 for w in weights) else "none"


def check_enumerator_invariance(c: LinearCode, code_type: str | None = None,
                                hermitian: bool | None = None) -> dict:
    """Apply every element of the matching group to the weight enumerator."""
    if code_type is None:
        if hermitian is None:
            code_type = classify_type(c)
            if code_type == "none" and c.q == 4:
                code_type = classify_type(c, hermitian=True)
        else:
            code_type = classify_type(c, hermitian)
    if code_type not in TYPE_GROUP:
        raise ValueError("the code is not self-dual of Type I-IV")
    g = builtin_group(TYPE_GROUP[code_type])
    w = weight_enumerator(c)
    per = [act_on(w, s) == w for s in g.elements]
    failing = [i for i, ok in enumerate(per) if not ok]
    return {
        "type": code_type,
        "group": TYPE_GROUP[code_type],
        "enumerator": w.to_text(),
        "elementsChecked": len(per),
        "perElement": per,
        "failing": [{"index": i, "matrix": mat_text(g.elements[i])} for i in failing],
        "passed": not failing,
    }


# q = 4 rows written with 2 = w
FIXTURES = {
    "rep2": (2, [[1, 1]]),
    "hamming8": (2, [
        [1, 1, 1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1, 1, 1],
        [1, 0, 1, 0, 1, 0, 1, 0],
    ]),
    "tetracode": (3, [[1, 0, 1, 1], [0, 1, 1, 2]]),
    "hexacode": (4, [
        [1, 0, 0, 1, 2, 2],
        [0, 1, 0, 2, 1, 2],
        [0, 0, 1, 2, 2, 1],
    ]),
    "rep2f4": (4, [[1, 1]]),
}


def fixture(name: str) -> LinearCode:
    try:
        q, rows = FIXTURES[name]
    except KeyError:
        raise CodeInputError(f"unknown fixture {name!r}; expected one of {sorted(FIXTURES)}") from None
    return LinearCode.from_rows(q, rows)


def _entry(q: int, v) -> int:
    if q == 4 and isinstance(v, list):
        if len(v) != 2:
            raise CodeInputError(f"F_4 entries are [a, b] pairs, got {v!r}")
        try:
            return FiniteFieldElem.from_pair(*v).value
        except (TypeError, ValueError) as exc:
            raise CodeInputError(str(exc)) from None
    if isinstance(v, bool) or not isinstance(v, int):
        raise CodeInputError(f"entry {v!r} is not an integer")
    if q == 4:
        if not 0 <= v < 4:
            raise CodeInputError(f"entry {v!r} is not an element of F_4")
        return v
    return v % q


def parse_code(text: str, q: int | None = None) -> LinearCode:
    """JSON input: {"q": 3, "rows": [[...], ...]} or a bare row list with ``q`` given."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeInputError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if isinstance(data, dict):
        q = data.get("q", q)
        rows = data.get("rows")
    else:
        rows = data
    if q is None:
        raise CodeInputError("field order q is required")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise CodeInputError("expected a JSON array of row vectors")
    return LinearCode.from_rows(q, [[_entry(q, v) for v in r] for r in rows])


def load_code(path: str, q: int | None = None) -> LinearCode:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read(), q)
