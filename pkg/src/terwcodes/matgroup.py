"""Finite groups of 2x2 matrices over Q(zeta_24).

Groups are closed breadth first from their generators.  Elements are indexed
(identity first) and, for groups of order <= 256, the full multiplication
table is kept as an integer array built from the left-multiplication
permutations recorded during closure.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .exactnum import CycNum, as_cyc, named_constants

__all__ = [
    "Mat2",
    "FiniteMatrixGroup",
    "ConjugacyData",
    "GroupCapExceeded",
    "SingularGenerator",
    "GeneratorFileError",
    "mat",
    "mat_mul",
    "mat_det",
    "mat_text",
    "generate_group",
    "conjugacy_classes",
    "builtin_group",
    "builtin_generators",
    "parse_generators",
    "load_generators",
    "BUILTIN_NAMES",
]

Mat2 = tuple  # (a, b, c, d) for [[a, b], [c, d]], entries CycNum

TABLE_CAP = 256

BUILTIN_NAMES = ("I", "II", "III", "IV")

class GroupCapExceeded(RuntimeError):
    pass


class SingularGenerator(ValueError):
    pass


class GeneratorFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def mat(a, b, c, d) -> Mat2:
    return (as_cyc(a), as_cyc(b), as_cyc(c), as_cyc(d))


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_det(x: Mat2) -> CycNum:
    return x[0] * x[3] - x[1] * x[2]


def mat_key(x: Mat2) -> tuple:
    return tuple(e.key() for e in x)


def mat_text(x: Mat2) -> list[list[str]]:
    return [[x[0].to_text(), x[1].to_text()], [x[2].to_text(), x[3].to_text()]]


def _mat_sort_text(x: Mat2) -> str:
    return " | ".join(e.to_text() for e in x)


IDENTITY = mat(1, 0, 0, 1)


class FiniteMatrixGroup:
    """Closed, indexed list of 2x2 matrices with identity at index 0."""

    def __init__(self, elements: list[Mat2], generators: list[Mat2],
                 table: np.ndarray | None = None, name: str | None = None):
        self.elements = elements
        self.generators = generators
        self.name = name
        self.index = {mat_key(x): i for i, x in enumerate(elements)}
        if len(self.index) != len(elements):
            raise ValueError("duplicate elements")
        self._table = table
        self._inv: np.ndarray | None = None
        self._classes: ConjugacyData | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def mult_table(self) -> np.ndarray | None:
        return self._table

    def lookup(self, x: Mat2) -> int:
        return self.index[mat_key(x)]

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        return self.lookup(mat_mul(self.elements[i], self.elements[j]))

    def inverse_index(self) -> np.ndarray:
        if self._inv is None:
            n = self.order
            inv = np.empty(n, dtype=np.int64)
            if self._table is not None:
                rows, cols = np.nonzero(self._table == 0)
                inv[rows] = cols
            else:
                for i, x in enumerate(self.elements):
                    a, b, c, d = x
                    det_inv = 1 / mat_det(x)
                    inv[i] = self.lookup((d * det_inv, -b * det_inv, -c * det_inv, a * det_inv))
            self._inv = inv
        return self._inv

    def inv(self, i: int) -> int:
        return int(self.inverse_index()[i])

    def classes(self) -> "ConjugacyData":
        if self._classes is None:
            self._classes = conjugacy_classes(self)
        return self._classes

    def describe(self) -> dict:
        cd = self.classes()
        return {
            "order": self.order,
            "classCount": len(cd.classes),
            "classSizes": cd.sizes,
            "representatives": [mat_text(self.elements[r]) for r in cd.representatives],
        }


@dataclass(frozen=True)
class ConjugacyData:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


def generate_group(generators: Sequence[Mat2], cap: int = 100000, name: str | None = None) -> FiniteMatrixGroup:
    """Breadth-first closure of ``generators`` under left multiplication."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = [tuple(as_cyc(e) for e in g) for g in generators]
    for k, g in enumerate(gens):
        if mat_det(g).is_zero():
            raise SingularGenerator(f"generator {k} is singular")
    elements = [IDENTITY]
    index = {mat_key(IDENTITY): 0}
    parent = [(-1, -1)]
    left = [[] for _ in gens]  # left[s][x] = index of gens[s] * elements[x]
    head = 0
    while head < len(elements):
        x = elements[head]
        for s, g in enumerate(gens):
            y = mat_mul(g, x)
            k = mat_key(y)
            j = index.get(k)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise GroupCapExceeded(f"group closure exceeded cap={cap}")
                index[k] = j
                elements.append(y)
                parent.append((s, head))
            left[s].append(j)
        head += 1
    n = len(elements)
    table = None
    if n <= TABLE_CAP:
        perms = [np.array(p, dtype=np.int64) for p in left]
        table = np.empty((n, n), dtype=np.int64)
        table[0] = np.arange(n)
        for g in range(1, n):
            s, h = parent[g]
            # (gens[s] * h) * x = gens[s] * (h * x)
            table[g] = perms[s][table[h]]
    return FiniteMatrixGroup(elements, gens, table, name)


def conjugacy_classes(g: FiniteMatrixGroup) -> ConjugacyData:
    """Classes as orbits under conjugation by the generators, canonically ordered."""
    n = g.order
    gen_idx = [g.lookup(s) for s in g.generators]
    gen_inv = [g.inv(s) for s in gen_idx]
    seen = [-1] * n
    raw: list[list[int]] = []
    for x in range(n):
        if seen[x] >= 0:
            continue
        cls = [x]
        seen[x] = len(raw)
        stack = [x]
        while stack:
            y = stack.pop()
            for s, si in zip(gen_idx, gen_inv):
                z = g.mul(g.mul(s, y), si)
                if seen[z] < 0:
                    seen[z] = len(raw)
                    cls.append(z)
                    stack.append(z)
        raw.append(sorted(cls))

    def key(cls):
        texts = sorted(_mat_sort_text(g.elements[i]) for i in cls)
        return (0 if 0 in cls else 1, len(cls), texts[0])

    ordered = sorted(raw, key=key)
    class_of = [0] * n
    reps = []
    for ci, cls in enumerate(ordered):
        for x in cls:
            class_of[x] = ci
        reps.append(min(cls, key=lambda i: _mat_sort_text(g.elements[i])))
    return ConjugacyData(tuple(tuple(c) for c in ordered), tuple(class_of), tuple(reps))


def builtin_generators(name: str) -> list[Mat2]:
    c = named_constants()
    r2 = 1 / c["sqrt2"]
    r3 = 1 / c["sqrt3"]
    if name == "I":
        return [mat(r2, r2, r2, -r2), mat(1, 0, 0, -1)]
    if name == "II":
        return [mat(r2, r2, r2, -r2), mat(1, 0, 0, c["i"])]
    if name == "III":
        return [mat(r3, 2 * r3, r3, -r3), mat(1, 0, 0, c["omega3"])]
    if name == "IV":
        h = CycNum.from_rational(1) / 2
        return [mat(h, 3 * h, h, -h), mat(1, 0, 0, -1)]
    raise KeyError(f"unknown built-in group {name!r}; expected one of {BUILTIN_NAMES}")


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteMatrixGroup:
    g = generate_group(builtin_generators(name), name=f"G_{name}")
    g.classes()
    return g


def _line_of(text: str, needle: str, start: int = 0) -> int | None:
    pos = text.find(needle, start)
    if pos < 0:
        return None
    return text.count("\n", 0, pos) + 1


def parse_generators(text: str) -> list[Mat2]:
    """Parse a JSON array of 2x2 arrays of CycNum text forms (or numbers)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeneratorFileError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, list) or not data:
        raise GeneratorFileError("expected a non-empty JSON array of 2x2 matrices", 1)
    gens = []
    cursor = text.find("[") + 1
    for k, m in enumerate(data):
        if not (isinstance(m, list) and len(m) == 2 and all(isinstance(r, list) and len(r) == 2 for r in m)):
            raise GeneratorFileError(f"generator {k} is not a 2x2 array", _line_of(text, "[", cursor))
        entries = []
        for r in m:
            for e in r:
                token = json.dumps(e)
                line = _line_of(text, token, cursor)
                pos = text.find(token, cursor)
                if pos >= 0:
                    cursor = pos + len(token)
                try:
                    if isinstance(e, bool) or not isinstance(e, (str, int)):
                        raise ValueError(f"unsupported entry {e!r}")
                    entries.append(CycNum.from_text(str(e)))
                except ValueError as exc:
                    raise GeneratorFileError(f"generator {k}: {exc}", line) from None
        gens.append(tuple(entries))
    return gens


def load_generators(path: str) -> list[Mat2]:
    with open(path, encoding="utf-8") as fh:
        return parse_generators(fh.read())
