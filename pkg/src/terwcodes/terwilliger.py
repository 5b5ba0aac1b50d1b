"""Terwilliger algebra T(G) of a group association scheme.

T(G) splits as a vector space into the blocks E_i* T E_k*, so every
computation here runs block by block: a basis element is an integer
|C_i| x |C_k| matrix tagged with its (source, target) class pair, and spans are
tracked by one exact tracker per block.  Products only ever pair a
(i, k)-element with a (k, m)-element.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from .linalg import SpanTracker, kernel_basis
from .scheme import AssociationScheme, dimension_lower_bound, dimension_upper_bound
from . import wedderburn

__all__ = [
    "BasisElement",
    "TAlgebra",
    "DepthExceeded",
    "NonSquareRank",
    "build_dual_idempotents",
    "build_talgebra",
    "basis_closure",
    "block_counts",
    "center_basis",
    "central_idempotents",
    "wedderburn_degrees",
    "resolve_threads",
    "match_block_counts",
    "summary",
]

log = logging.getLogger(__name__)


class DepthExceeded(RuntimeError):
    pass


class NonSquareRank(ArithmeticError):
    pass


@dataclass
class BasisElement:
    source: int  # row class i
    target: int  # column class k
    block: np.ndarray  # |C_i| x |C_k| integer matrix
    depth: int
    label: tuple  # (i, j, k) for depth 1; (left index, right index) otherwise

    def full(self, scheme: AssociationScheme) -> np.ndarray:
        """Embed into the full n x n matrix indexed by group elements."""
        n = scheme.n
        out = np.zeros((n, n), dtype=self.block.dtype)
        rows = np.asarray(scheme.class_data.classes[self.source])
        cols = np.asarray(scheme.class_data.classes[self.target])
        out[np.ix_(rows, cols)] = self.block
        return out


@dataclass
class TAlgebra:
    scheme: AssociationScheme
    basis: list[BasisElement] = field(default_factory=list)
    stabilization_depth: int | None = None
    center: list[list[np.ndarray]] | None = None  # each element: per-class diagonal blocks (Fraction arrays)
    center_coeffs: list[list[Fraction]] | None = None
    idempotents: list[list[np.ndarray]] | None = None
    degrees: list[int] | None = None
    idempotent_route: str | None = None

    @property
    def size(self) -> int:
        return len(self.scheme.class_data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def block_index(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for idx, b in enumerate(self.basis):
            out.setdefault((b.source, b.target), []).append(idx)
        return out


def resolve_threads(threads: int | None) -> int:
    if threads is None or threads == 0:
        env = os.environ.get("TERWILLIGER_THREADS")
        if env:
            threads = int(env)
        else:
            threads = os.cpu_count() or 1
    return max(1, int(threads))


def _members(scheme: AssociationScheme) -> list[np.ndarray]:
    return [np.asarray(c, dtype=np.int64) for c in scheme.class_data.classes]


def _sub_blocks(scheme: AssociationScheme) -> dict[tuple[int, int], np.ndarray]:
    """Relation labels restricted to C_i x C_k."""
    mem = _members(scheme)
    size = len(mem)
    return {(i, k): scheme.relation[np.ix_(mem[i], mem[k])] for i in range(size) for k in range(size)}


def depth_one_block(scheme: AssociationScheme, i: int, j: int, k: int) -> np.ndarray:
    """The C_i x C_k block of E_i* A_j E_k*."""
    mem = _members(scheme)
    return (scheme.relation[np.ix_(mem[i], mem[k])] == j).astype(np.int64)


def build_dual_idempotents(scheme: AssociationScheme) -> list[np.ndarray]:
    """Diagonal 0/1 matrices E_i* projecting onto the coordinates in C_i."""
    n = scheme.n
    out = []
    for cls in scheme.class_data.classes:
        e = np.zeros((n, n), dtype=np.int64)
        idx = np.asarray(cls)
        e[idx, idx] = 1
        out.append(e)
    return out


def _dedupe(cands: np.ndarray) -> np.ndarray:
    """Drop zero rows and repeated rows, keeping first occurrences in order."""
    if cands.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    nz = np.flatnonzero(cands.any(axis=1))
    if nz.size == 0:
        return nz
    _, first = np.unique(cands[nz], axis=0, return_index=True)
    return nz[np.sort(first)]


def basis_closure(scheme: AssociationScheme, max_depth: int = 4, threads: int | None = 1) -> TAlgebra:
    """Close the span of all E_i* A_j E_k* under block-compatible products.

    Round 1 feeds the nonzero depth-one products.  Round L >= 2 feeds products
    of pairs of current basis elements in which at least one factor entered in
    round L-1.  The span is closed (hence equals T) once a round adds nothing;
    the stabilization depth is the last round that did add something.
    """
    if max_depth < 2:
        raise ValueError("max_depth must be >= 2")
    threads = resolve_threads(threads)
    size = len(scheme.class_data)
    sizes = scheme.class_sizes
    labels = _sub_blocks(scheme)
    trackers = {(i, k): SpanTracker(sizes[i] * sizes[k]) for i in range(size) for k in range(size)}
    t = TAlgebra(scheme)
    basis = t.basis
    by_block: dict[tuple[int, int], list[int]] = {key: [] for key in trackers}

    for i in range(size):
        for k in range(size):
            blocks, tags = [], []
            for j in range(size):
                blk = (labels[(i, k)] == j).astype(np.int64)
                if blk.any():
                    blocks.append(blk)
                    tags.append((i, j, k))
            if not blocks:
                continue
            arr = np.stack([b.ravel() for b in blocks])
            for sel in trackers[(i, k)].add_many_int(arr):
                by_block[(i, k)].append(len(basis))
                basis.append(BasisElement(i, k, blocks[sel], 1, tags[sel]))
    new_since = 0
    last_growth = 1

    def round_for_block(key, snapshot, first_new):
        i, m = key
        tracker = trackers[key]
        if tracker.rank == sizes[i] * sizes[m]:
            return key, [], []
        prods, tags = [], []
        for k in range(size):
            lefts = [x for x in snapshot[(i, k)]]
            rights = [y for y in snapshot[(k, m)]]
            if not lefts or not rights:
                continue
            for x in lefts:
                bx = basis[x].block
                for y in rights:
                    if x < first_new and y < first_new:
                        continue
                    prods.append(bx @ basis[y].block)
                    tags.append((x, y))
        if not prods:
            return key, [], []
        order = sorted(range(len(tags)), key=lambda q: tags[q])
        prods = [prods[q] for q in order]
        tags = [tags[q] for q in order]
        arr = np.stack([p.ravel() for p in prods])
        keep = _dedupe(arr)
        chosen = tracker.add_many_int(arr[keep])
        return key, [prods[keep[c]] for c in chosen], [tags[keep[c]] for c in chosen]

    for depth in range(2, max_depth + 2):
        snapshot = {key: list(v) for key, v in by_block.items()}
        first_new = new_since
        new_since = len(basis)
        keys = sorted(trackers)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda key: round_for_block(key, snapshot, first_new), keys))
        else:
            results = [round_for_block(key, snapshot, first_new) for key in keys]
        added = 0
        for key, mats, tags in results:
            for mtx, tag in zip(mats, tags):
                by_block[key].append(len(basis))
                basis.append(BasisElement(key[0], key[1], mtx, depth, tag))
                added += 1
        log.debug("closure round %d added %d elements (dim %d)", depth, added, len(basis))
        if not added:
            t.stabilization_depth = last_growth
            return t
        last_growth = depth
    raise DepthExceeded(f"span still growing at depth {max_depth} (dim so far {len(basis)})")


def block_counts(t: TAlgebra) -> np.ndarray:
    out = np.zeros((t.size, t.size), dtype=np.int64)
    for b in t.basis:
        out[b.source, b.target] += 1
    return out


def _block_fraction(arr: np.ndarray) -> np.ndarray:
    return np.vectorize(Fraction, otypes=[object])(arr)


def center_basis(t: TAlgebra) -> list[list[Fraction]]:
    """Basis of Z(T) as coefficient vectors over the diagonal-block basis elements.

    A block-diagonal y in T is central iff it commutes with every
    E_i* A_j E_k*; those products generate T together with the E_i*, which y
    commutes with automatically.
    """
    s = t.scheme
    size = t.size
    labels = _sub_blocks(s)
    diag = [b_idx for b_idx, b in enumerate(t.basis) if b.source == b.target]
    col_of = {b_idx: c for c, b_idx in enumerate(diag)}
    per_class = {i: [b for b in diag if t.basis[b].source == i] for i in range(size)}
    unknowns = len(diag)
    tracker = SpanTracker(unknowns)
    for i in range(size):
        for k in range(size):
            ui, uk = per_class[i], per_class[k]
            cols = sorted(set(ui) | set(uk))
            local = {b: c for c, b in enumerate(cols)}
            rows = []
            for j in range(size):
                m = (labels[(i, k)] == j).astype(np.int64)
                if not m.any():
                    continue
                coeff = np.zeros((m.size, len(cols)), dtype=np.int64)
                for b in ui:
                    coeff[:, local[b]] += (t.basis[b].block @ m).ravel()
                for b in uk:
                    coeff[:, local[b]] -= (m @ t.basis[b].block).ravel()
                rows.append(coeff)
            if not rows:
                continue
            eq = np.vstack(rows)
            eq = eq[_dedupe(eq)]
            if eq.shape[0] == 0:
                continue
            local_t = SpanTracker(len(cols))
            local_t.add_many_int(eq)
            red = local_t.int_rows()
            glob = np.zeros((red.shape[0], unknowns), dtype=red.dtype)
            for c, b in enumerate(cols):
                glob[:, col_of[b]] = red[:, c]
            tracker.add_many_int(glob)
    rows = tracker.rows() or [[Fraction(0)] * unknowns]
    kernel = kernel_basis(rows) if tracker.rank else [
        [Fraction(int(r == c)) for c in range(unknowns)] for r in range(unknowns)
    ]
    t.center_coeffs = kernel
    t.center = [_center_element(t, diag, vec) for vec in kernel]
    return kernel


def _center_element(t: TAlgebra, diag: list[int], vec: list[Fraction]) -> list[np.ndarray]:
    sizes = t.scheme.class_sizes
    blocks = [np.full((n, n), Fraction(0), dtype=object) for n in sizes]
    for c, b_idx in enumerate(diag):
        if vec[c]:
            b = t.basis[b_idx]
            blocks[b.source] = blocks[b.source] + vec[c] * _block_fraction(b.block)
    return blocks


def central_idempotents(t: TAlgebra) -> list[list[np.ndarray]]:
    """Primitive central idempotents, each verified exactly."""
    if t.center is None:
        center_basis(t)
    eps, route = wedderburn.primitive_idempotents(t.center)
    labels = _sub_blocks(t.scheme)
    wedderburn.verify_idempotents(eps, labels, t.size)
    t.idempotents = eps
    t.idempotent_route = route
    return eps


def wedderburn_degrees(t: TAlgebra) -> list[int]:
    """d_a with d_a^2 = dim T eps_a, computed block by block."""
    if t.idempotents is None:
        central_idempotents(t)
    degrees = []
    by_block = t.block_index()
    sizes = t.scheme.class_sizes
    for eps in t.idempotents:
        scaled = wedderburn._scaled(eps)
        total = 0
        for (i, k), members in sorted(by_block.items()):
            tracker = SpanTracker(sizes[i] * sizes[k])
            if scaled is not None:
                nums = scaled[0][k]
                if not np.any(nums):
                    continue
                arr = np.stack([(t.basis[b].block @ nums).ravel() for b in members])
                tracker.add_many_int(arr)
            else:
                for b in members:
                    tracker.add(list(wedderburn.mat_mul(t.basis[b].block, eps[k]).ravel()))
            total += tracker.rank
        d = isqrt(total)
        if d * d != total:
            raise NonSquareRank(f"dim T*eps = {total} is not a perfect square; idempotent not primitive")
        degrees.append(d)
    t.degrees = sorted(degrees)
    return t.degrees


def build_talgebra(scheme: AssociationScheme, max_depth: int = 4, threads: int | None = 1,
                   structure: bool = True) -> TAlgebra:
    t = basis_closure(scheme, max_depth=max_depth, threads=threads)
    if structure:
        center_basis(t)
        central_idempotents(t)
        wedderburn_degrees(t)
    return t


def summary(t: TAlgebra) -> dict:
    s = t.scheme
    out = {
        "order": s.n,
        "classSizes": s.class_sizes,
        "dimT": t.dim,
        "dimBoundLower": dimension_lower_bound(s),
        "dimBoundUpper": dimension_upper_bound(s),
        "stabilizationDepth": t.stabilization_depth,
        "blockCounts": block_counts(t).tolist(),
    }
    if t.center is not None:
        out["centerDim"] = len(t.center)
    if t.degrees is not None:
        out["degrees"] = t.degrees
        out["idempotentRoute"] = t.idempotent_route
    return out


def match_block_counts(computed, published, computed_sizes=None, published_sizes=None,
                       budget: int = 1_000_000) -> list[int] | None:
    """Find perm with computed[a][b] == published[perm[a]][perm[b]] for all a, b.

    Class sizes, when given, must agree under the permutation.  Candidates are
    pruned by a row signature (size, diagonal entry, sorted row) and then
    assigned by backtracking.  Returns None if no permutation exists (or the
    search budget runs out).
    """
    c = np.asarray(computed)
    p = np.asarray(published)
    if c.shape != p.shape:
        return None
    n = c.shape[0]
    cs = list(computed_sizes) if computed_sizes is not None else [0] * n
    ps = list(published_sizes) if published_sizes is not None else [0] * n

    def sig(m, sizes, a):
        return sizes[a], int(m[a, a]), tuple(sorted(m[a].tolist())), tuple(sorted(m[:, a].tolist()))

    csig = [sig(c, cs, a) for a in range(n)]
    psig = [sig(p, ps, a) for a in range(n)]
    cands = [[b for b in range(n) if psig[b] == csig[a]] for a in range(n)]
    if any(not x for x in cands):
        return None
    order = sorted(range(n), key=lambda a: len(cands[a]))
    perm = [-1] * n
    used = [False] * n
    steps = 0

    def ok(a, b):
        for a2 in range(n):
            b2 = perm[a2]
            if b2 < 0:
                continue
            if c[a, a2] != p[b, b2] or c[a2, a] != p[b2, b]:
                return False
        return True

    def go(pos):
        nonlocal steps
        if pos == n:
            return True
        a = order[pos]
        for b in cands[a]:
            steps += 1
            if steps > budget:
                return False
            if used[b] or not ok(a, b):
                continue
            perm[a] = b
            used[b] = True
            if go(pos + 1):
                return True
            perm[a] = -1
            used[b] = False
        return False

    return list(perm) if go(0) else None
