"""Primitive central idempotents of a split commutative semisimple algebra.

The algebra is handed over as a list of basis elements e_1..e_s, each a list of
square diagonal blocks (numpy object arrays of exact scalars).  With
e_a e_b = sum_c r_ab^c e_c, the multiplication operators are simultaneously
diagonalisable; writing M[j][a] for the eigenvalue of e_a on the j-th common
eigenvector gives (e_1..e_s) = (eps_1..eps_s) M, so (eps) = (e) M^-1.
"""
from __future__ import annotations

import logging
import random
from fractions import Fraction
from math import lcm

import mpmath
import numpy as np
import sympy as sp

from .exactnum import CycNum, named_constants
from .linalg import kernel_basis, rref, solve

__all__ = [
    "SplittingFailure",
    "structure_constants",
    "primitive_idempotents",
    "verify_idempotents",
    "mat_mul",
    "ROUTES",
]

log = logging.getLogger(__name__)

ROUTES = ("rational", "cyclotomic", "numeric")


class SplittingFailure(ArithmeticError):
    pass


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product; integer arrays stay integer, others go through object arithmetic."""
    if a.dtype != object and b.dtype != object:
        return a @ b
    a = a.astype(object)
    b = b.astype(object)
    out = np.empty((a.shape[0], b.shape[1]), dtype=object)
    for r in range(a.shape[0]):
        row = a[r]
        nz = [(k, row[k]) for k in range(a.shape[1]) if row[k] != 0]
        for c in range(b.shape[1]):
            acc = 0
            for k, v in nz:
                w = b[k, c]
                if w != 0:
                    acc = acc + v * w
            out[r, c] = acc
    return out


def _flat(elem: list[np.ndarray]) -> list:
    return [x for blk in elem for x in blk.ravel()]


def _product(x: list[np.ndarray], y: list[np.ndarray]) -> list[np.ndarray]:
    return [mat_mul(a, b) for a, b in zip(x, y)]


def _combine(coeffs, elems: list[list[np.ndarray]]) -> list[np.ndarray]:
    out = [np.full(blk.shape, Fraction(0), dtype=object) for blk in elems[0]]
    for c, e in zip(coeffs, elems):
        if c != 0:
            out = [o + c * blk for o, blk in zip(out, e)]
    return out


def structure_constants(elems: list[list[np.ndarray]]) -> list[list[list[Fraction]]]:
    """r[a][b] = coordinates of e_a e_b in the basis (exact, verified)."""
    flats = [_flat(e) for e in elems]
    s = len(elems)
    red, rk = rref(flats)
    if rk != s:
        raise ValueError("center elements are linearly dependent")
    pivots = []
    for row in red.to_dense()[:rk]:
        pivots.append(next(c for c, x in enumerate(row) if x != 0))
    system = [[flats[c][p] for c in range(s)] for p in pivots]
    r = [[None] * s for _ in range(s)]
    for a in range(s):
        for b in range(a, s):
            prod = _flat(_product(elems[a], elems[b]))
            x = solve(system, [prod[p] for p in pivots])
            if x is None:
                raise ArithmeticError(f"e_{a} e_{b} leaves the span")
            check = [sum((x[c] * flats[c][q] for c in range(s) if x[c]), Fraction(0)) for q in range(len(prod))]
            if any(u != v for u, v in zip(check, prod)):
                raise ArithmeticError(f"e_{a} e_{b} not in the center span")
            r[a][b] = r[b][a] = x
    return r


def _operators(r) -> list[sp.Matrix]:
    """Matrices L_a of multiplication by e_a acting on coordinate columns: (L_a)[c, b] = r_ab^c."""
    s = len(r)
    return [sp.Matrix(s, s, lambda c, b: sp.Rational(r[a][b][c].numerator, r[a][b][c].denominator))
            for a in range(s)]


def _generic(ops: list[sp.Matrix], rng: random.Random, tries: int = 50):
    s = ops[0].shape[0]
    lam = sp.Symbol("lam")
    for attempt in range(tries):
        weights = [rng.randint(-7, 7) or 1 for _ in ops] if attempt else list(range(1, len(ops) + 1))
        L = sp.zeros(s, s)
        for w, op in zip(weights, ops):
            L += w * op
        poly = sp.Poly(L.charpoly(lam).as_expr(), lam)
        if sp.degree(sp.gcd(poly, poly.diff(lam)), lam) == 0:
            return L, poly
    raise SplittingFailure("no combination of the center basis with distinct eigenvalues found")


def _to_cyc(expr) -> CycNum:
    """Convert a sympy number built from rationals, sqrt(2), sqrt(3), sqrt(6) and I into Q(zeta_24)."""
    c = named_constants()
    expr = sp.nsimplify(sp.expand(expr))
    if expr.is_Rational:
        return CycNum.from_rational(Fraction(int(expr.p), int(expr.q)))
    if expr is sp.I:
        return c["i"]
    if expr.is_Add:
        out = CycNum.from_rational(0)
        for t in expr.args:
            out = out + _to_cyc(t)
        return out
    if expr.is_Mul:
        out = CycNum.from_rational(1)
        for t in expr.args:
            out = out * _to_cyc(t)
        return out
    if expr.is_Pow and expr.exp.is_Rational:
        base = _to_cyc(expr.base)
        e = expr.exp
        if e.q == 1:
            return base ** int(e.p)
        if e.q == 2 and expr.base.is_Rational:
            b = int(expr.base)
            roots = {2: c["sqrt2"], 3: c["sqrt3"], 6: c["sqrt2"] * c["sqrt3"], -1: c["i"],
                     -2: c["i"] * c["sqrt2"], -3: c["i"] * c["sqrt3"], -6: c["i"] * c["sqrt2"] * c["sqrt3"]}
            sq = None
            for k, v in roots.items():
                ratio = sp.Rational(b, k)
                rt = sp.sqrt(ratio)
                if ratio > 0 and rt.is_Rational:
                    sq = v * Fraction(int(rt.p), int(rt.q))
                    break
            if sq is None:
                raise SplittingFailure(f"sqrt({b}) is not in Q(zeta_24)")
            return sq ** int(e.p)
    raise SplittingFailure(f"cannot express {expr} in Q(zeta_24)")


def _eigen_data(L: sp.Matrix, poly: sp.Poly, route: str):
    lam = poly.gens[0]
    if route == "rational":
        _, factors = sp.factor_list(poly)
        if any(sp.degree(f, lam) != 1 for f, _ in factors):
            return None
        roots = [-sp.Poly(f, lam).all_coeffs()[1] / sp.Poly(f, lam).all_coeffs()[0] for f, _ in factors]
        return [Fraction(int(r.p), int(r.q)) for r in roots]
    if route == "cyclotomic":
        ext = [sp.sqrt(2), sp.sqrt(3), sp.I]
        _, factors = sp.factor_list(poly.as_expr(), lam, extension=ext)
        roots = []
        for f, _ in factors:
            fp = sp.Poly(f, lam)
            if fp.degree() != 1:
                return None
            a1, a0 = fp.all_coeffs()
            roots.append(_to_cyc(-a0 / a1))
        return roots
    raise ValueError(route)


def _eigvec(L: list[list], mu) -> list:
    s = len(L)
    shifted = [[L[r][c] - (mu if r == c else 0) for c in range(s)] for r in range(s)]
    ker = kernel_basis(shifted)
    if len(ker) != 1:
        raise SplittingFailure("eigenspace of the generic element is not one-dimensional")
    return ker[0]


def _exact_route(elems, ops, L, poly, route):
    roots = _eigen_data(L, poly, route)
    if roots is None:
        return None
    s = len(elems)
    conv = (lambda q: Fraction(int(q.p), int(q.q)))
    Lx = [[conv(L[r, c]) for c in range(s)] for r in range(s)]
    opx = [[[conv(op[r, c]) for c in range(s)] for r in range(s)] for op in ops]
    vecs = [_eigvec(Lx, mu) for mu in roots]
    # M[j][a] = eigenvalue of e_a on the j-th eigenvector
    M = []
    for v in vecs:
        piv = next(q for q in range(s) if v[q] != 0)
        row = []
        for op in opx:
            w = sum((op[piv][c] * v[c] for c in range(s) if v[c] != 0), Fraction(0))
            row.append(w / v[piv])
        M.append(row)
    return _from_characters(elems, M)


def _from_characters(elems, M):
    s = len(elems)
    ident = [[Fraction(int(r == c)) for c in range(s)] for r in range(s)]
    minv_cols = []
    for j in range(s):
        # columns of M^-1 solve M x = unit vector
        col = solve(M, [ident[r][j] for r in range(s)])
        if col is None:
            raise SplittingFailure("character matrix is singular")
        minv_cols.append(col)
    # eps_j = sum_a e_a (M^-1)[a][j]
    return [_combine(minv_cols[j], elems) for j in range(s)]


def _numeric_route(elems, ops, L, poly, bits=256, max_den=2**64):
    s = len(elems)
    with mpmath.workprec(bits):
        A = mpmath.matrix([[mpmath.mpf(sp.Rational(L[r, c]).p) / sp.Rational(L[r, c]).q for c in range(s)] for r in range(s)])
        vals, vecs = mpmath.eig(A)
        M = []
        for j in range(s):
            v = [vecs[q, j] for q in range(s)]
            piv = max(range(s), key=lambda q: abs(v[q]))
            row = []
            for op in ops:
                w = sum(mpmath.mpf(sp.Rational(op[piv, c]).p) / sp.Rational(op[piv, c]).q * v[c] for c in range(s))
                val = w / v[piv]
                if abs(mpmath.im(val)) > mpmath.mpf(2) ** (-bits // 2):
                    return None
                row.append(Fraction(str(mpmath.nstr(mpmath.re(val), bits // 4))).limit_denominator(max_den))
            M.append(row)
    return _from_characters(elems, M)


def _is_idempotent_set(eps) -> bool:
    try:
        _check_algebraic(eps)
    except AssertionError:
        return False
    return True


def primitive_idempotents(elems: list[list[np.ndarray]], routes=ROUTES, seed: int = 0):
    """Return (idempotents, route) for the commutative algebra spanned by ``elems``."""
    if not elems:
        raise SplittingFailure("empty center")
    if len(elems) == 1:
        e = elems[0]
        sq = _product(e, e)
        # e^2 = c e, so e / c is the identity of the algebra
        flat_e, flat_sq = _flat(e), _flat(sq)
        q = next(i for i, x in enumerate(flat_e) if x != 0)
        c = flat_sq[q] / flat_e[q]
        return [[blk * (1 / c) for blk in e]], "rational"
    r = structure_constants(elems)
    ops = _operators(r)
    L, poly = _generic(ops, random.Random(seed))
    for route in routes:
        if route == "numeric":
            eps = _numeric_route(elems, ops, L, poly)
        else:
            eps = _exact_route(elems, ops, L, poly, route)
        if eps is not None and _is_idempotent_set(eps):
            log.debug("idempotents found by %s route", route)
            return eps, route
    raise SplittingFailure("no route produced exactly verified idempotents")


def _scaled(blocks: list[np.ndarray]):
    """Integer numerators and common denominator for rational blocks, else None."""
    den = 1
    for blk in blocks:
        for x in blk.ravel():
            if isinstance(x, CycNum):
                if not x.is_rational():
                    return None
                x = x.to_rational()
            den = lcm(den, Fraction(x).denominator)
    out = []
    big = False
    for blk in blocks:
        ints = [[int(Fraction(x.to_rational() if isinstance(x, CycNum) else x) * den) for x in row] for row in blk]
        arr = np.array(ints, dtype=object).reshape(blk.shape)
        if arr.size and max(abs(int(v)) for v in arr.ravel()) >= 1 << 24:
            big = True
        out.append(arr)
    if not big:
        out = [a.astype(np.int64) for a in out]
    return out, den


def _check_algebraic(eps) -> None:
    s = len(eps)
    scaled = [_scaled(e) for e in eps]
    for a in range(s):
        for b in range(a, s):
            if scaled[a] is not None and scaled[b] is not None:
                (na, da), (nb, db) = scaled[a], scaled[b]
                for x, y in zip(na, nb):
                    prod = x @ y
                    if a == b:
                        assert (prod == da * x).all() if da == db else False, f"eps_{a}^2 != eps_{a}"
                    else:
                        assert not np.any(prod), f"eps_{a} eps_{b} != 0"
            else:
                for x, y in zip(eps[a], eps[b]):
                    prod = mat_mul(x, y)
                    target = x if a == b else np.zeros_like(x)
                    assert all(p == q for p, q in zip(prod.ravel(), target.ravel())), \
                        f"eps_{a} eps_{b} fails the idempotent relations"
        assert any(v != 0 for blk in eps[a] for v in blk.ravel()), f"eps_{a} is zero"
    for blocks in zip(*eps):
        total = blocks[0]
        for blk in blocks[1:]:
            total = total + blk
        n = total.shape[0]
        assert all((total[r, c] == (1 if r == c else 0)) for r in range(n) for c in range(n)), \
            "idempotents do not sum to the identity"


def verify_idempotents(eps, labels: dict[tuple[int, int], np.ndarray] | None = None, size: int | None = None) -> None:
    """Exact check: eps_a^2 = eps_a, eps_a eps_b = 0, sum = 1, and centrality.

    ``labels[(i, k)]`` holds the relation indices on C_i x C_k; centrality is
    tested against every E_i* A_j E_k* block.
    """
    _check_algebraic(eps)
    if labels is None:
        return
    for e in eps:
        sc = _scaled(e)
        for (i, k), lab in labels.items():
            for j in np.unique(lab):
                m = (lab == j).astype(np.int64)
                if sc is not None:
                    nums, _ = sc
                    left, right = nums[i] @ m, m @ nums[k]
                    ok = np.array_equal(np.asarray(left, dtype=object), np.asarray(right, dtype=object))
                else:
                    left, right = mat_mul(e[i], m), mat_mul(m, e[k])
                    ok = all(p == q for p, q in zip(left.ravel(), right.ravel()))
                if not ok:
                    raise AssertionError(f"idempotent does not commute with E_{i}* A_{j} E_{k}*")
