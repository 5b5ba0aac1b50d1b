"""Invariant theory of the 2-dimensional matrix groups.

Polynomials are bivariate with exact coefficients.  The group action is
f^sigma(x, y) = f(sigma_11 x + sigma_12 y, sigma_21 x + sigma_22 y), i.e.
f^sigma(v) = f(sigma v) for the column vector v = (x, y).  With this
convention (f^sigma)^tau = f^(sigma tau).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

import sympy as sp

from .exactnum import CycNum, as_cyc
from .linalg import rank as matrix_rank, solve
from .matgroup import FiniteMatrixGroup, Mat2, mat_det

__all__ = [
    "BivarPoly",
    "PowerSeries",
    "act_on",
    "is_invariant",
    "e_polynomial",
    "molien_series",
    "reynolds_dimension",
    "expand_product_series",
    "express_in_generators",
    "jacobian",
    "verify_generation",
]


def _norm(c):
    if isinstance(c, CycNum):
        return c.to_rational() if c.is_rational() else c
    return Fraction(c)


def _zero(c) -> bool:
    return c.is_zero() if isinstance(c, CycNum) else c == 0


class BivarPoly:
    """Polynomial in x, y stored as {(deg_x, deg_y): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for k, v in (terms or {}).items():
            v = _norm(v)
            if not _zero(v):
                clean[(int(k[0]), int(k[1]))] = v
        self.terms = clean

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def parse(cls, text: str) -> "BivarPoly":
        """Parse an expression in x and y with rational coefficients."""
        x, y = sp.symbols("x y")
        expr = sp.sympify(text.replace("^", "**"), locals={"x": x, "y": y})
        poly = sp.Poly(sp.expand(expr), x, y)
        return cls({k: Fraction(int(v.p), int(v.q)) for k, v in poly.terms()})

    # -- structure -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=0)

    def homogeneous_degree(self) -> int | None:
        """Common total degree, or None when the polynomial is mixed (or zero)."""
        degs = {a + b for a, b in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def coeff(self, a: int, b: int):
        return self.terms.get((a, b), Fraction(0))

    def is_rational(self) -> bool:
        return all(not isinstance(v, CycNum) for v in self.terms.values())

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return BivarPoly({k: v * other for k, v in self.terms.items()})
        other = _lift(other)
        out: dict = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                k = (a + c, b + d)
                out[k] = out[k] + u * v if k in out else u * v
        return BivarPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self * (1 / as_cyc(other) if isinstance(other, CycNum) else Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        result = BivarPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def derivative(self, var: str) -> "BivarPoly":
        out = {}
        for (a, b), v in self.terms.items():
            if var == "x" and a:
                out[(a - 1, b)] = v * a
            elif var == "y" and b:
                out[(a, b - 1)] = v * b
        return BivarPoly(out)

    def evaluate(self, x, y):
        total = Fraction(0)
        for (a, b), v in self.terms.items():
            total = total + v * (x ** a) * (y ** b)
        return total

    # -- text ------------------------------------------------------------
    def to_text(self) -> str:
        """``c * x^a y^b + ...`` ordered by descending power of x."""
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda k: (-k[0], k[1])):
            c = self.terms[(a, b)]
            mono = " ".join(f"{v}^{e}" for v, e in (("x", a), ("y", b)) if e)
            coeff = str(c) if not isinstance(c, CycNum) else f"({c.to_text()})"
            parts.append(f"{coeff} * {mono}" if mono else coeff)
        return " + ".join(parts)

    def __repr__(self):
        return f"BivarPoly({self.to_text()!r})"

    __str__ = to_text


def _lift(p) -> BivarPoly:
    if isinstance(p, BivarPoly):
        return p
    if isinstance(p, (int, Fraction, CycNum)):
        return BivarPoly.const(p)
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def _linear_powers(a, b, n: int) -> list[dict]:
    """(a x + b y)^m for m = 0..n as {deg_y: coeff} maps."""
    apow, bpow = [Fraction(1)], [Fraction(1)]
    for _ in range(n):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    out = []
    for m in range(n + 1):
        cur = {}
        for r in range(m + 1):
            if _zero(apow[m - r]) or _zero(bpow[r]):
                continue
            c = apow[m - r] * bpow[r] * comb(m, r)
            if not _zero(c):
                cur[r] = c
        out.append(cur)
    return out


def act_on(p: BivarPoly, sigma: Mat2) -> BivarPoly:
    """p(sigma_11 x + sigma_12 y, sigma_21 x + sigma_22 y)."""
    s11, s12, s21, s22 = sigma
    n = p.degree()
    xs = _linear_powers(s11, s12, n)
    ys = _linear_powers(s21, s22, n)
    out: dict = {}
    for (a, b), c in p.terms.items():
        deg = a + b
        for r1, u in xs[a].items():
            cu = c * u
            for r2, v in ys[b].items():
                k = (deg - r1 - r2, r1 + r2)
                out[k] = out[k] + cu * v if k in out else cu * v
    return BivarPoly(out)


def is_invariant(p: BivarPoly, elements: Iterable[Mat2]) -> bool:
    return all(act_on(p, s) == p for s in elements)


def e_polynomial(g: FiniteMatrixGroup, k: int) -> BivarPoly:
    """Average of (sigma_11 x + sigma_12 y)^k over the group."""
    if k < 0:
        raise ValueError("k must be >= 0")
    acc = [CycNum.from_rational(0)] * (k + 1)
    for s in g.elements:
        a, b = s[0], s[1]
        apow = [CycNum.from_rational(1)]
        bpow = [CycNum.from_rational(1)]
        for _ in range(k):
            apow.append(apow[-1] * a)
            bpow.append(bpow[-1] * b)
        for r in range(k + 1):
            acc[r] = acc[r] + apow[k - r] * bpow[r] * comb(k, r)
    n = g.order
    phi = BivarPoly({(k - r, r): acc[r] * Fraction(1, n) for r in range(k + 1)})
    assert is_invariant(phi, g.generators), f"phi_{k} is not invariant"
    return phi


@dataclass
class PowerSeries:
    """Truncated series c_0 + c_1 t + ... + c_{N-1} t^(N-1)."""

    coeffs: list[Fraction]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.coeffs[j]
        return PowerSeries(out)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    def as_ints(self) -> list[int]:
        assert all(c.denominator == 1 for c in self.coeffs)
        return [int(c) for c in self.coeffs]


def molien_series(g: FiniteMatrixGroup, n_terms: int) -> PowerSeries:
    """(1/|G|) sum over sigma of 1 / det(1 - t sigma), truncated to n_terms."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    total = [CycNum.from_rational(0)] * n_terms
    for s in g.elements:
        tr = s[0] + s[3]
        det = mat_det(s)
        # 1/(1 - tr t + det t^2): c_m = tr c_{m-1} - det c_{m-2}
        prev2, prev = CycNum.from_rational(0), CycNum.from_rational(1)
        total[0] = total[0] + prev
        for m in range(1, n_terms):
            cur = tr * prev - det * prev2
            total[m] = total[m] + cur
            prev2, prev = prev, cur
    out = []
    for c in total:
        if not c.is_rational():
            raise ArithmeticError("Molien coefficient is not rational")
        out.append(c.to_rational() / g.order)
    return PowerSeries(out)


def _sym_power(sigma: Mat2, k: int) -> list[list]:
    """Matrix of p -> p^sigma on the monomials x^(k-r) y^r (column r = image of monomial r)."""
    xs = _linear_powers(sigma[0], sigma[1], k)
    ys = _linear_powers(sigma[2], sigma[3], k)
    size = k + 1
    m = [[Fraction(0)] * size for _ in range(size)]
    for r in range(size):
        for q1, u in xs[k - r].items():
            for q2, v in ys[r].items():
                m[q1 + q2][r] = m[q1 + q2][r] + u * v
    return m


def reynolds_dimension(g: FiniteMatrixGroup, k: int) -> int:
    """dim of degree-k invariants as the rank of the Reynolds projector on monomials."""
    size = k + 1
    acc = [[CycNum.from_rational(0)] * size for _ in range(size)]
    for s in g.elements:
        m = _sym_power(s, k)
        for q in range(size):
            for c in range(size):
                if not _zero(m[q][c]):
                    acc[q][c] = acc[q][c] + m[q][c]
    proj = [[_norm(v * Fraction(1, g.order)) for v in row] for row in acc]
    return matrix_rank(proj)


def expand_product_series(a: int, b: int, n_terms: int) -> PowerSeries:
    """Truncated expansion of 1 / ((1 - t^a)(1 - t^b))."""
    if a < 1 or b < 1:
        raise ValueError("a, b must be >= 1")

    def geometric(step):
        return PowerSeries([Fraction(1) if i % step == 0 else Fraction(0) for i in range(n_terms)])

    return geometric(a) * geometric(b)


def express_in_generators(target: BivarPoly, phi_a: BivarPoly, phi_b: BivarPoly):
    """Exact {(m, n): c} with target = sum c phi_a^m phi_b^n, or None if impossible."""
    D = target.homogeneous_degree()
    a, b = phi_a.homogeneous_degree(), phi_b.homogeneous_degree()
    if a is None or b is None:
        raise ValueError("generators must be homogeneous and nonzero")
    if D is None:
        if target:
            raise ValueError("target must be homogeneous")
        return {}
    pairs = [(m, (D - m * a) // b) for m in range(D // a + 1) if (D - m * a) % b == 0]
    if not pairs:
        return None
    prods = [(phi_a ** m) * (phi_b ** n) for m, n in pairs]
    rows = [[p.coeff(D - r, r) for p in prods] for r in range(D + 1)]
    rhs = [target.coeff(D - r, r) for r in range(D + 1)]
    x = solve(rows, rhs)
    if x is None:
        return None
    result = {pair: _norm(c) for pair, c in zip(pairs, x) if not _zero(c)}
    recon = BivarPoly()
    for (m, n), c in result.items():
        recon = recon + (phi_a ** m) * (phi_b ** n) * c
    assert recon == target, "re-expansion does not reproduce the target"
    return result


def jacobian(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    return p.derivative("x") * q.derivative("y") - p.derivative("y") * q.derivative("x")


def verify_generation(g: FiniteMatrixGroup, phi_a: BivarPoly, phi_b: BivarPoly,
                      targets: Mapping[str, BivarPoly] | None = None, n_terms: int = 40,
                      name: str | None = None) -> dict:
    """Certificate that C[phi_a, phi_b] is the full invariant ring.

    Legs: nonzero Jacobian (algebraic independence), deg a * deg b = |G|,
    Molien series equal to 1/((1-t^a)(1-t^b)), and each target expressible.
    """
    for label, phi in (("phiA", phi_a), ("phiB", phi_b)):
        if not is_invariant(phi, g.elements):
            raise ValueError(f"{label} is not invariant under the group")
    a, b = phi_a.homogeneous_degree(), phi_b.homogeneous_degree()
    jac = bool(jacobian(phi_a, phi_b))
    degree_ok = a * b == g.order
    molien = molien_series(g, n_terms)
    molien_ok = molien == expand_product_series(a, b, n_terms)
    identities = []
    for tname, target in (targets or {}).items():
        expr = express_in_generators(target, phi_a, phi_b)
        identities.append({
            "name": tname,
            "matches": expr is not None,
            "expression": None if expr is None else {f"phiA^{m} phiB^{n}": str(c) for (m, n), c in sorted(expr.items())},
        })
    cert = {
        "group": name or g.name,
        "generatorsDegrees": [a, b],
        "actionConvention": "f^s(x, y) = f(s11 x + s12 y, s21 x + s22 y)",
        "jacobianNonzero": jac,
        "degreeProduct": {"value": a * b, "groupOrder": g.order, "matches": degree_ok},
        "molienMatch": molien_ok,
        "paperIdentities": identities,
    }
    cert["passed"] = jac and degree_ok and molien_ok and all(i["matches"] for i in identities)
    return cert
