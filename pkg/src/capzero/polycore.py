"""Exact integer-polynomial arithmetic and numerical root extraction.

Coefficients are stored lowest degree first, so ``coeffs[i]`` multiplies
``z**i``.  All resultant/discriminant/Bezout work is done in exact integer
arithmetic (Python ints); root finding is simultaneous Aberth iteration in
complex double precision with Newton polishing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConditioningError, ConvergenceError, DomainError

__all__ = [
    "IntPoly",
    "ComplexPoly",
    "resultant_dd",
    "discriminant",
    "bezout",
    "unimodular_shift",
    "roots",
]

# Bareiss on the full 2d x 2d Sylvester matrix up to this degree; the
# subresultant remainder sequence takes over above it.
_BAREISS_DEGREE_LIMIT = 64


def _trim(coeffs: Iterable[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Univariate polynomial with arbitrary-precision integer coefficients.

    The zero polynomial is represented by an empty coefficient tuple and has
    degree -1; every nonzero polynomial has a nonzero leading coefficient.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable[int] = ()):
        cleaned = []
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise DomainError(f"integer coefficient expected, got {c!r}")
            cleaned.append(c)
        object.__setattr__(self, "coeffs", _trim(cleaned))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def times_power(self, k: int) -> "IntPoly":
        """Multiply by z**k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    @classmethod
    def from_text(cls, text: str) -> "IntPoly":
        """Parse the `c0 c1 ... cd` whitespace-separated decimal format."""
        parts = text.split()
        if not parts:
            raise DomainError("empty polynomial text")
        try:
            return cls([int(p) for p in parts])
        except ValueError as exc:
            raise DomainError(f"bad polynomial text {text!r}") from exc

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        return " ".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class ComplexPoly:
    """Complex-double shadow of :class:`IntPoly` used by the root finder."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[complex]):
        c = [complex(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise DomainError("zero polynomial has no roots")
        for v in c:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ConditioningError("coefficient overflows double precision")
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------


def _bareiss_det(rows) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix_dd(p: IntPoly, q: IntPoly, d: int):
    """2d x 2d Sylvester matrix of p and q, both taken with formal degree d."""
    pd = list(p.coeffs) + [0] * (d + 1 - len(p.coeffs))
    qd = list(q.coeffs) + [0] * (d + 1 - len(q.coeffs))
    pd.reverse()
    qd.reverse()
    size = 2 * d
    rows = []
    for i in range(d):
        rows.append([0] * i + pd + [0] * (size - d - 1 - i))
    for i in range(d):
        rows.append([0] * i + qd + [0] * (size - d - 1 - i))
    return rows


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder ``lead(b)**(deg a - deg b + 1) * (a mod b)``.

    Coefficients descending, exact integer arithmetic; requires
    ``deg a >= deg b >= 0`` and b nonzero.  When the working degree drops by
    more than one, the skipped multiplications by lead(b) are applied at the
    end so the overall factor is always exactly ``lead(b)**(delta+1)``.
    """
    da, db = len(a) - 1, len(b) - 1
    lb = b[0]
    e = da - db + 1
    r = list(a)
    while True:
        while r and r[0] == 0:
            r.pop(0)
        if not r or len(r) - 1 < db:
            break
        lead = r[0]
        r = [lb * c for c in r]
        for j in range(db + 1):
            r[j] -= lead * b[j]
        r.pop(0)
        e -= 1
    if e:
        f = lb**e
        r = [c * f for c in r]
    return r


def _exact_div(value: int, divisor: int) -> int:
    q, rem = divmod(value, divisor)
    if rem != 0:
        raise AssertionError("inexact division in subresultant chain")
    return q


def _resultant_actual(p: IntPoly, q: IntPoly) -> int:
    """Resultant of p and q at their actual degrees via subresultant PRS.

    Follows the classical reduction
    ``res(a, b) = (-1)**(m n) lead(b)**(m - r) res(b, a mod b)`` with the
    remainders kept small by subresultant divisions; the exact scalar
    relating the divided remainder to the true remainder is carried along
    as a rational number.
    """
    from fractions import Fraction

    if p.is_zero or q.is_zero:
        raise DomainError("resultant of the zero polynomial")
    a = list(reversed(p.coeffs))
    b = list(reversed(q.coeffs))
    sign = 1
    if len(a) < len(b):
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            sign = -sign
        a, b = b, a
    scalar = Fraction(1)
    g, h = 1, 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            total = scalar * Fraction(b[0]) ** m
            if total.denominator != 1:
                raise AssertionError("non-integer resultant accumulator")
            return sign * total.numerator
        rbar = _prem(a, b)
        if not rbar:
            return 0
        delta = m - n
        lb = b[0]
        divisor = g * h**delta
        bnew = [_exact_div(c, divisor) for c in rbar]
        r = len(bnew) - 1
        if m % 2 == 1 and n % 2 == 1:
            sign = -sign
        # true remainder R = (divisor / lb**(delta+1)) * bnew, so
        # res(a, b) = +/- lb**(m-r) * (divisor/lb**(delta+1))**n * res(b, bnew)
        scalar *= Fraction(lb) ** (m - r)
        scalar *= (Fraction(divisor) / Fraction(lb) ** (delta + 1)) ** n
        a, b = b, bnew
        g = a[0]
        if delta > 0:
            h = _exact_div(g**delta, h ** (delta - 1))


def resultant_dd(p: IntPoly, q: IntPoly, d: int, method: str = "auto") -> int:
    """Resultant of p and q viewed as polynomials of formal degree d.

    Equals ``(-1)**(d*(d-l)) * lead(p)**d * lead(q)**d * prod(x_i - y_j)``
    when ``deg p == d`` and ``deg q == l``; leading zeros are allowed in
    either argument.  Exact over the integers.
    """
    if not isinstance(d, int) or d < 1:
        raise DomainError("formal degree d must be a positive integer")
    if p.is_zero or q.is_zero:
        raise DomainError("resultant of the zero polynomial is undefined")
    if p.degree > d or q.degree > d:
        raise DomainError(
            f"formal degree {d} below actual degrees ({p.degree}, {q.degree})"
        )
    if method not in ("auto", "bareiss", "prs"):
        raise DomainError(f"unknown method {method!r}")
    if method == "bareiss" or (method == "auto" and d <= _BAREISS_DEGREE_LIMIT):
        return _bareiss_det(sylvester_matrix_dd(p, q, d))
    # formal-degree bookkeeping on top of the actual-degree PRS resultant
    if p.degree < d and q.degree < d:
        return 0
    if p.degree == d:
        l = q.degree
        sign = -1 if (d * (d - l)) % 2 else 1
        return sign * p.leading ** (d - l) * _resultant_actual(p, q)
    # deg q == d > deg p: swap, res_{d,d}(p,q) = (-1)**(d*d) res_{d,d}(q,p)
    swap_sign = -1 if d % 2 else 1
    l = p.degree
    sign = -1 if (d * (d - l)) % 2 else 1
    return swap_sign * sign * q.leading ** (d - l) * _resultant_actual(q, p)


def discriminant(p: IntPoly) -> int:
    """Discriminant ``(-1)**(d(d-1)/2) lead^(2d-2) prod_{i<j}(x_i-x_j)**2``.

    Computed exactly as ``res(p, p') / lead(p)`` with the standard sign.
    """
    if p.is_zero:
        raise DomainError("discriminant of the zero polynomial")
    d = p.degree
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    res = _resultant_actual(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    value = sign * res
    quotient, remainder = divmod(value, p.leading)
    if remainder != 0:
        raise AssertionError("res(p, p') not divisible by lead(p)")
    return quotient


# ---------------------------------------------------------------------------
# Bezout and the unimodular change of variables
# ---------------------------------------------------------------------------


def bezout(a1: int, a2: int) -> tuple:
    """Extended Euclid: returns (g, x, y) with g = gcd > 0 and a1*x + a2*y = g."""
    if a1 == 0 and a2 == 0:
        raise DomainError("gcd(0, 0) is undefined")
    r0, r1 = a1, a2
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def unimodular_shift(a1: int, a2: int):
    """Integer matrix Phi with |det Phi| = 1 and Phi(-a1, -a2) = (0, 1).

    Rows follow ``Phi(z1, z2) = (-a2*z1 + a1*z2, -x*z1 - y*z2)`` where
    (x, y) is a Bezout pair for (a1, a2); requires |gcd(a1, a2)| = 1.
    """
    g, x, y = bezout(a1, a2)
    if g != 1:
        raise DomainError(f"gcd({a1}, {a2}) = {g} != 1")
    return ((-a2, a1), (-x, -y))


# ---------------------------------------------------------------------------
# Root finding (simultaneous Aberth iteration)
# ---------------------------------------------------------------------------


def _poly_and_error(coeffs: np.ndarray, z: np.ndarray):
    """Horner values of p at z together with a running rounding-error bound."""
    vals = np.full(z.shape, coeffs[-1], dtype=complex)
    err = np.full(z.shape, abs(coeffs[-1]))
    az = np.abs(z)
    for c in coeffs[-2::-1]:
        vals = vals * z + c
        err = err * az + abs(c)
    return vals, err


def _derivative_values(coeffs: np.ndarray, z: np.ndarray):
    dcoeffs = coeffs[1:] * np.arange(1, len(coeffs))
    vals = np.full(z.shape, dcoeffs[-1], dtype=complex)
    for c in dcoeffs[-2::-1]:
        vals = vals * z + c
    return vals


def _aberth_pass(coeffs: np.ndarray, seeds: np.ndarray, max_iter: int):
    z = seeds.copy()
    d = len(coeffs) - 1
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        pv, bound = _poly_and_error(coeffs, z)
        done = np.abs(pv) <= 4.0 * eps * bound + 1e-300
        if done.all():
            return z, True
        dv = _derivative_values(coeffs, z)
        dv = np.where(dv == 0, eps, dv)
        newton = pv / dv
        with np.errstate(divide="ignore", invalid="ignore"):
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            sums = inv.sum(axis=1)
            denom = 1.0 - newton * sums
            small = np.abs(denom) < 1e-12
            step = np.where(small, newton, newton / np.where(small, 1.0, denom))
        step = np.where(np.isfinite(step), step, newton)
        z = np.where(done, z, z - step)
    return z, False


def roots(p, max_iter: int = 200) -> list:
    """All d roots of p (with repetition) by Aberth iteration plus polishing.

    Roots are returned in no particular order; the multiset is invariant
    under scaling the coefficient vector.  Raises
    :class:`~capzero.errors.ConvergenceError` if the residual target
    ``|p(root)| < 1e-10 * ||p||_inf * max(1, |root|)**d`` is not met after a
    perturbed restart.
    """
    if isinstance(p, IntPoly):
        cp = ComplexPoly(p.coeffs)
    elif isinstance(p, ComplexPoly):
        cp = p
    else:
        cp = ComplexPoly(tuple(p))
    d = cp.degree
    if d < 1:
        raise DomainError("root finding needs degree >= 1")

    coeffs = np.array(cp.coeffs, dtype=complex)
    scale = np.abs(coeffs).max()
    if not np.isfinite(scale) or scale == 0.0:
        raise ConditioningError("coefficients overflow double precision")
    coeffs = coeffs / scale

    if d == 1:
        return [complex(-coeffs[0] / coeffs[1])]

    lead = abs(coeffs[-1])
    if lead < 1e-300:
        raise ConditioningError("leading coefficient underflows after scaling")
    cauchy = 1.0 + max(abs(c) for c in coeffs[:-1]) / lead

    for attempt, (radius_factor, offset) in enumerate(((0.7, 0.43), (1.31, 1.17))):
        radius = radius_factor * cauchy
        angles = 2.0 * np.pi * (np.arange(d) + 0.5) / d + offset
        seeds = radius * np.exp(1j * angles)
        z, _ = _aberth_pass(coeffs, seeds, max_iter)
        # Newton polishing
        for _ in range(3):
            pv, _ = _poly_and_error(coeffs, z)
            dv = _derivative_values(coeffs, z)
            mask = dv != 0
            z = np.where(mask, z - pv / np.where(mask, dv, 1.0), z)
        pv, _ = _poly_and_error(coeffs, z)
        sup = np.abs(coeffs).max()
        tol = 1e-10 * sup * np.maximum(1.0, np.abs(z)) ** d
        if (np.abs(pv) < tol).all():
            return [complex(v) for v in z]
    raise ConvergenceError(
        f"root iteration failed for degree {d} after perturbed restart"
    )
