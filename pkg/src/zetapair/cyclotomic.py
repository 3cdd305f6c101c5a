"""Exact arithmetic with roots of unity for the normalization constants.

Values live in Q[x]/(x^m - 1) with rational coefficients (circular
convolution product); two expressions represent the same complex number
at a primitive m-th root exactly when their difference is divisible by
the m-th cyclotomic polynomial, so zero testing reduces modulo Phi_m.
This avoids any floating point in the characteristic-polynomial and
eigenvalue-multiplicity checks.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Coefficients of Phi_m, ascending, exact."""
    if m < 1:
        raise DomainError("cyclotomic index must be >= 1")
    # x^m - 1 divided by the product of Phi_d over proper divisors d
    poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_divide_exact(num, den):
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        coef = num[k + len(den) - 1] / den[-1]
        out[k] = coef
        for i, dc in enumerate(den):
            num[k + i] -= coef * dc
    if any(c != 0 for c in num[: len(den) - 1]):
        raise DomainError("inexact polynomial division")  # pragma: no cover
    return out


class Cyclo:
    """An element of Q(zeta_m), stored as a vector mod x^m - 1."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs=None):
        self.m = m
        if coeffs is None:
            coeffs = [Fraction(0)] * m
        self.coeffs = list(coeffs)

    @classmethod
    def from_rational(cls, m, q):
        out = cls(m)
        out.coeffs[0] = Fraction(q)
        return out

    @classmethod
    def root(cls, m, k):
        """zeta_m^k."""
        out = cls(m)
        out.coeffs[k % m] = Fraction(1)
        return out

    @classmethod
    def from_angle(cls, m, angle):
        """Exact image of a UnitAngle exp(2 pi i t); t*m must be integral."""
        k = angle.t * m
        if k.denominator != 1:
            raise DomainError(f"angle {angle!r} does not live in Q(zeta_{m})")
        return cls.root(m, int(k))

    def copy(self):
        return Cyclo(self.m, self.coeffs)

    def __add__(self, other):
        self._chk(other)
        return Cyclo(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._chk(other)
        return Cyclo(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Cyclo(self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        self._chk(other)
        m = self.m
        out = [Fraction(0)] * m
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[(i + j) % m] += a * b
        return Cyclo(m, out)

    def scale(self, q):
        q = Fraction(q)
        return Cyclo(self.m, [a * q for a in self.coeffs])

    def _chk(self, other):
        if not isinstance(other, Cyclo) or other.m != self.m:
            raise DomainError("mixed cyclotomic moduli")

    def is_zero(self):
        """Exact zero test: remainder of reduction mod Phi_m vanishes."""
        phi = cyclotomic_polynomial(self.m)
        rem = list(self.coeffs)
        dphi = len(phi) - 1
        for k in range(len(rem) - 1, dphi - 1, -1):
            coef = rem[k] / phi[-1]
            if coef == 0:
                continue
            for i in range(dphi + 1):
                rem[k - dphi + i] -= coef * phi[i]
        return all(c == 0 for c in rem)

    def __eq__(self, other):
        return isinstance(other, Cyclo) and other.m == self.m and (self - other).is_zero()

    def to_complex(self):
        return sum(
            float(a) * cmath.exp(2j * cmath.pi * k / self.m)
            for k, a in enumerate(self.coeffs)
            if a != 0
        ) or 0j

    def __repr__(self):
        parts = [f"{a}*z^{k}" for k, a in enumerate(self.coeffs) if a != 0]
        return " + ".join(parts) if parts else "0"


def char_poly(mat, m):
    """Characteristic polynomial det(lambda I - M), ascending Cyclo
    coefficients, by the Faddeev-LeVerrier recursion (ring operations
    and division by integers only)."""
    n = len(mat)
    one = Cyclo.from_rational(m, 1)
    zero = Cyclo(m)

    def mat_mul(A, B):
        return [
            [
                sum((A[i][k] * B[k][j] for k in range(n)), zero)
                for j in range(n)
            ]
            for i in range(n)
        ]

    def mat_add_scalar(A, c):
        out = [[A[i][j].copy() for j in range(n)] for i in range(n)]
        for i in range(n):
            out[i][i] = out[i][i] + c
        return out

    def trace(A):
        return sum((A[i][i] for i in range(n)), zero)

    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    N = [[one.copy() if i == j else zero.copy() for j in range(n)] for i in range(n)]
    Mk = None
    for k in range(1, n + 1):
        Mk = mat_mul(mat, N)
        ck = trace(Mk).scale(Fraction(-1, k))
        coeffs[n - k] = ck
        N = mat_add_scalar(Mk, ck)
    return coeffs


def poly_mul(p, q, m):
    zero = Cyclo(m)
    out = [zero.copy() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def poly_eval_at_one(p, m):
    return sum(p, Cyclo(m))


def divide_by_lambda_minus_one(p, m):
    """(quotient, remainder) of p by (lambda - 1); remainder is a Cyclo."""
    q = [Cyclo(m) for _ in range(len(p) - 1)]
    carry = Cyclo(m)
    for k in range(len(p) - 1, 0, -1):
        carry = p[k] + carry
        q[k - 1] = carry
    rem = p[0] + carry
    return q, rem


def root_one_multiplicity(p, m, max_mult=None):
    """Multiplicity of lambda = 1 as a root of p, exactly."""
    mult = 0
    cur = p
    limit = max_mult if max_mult is not None else len(p)
    while len(cur) > 1 and mult < limit:
        quot, rem = divide_by_lambda_minus_one(cur, m)
        if not rem.is_zero():
            break
        cur = quot
        mult += 1
    return mult
