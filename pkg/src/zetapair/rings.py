"""Exact arithmetic in the rational and Gaussian integers.

Everything downstream (group elements, membership oracles, residue
characters) is built on :class:`RingElem`, a ring-tagged pair of Python
integers.  Python's arbitrary-precision ints make every operation exact;
there is no overflow anywhere in the package.

The Gaussian side also provides a Euclidean gcd, canonical residues
modulo a principal ideal (via a Hermite-normal-form fundamental domain),
and the unit group of the residue ring.  These back the congruence
membership oracle and the congruence-character tables.
"""

from __future__ import annotations

from math import gcd as _int_gcd

RATIONAL = "rational-integers"
GAUSSIAN = "gaussian-integers"

from .errors import RingError


class RingElem:
    """An element of Z or Z[i], stored as exact integer components.

    ``ring`` is one of :data:`RATIONAL` / :data:`GAUSSIAN`.  Rational
    elements keep ``im == 0`` as an invariant.  Instances are immutable
    and hashable.
    """

    __slots__ = ("ring", "re", "im")

    def __init__(self, ring, re, im=0):
        if ring not in (RATIONAL, GAUSSIAN):
            raise RingError(f"unknown ring tag {ring!r}")
        if ring == RATIONAL and im != 0:
            raise RingError("rational-integer element with nonzero imaginary part")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls(ring, 0, 0)

    @classmethod
    def one(cls, ring):
        return cls(ring, 1, 0)

    # -- ring operations ----------------------------------------------
    def _check(self, other):
        if not isinstance(other, RingElem):
            raise RingError(f"cannot combine RingElem with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingError("mixed-ring arithmetic")

    def __add__(self, other):
        self._check(other)
        return RingElem(self.ring, self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        self._check(other)
        return RingElem(self.ring, self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        self._check(other)
        return RingElem(
            self.ring,
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return RingElem(self.ring, -self.re, -self.im)

    def conj(self):
        return RingElem(self.ring, self.re, -self.im)

    def norm(self):
        """x * conj(x) as a plain nonnegative int."""
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_unit(self):
        return self.norm() == 1

    def divides(self, other):
        """Exact divisibility test self | other."""
        self._check(other)
        if self.is_zero():
            return other.is_zero()
        n = self.norm()
        prod = other * self.conj()
        return prod.re % n == 0 and prod.im % n == 0

    def exact_div(self, other):
        """Return self / other, raising RingError if not exact."""
        self._check(other)
        if other.is_zero():
            raise RingError("division by zero")
        n = other.norm()
        prod = self * other.conj()
        if prod.re % n or prod.im % n:
            raise RingError(f"{other} does not divide {self}")
        return RingElem(self.ring, prod.re // n, prod.im // n)

    # -- comparisons / hashing ----------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, RingElem)
            and self.ring == other.ring
            and self.re == other.re
            and self.im == other.im
        )

    def __hash__(self):
        return hash((self.ring, self.re, self.im))

    def key(self):
        """Deterministic sort key."""
        return (self.re, self.im)

    # -- conversions ---------------------------------------------------
    def to_complex(self):
        return complex(self.re, self.im)

    def __repr__(self):
        if self.ring == RATIONAL:
            return str(self.re)
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def parse_ring_literal(text, ring):
    """Parse "7", "-3", "1+1i", "2-3i" into a RingElem of the given ring.

    Gaussian literals use the trailing-i convention of the scenario files
    ("a+bi"); a bare integer is accepted in both rings.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise RingError("empty ring literal")
    if "i" not in s:
        return RingElem(ring, int(s), 0)
    if ring != GAUSSIAN:
        raise RingError(f"Gaussian literal {text!r} in a rational-integer context")
    body = s[:-1] if s.endswith("i") else None
    if body is None:
        raise RingError(f"malformed Gaussian literal {text!r}")
    # split off the real part: find the sign that separates re from im
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-":
            re_part, im_part = body[:pos], body[pos:]
            break
    else:
        re_part, im_part = "0", body
    if im_part in ("", "+"):
        im = 1
    elif im_part == "-":
        im = -1
    else:
        im = int(im_part)
    return RingElem(GAUSSIAN, int(re_part) if re_part else 0, im)


def gauss_gcd(a, b):
    """Euclidean gcd in Z[i] (defined up to units), exact."""
    a._check(b)
    while not b.is_zero():
        # nearest-integer Gaussian division
        n = b.norm()
        prod = a * b.conj()
        q_re = (2 * prod.re + n) // (2 * n)
        q_im = (2 * prod.im + n) // (2 * n)
        q = RingElem(a.ring, q_re, q_im)
        a, b = b, a - q * b
    return a


def elements_of_norm_at_most(ring, bound):
    """All ring elements x with norm(x) <= bound, in deterministic order."""
    out = []
    if ring == RATIONAL:
        r = int(bound**0.5)
        while (r + 1) * (r + 1) <= bound:
            r += 1
        while r * r > bound:
            r -= 1
        for x in range(-r, r + 1):
            out.append(RingElem(ring, x, 0))
    else:
        r = 1
        while r * r <= bound:
            r += 1
        for x in range(-r, r + 1):
            for y in range(-r, r + 1):
                if x * x + y * y <= bound:
                    out.append(RingElem(ring, x, y))
    out.sort(key=RingElem.key)
    return out


class ResidueSystem:
    """Canonical residues of the ring modulo a principal ideal (q).

    The ideal lattice q*Z[i] in Z^2 is put in Hermite normal form, giving
    a rectangular fundamental domain of exactly norm(q) points; reduction
    into that box yields a unique representative per class, so residues
    can be used directly as dict keys.  The rational case degenerates to
    ordinary ``% q``.
    """

    def __init__(self, q):
        if q.is_zero():
            raise RingError("zero modulus")
        self.q = q
        self.ring = q.ring
        if self.ring == RATIONAL:
            self.size = abs(q.re)
        else:
            a, b = q.re, q.im
            n = q.norm()
            g = _int_gcd(a, b)
            # sublattice of pure-real vectors has generator (n/g, 0);
            # a vector with minimal positive imaginary part g is
            # u*(a,b) + v*(-b,a) with u*b + v*a = g.
            u, v = _bezout(b, a, g)
            self._g = g
            self._real_period = n // g
            self._c0 = u * a - v * b
            self.size = n

    def reduce(self, x):
        """Canonical representative of x mod (q)."""
        if x.ring != self.ring:
            raise RingError("mixed-ring residue reduction")
        if self.ring == RATIONAL:
            return RingElem(self.ring, x.re % self.size, 0)
        t = x.im // self._g
        re = x.re - t * self._c0
        im = x.im - t * self._g
        re %= self._real_period
        return RingElem(self.ring, re, im)

    def residues(self):
        """All canonical representatives, deterministic order."""
        if self.ring == RATIONAL:
            return [RingElem(self.ring, r, 0) for r in range(self.size)]
        out = []
        for im in range(self._g):
            for re in range(self._real_period):
                out.append(RingElem(self.ring, re, im))
        return out

    def is_unit(self, x):
        """Is x invertible modulo (q)?"""
        if self.ring == RATIONAL:
            return _int_gcd(x.re, self.size) == 1
        return gauss_gcd(x, self.q).is_unit()

    def units(self):
        return [r for r in self.residues() if self.is_unit(r)]

    def mul(self, x, y):
        return self.reduce(x * y)


def _bezout(b, a, g):
    """(u, v) with u*b + v*a = g = gcd(a, b)."""
    old_r, r = b, a
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_u, u = u, old_u - qq * u
        old_v, v = v, old_v - qq * v
    if old_r == g:
        return old_u, old_v
    if old_r == -g:
        return -old_u, -old_v
    raise RingError("bezout failure")  # pragma: no cover
