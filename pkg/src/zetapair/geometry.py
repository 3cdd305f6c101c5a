"""Upper half-space geometry: points, the Moebius action, and delta.

A point of H^3 is (z, y) with z the complex horizontal coordinate and
y > 0 the height.  The half-plane H^2 is the slice im(z) = 0, acted on
by real matrices; no separate 2-D code path exists, the real case is
literally the restriction of the 3-D formulas.

delta(w, w') is cosh of hyperbolic distance,

    delta = ||w - w'||^2 / (2 y y') + 1,   ||.|| Euclidean on R^2x(0,oo),

the point-pair invariant every kernel in the package is built from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CuspDataError, DomainError


@dataclass(frozen=True)
class PointH3:
    """Point (z, y) of upper half-space, y > 0."""

    z: complex
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError(f"height must be positive, got {self.y}")
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "y", float(self.y))

    def is_planar(self, tol=0.0):
        return abs(self.z.imag) <= tol


def apply_mobius(g, w):
    """Act by a determinant-1 matrix on a point of H^3.

    With g = [[a,b],[c,d]] complex and w = (z,y):

        den = |cz+d|^2 + |c|^2 y^2
        z'  = ((az+b) conj(cz+d) + a conj(c) y^2) / den
        y'  = y / den

    This is the standard isometric action (quaternion multiplication
    written out); real matrices preserve the im(z)=0 slice exactly.
    """
    a, b, c, d = g.complex_entries()
    z, y = w.z, w.y
    czd = c * z + d
    den = czd.real * czd.real + czd.imag * czd.imag + (c.real * c.real + c.imag * c.imag) * y * y
    znum = (a * z + b) * czd.conjugate() + a * c.conjugate() * (y * y)
    return PointH3(znum / den, y / den)


def delta(w, wp):
    """Point-pair invariant cosh d(w, w') >= 1."""
    dz = w.z - wp.z
    dy = w.y - wp.y
    return (dz.real * dz.real + dz.imag * dz.imag + dy * dy) / (2.0 * w.y * wp.y) + 1.0


def height_lower_bound(w, pair, entry_bound):
    """Lower bound for the invariant height y_Gamma(w).

    Maximizes y(sigma_j^{-1} gamma w) over the cusps j of the pair's
    subgroup and over the finitely many gamma in the enumeration window
    with the given entry bound.  Monotone nondecreasing in the bound.
    """
    cusps = getattr(pair, "cusps", None)
    if not cusps:
        raise CuspDataError("pair carries no cusp data")
    from .groups import enumerate_elements

    window = enumerate_elements(pair.gamma, entry_bound)
    best = 0.0
    for cusp in cusps:
        sigma_inv = cusp.sigma.inverse()
        for gamma in window:
            best = max(best, apply_mobius(sigma_inv * gamma, w).y)
    return best
