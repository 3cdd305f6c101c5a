"""Projective determinant-1 matrices over Z and Z[i], and finite windows.

Elements are PSL classes: g and -g are the same element, realized by a
canonical sign rule (first nonzero entry in reading order has positive
real part, ties broken by positive imaginary part).  All arithmetic is
exact; the determinant-1 invariant is checked at construction.

Two finite windows into the infinite groups are provided:

* ``enumerate_elements(desc, B)`` -- every projective member whose four
  entries all have norm <= B^2, closed under inverse, cached,
  deterministically ordered.
* ``delta_ball(desc, w, D)`` -- every member moving the base point w by
  point-pair invariant at most D.  This window is provably complete (the
  bounds on the matrix entries are derived from delta <= D, not guessed),
  which is what makes matched-truncation identities exact at finite scale.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DomainError, GroupConstructionError, RingError
from .geometry import PointH3, apply_mobius, delta
from .rings import GAUSSIAN, RATIONAL, RingElem, elements_of_norm_at_most

IDENTITY_CLASS = "identity"
HYPERBOLIC = "hyperbolic"
PARABOLIC = "parabolic"
ELLIPTIC = "elliptic"


def _canonical_sign(entries):
    """Flip the global sign so the first nonzero entry is 'positive'."""
    for re, im in entries:
        if re or im:
            if re > 0 or (re == 0 and im > 0):
                return entries
            return tuple((-re, -im) for re, im in entries)
    raise DomainError("zero matrix cannot lie in SL(2)")


class GroupElement:
    """A determinant-1 2x2 matrix modulo +-I, with exact entries."""

    __slots__ = ("ring", "abcd", "_cx")

    def __init__(self, ring, abcd, _checked=False):
        """abcd: tuple of four (re, im) int pairs in reading order."""
        abcd = _canonical_sign(tuple((int(r), int(i)) for r, i in abcd))
        if not _checked:
            (ar, ai), (br, bi), (cr, ci), (dr, di) = abcd
            det_re = ar * dr - ai * di - (br * cr - bi * ci)
            det_im = ar * di + ai * dr - (br * ci + bi * cr)
            if det_re != 1 or det_im != 0:
                raise DomainError(f"determinant is not 1: {abcd}")
            if ring == RATIONAL and (ai or bi or ci or di):
                raise RingError("non-real entry in a rational-integer matrix")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "abcd", abcd)
        object.__setattr__(self, "_cx", None)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    @classmethod
    def from_ring_elems(cls, a, b, c, d):
        ring = a.ring
        return cls(ring, ((a.re, a.im), (b.re, b.im), (c.re, c.im), (d.re, d.im)))

    @classmethod
    def from_ints(cls, a, b, c, d, ring=RATIONAL):
        """Convenience constructor; ints or (re, im) pairs."""
        pairs = tuple(e if isinstance(e, tuple) else (e, 0) for e in (a, b, c, d))
        return cls(ring, pairs)

    @classmethod
    def identity(cls, ring):
        return cls(ring, ((1, 0), (0, 0), (0, 0), (1, 0)), _checked=True)

    # -- accessors -----------------------------------------------------
    def entries(self):
        return tuple(RingElem(self.ring, re, im) for re, im in self.abcd)

    def entry(self, k):
        re, im = self.abcd[k]
        return RingElem(self.ring, re, im)

    def complex_entries(self):
        cx = self._cx
        if cx is None:
            cx = tuple(complex(re, im) for re, im in self.abcd)
            object.__setattr__(self, "_cx", cx)
        return cx

    def trace(self):
        """Trace of the canonical representative (exact)."""
        (ar, ai), _, _, (dr, di) = self.abcd
        return RingElem(self.ring, ar + dr, ai + di)

    def trace_key(self):
        """Sign-normalized trace, a projective class invariant."""
        (ar, ai), _, _, (dr, di) = self.abcd
        re, im = ar + dr, ai + di
        if re < 0 or (re == 0 and im < 0):
            re, im = -re, -im
        return (re, im)

    def max_entry_norm(self):
        return max(re * re + im * im for re, im in self.abcd)

    # -- group operations ----------------------------------------------
    def __mul__(self, other):
        if other.ring != self.ring:
            raise RingError("mixed-ring multiplication")
        (ar, ai), (br, bi), (cr, ci), (dr, di) = self.abcd
        (er, ei), (fr, fi), (gr, gi), (hr, hi) = other.abcd
        return GroupElement(
            self.ring,
            (
                (ar * er - ai * ei + br * gr - bi * gi, ar * ei + ai * er + br * gi + bi * gr),
                (ar * fr - ai * fi + br * hr - bi * hi, ar * fi + ai * fr + br * hi + bi * hr),
                (cr * er - ci * ei + dr * gr - di * gi, cr * ei + ci * er + dr * gi + di * gr),
                (cr * fr - ci * fi + dr * hr - di * hi, cr * fi + ci * fr + dr * hi + di * hr),
            ),
            _checked=True,
        )

    def inverse(self):
        a, b, c, d = self.abcd
        return GroupElement(
            self.ring,
            (d, (-b[0], -b[1]), (-c[0], -c[1]), a),
            _checked=True,
        )

    def conjugate_by(self, h):
        """h * self * h^{-1}."""
        return h * self * h.inverse()

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        out = GroupElement.identity(self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self):
        return self.abcd == ((1, 0), (0, 0), (0, 0), (1, 0))

    # -- comparisons ----------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.ring == other.ring
            and self.abcd == other.abcd
        )

    def __hash__(self):
        return hash(self.abcd)

    def key(self):
        """Deterministic total order on canonical representatives."""
        return self.abcd

    def __repr__(self):
        a, b, c, d = (RingElem(self.ring, re, im) for re, im in self.abcd)
        return f"[[{a},{b}],[{c},{d}]]"


def classify(g):
    """identity / parabolic / elliptic / hyperbolic, by exact trace.

    Parabolic means tr = +-2 with g != +-I; elliptic means tr real in the
    open interval (-2, 2); everything else (tr outside [-2, 2], real or
    not) is hyperbolic.  No loxodromic distinction is made.
    """
    if g.is_identity():
        return IDENTITY_CLASS
    re, im = g.trace_key()
    if im != 0:
        return HYPERBOLIC
    if re == 2:
        return PARABOLIC
    if re < 2:
        return ELLIPTIC
    return HYPERBOLIC


class GroupDescriptor:
    """Ambient group plus optional Hecke congruence condition.

    ambient: "sl2z" (2-D mode, rational integers) or "sl2zi" (3-D mode,
    Gaussian integers).  subgroup: "full", or "hecke" with a level q, in
    which case membership means c = 0 mod q.
    """

    __slots__ = ("ambient", "subgroup", "level")

    def __init__(self, ambient, subgroup="full", level=None):
        if ambient not in ("sl2z", "sl2zi"):
            raise GroupConstructionError(f"unknown ambient group {ambient!r}")
        if subgroup not in ("full", "hecke"):
            raise GroupConstructionError(f"unknown subgroup tag {subgroup!r}")
        if subgroup == "hecke":
            if level is None or level.ring != self.ring_of(ambient):
                raise GroupConstructionError("hecke subgroup needs a level in the ambient ring")
            if level.is_zero() or level.is_unit():
                raise GroupConstructionError("hecke level must be a nonzero nonunit")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "subgroup", subgroup)
        object.__setattr__(self, "level", level)

    def __setattr__(self, name, value):
        raise AttributeError("GroupDescriptor is immutable")

    @staticmethod
    def ring_of(ambient):
        return RATIONAL if ambient == "sl2z" else GAUSSIAN

    @property
    def ring(self):
        return self.ring_of(self.ambient)

    @property
    def mode_2d(self):
        return self.ambient == "sl2z"

    def ambient_descriptor(self):
        return GroupDescriptor(self.ambient)

    def contains(self, g):
        if g.ring != self.ring:
            return False
        if self.subgroup == "full":
            return True
        c = g.entry(2)
        return self.level.divides(c)

    def validate_point(self, w, tol=0.0):
        if self.mode_2d and not w.is_planar(tol):
            raise DomainError("2-D mode requires im(z) = 0 probe points")
        return w

    def generators(self):
        """Classical generator set of the ambient group."""
        ring = self.ring
        T = GroupElement.from_ints(1, 1, 0, 1, ring)
        S = GroupElement(ring, ((0, 0), (-1, 0), (1, 0), (0, 0)))
        if self.ambient == "sl2z":
            return (T, S)
        Ti = GroupElement(ring, ((1, 0), (0, 1), (0, 0), (1, 0)))
        U = GroupElement(ring, ((0, 1), (0, 0), (0, 0), (0, -1)))
        return (T, Ti, S, U)

    def translation_lattice_basis(self):
        """Generators of the horizontal translation lattice at infinity."""
        if self.ambient == "sl2z":
            return (RingElem(RATIONAL, 1),)
        return (RingElem(GAUSSIAN, 1, 0), RingElem(GAUSSIAN, 0, 1))

    def infinity_stabilizer_generators(self):
        """Generators of the projective stabilizer of the cusp at infinity
        in the *ambient* group: translations, plus the diagonal unit in
        the Gaussian case."""
        ring = self.ring
        gens = [
            GroupElement(ring, ((1, 0), (lam.re, lam.im), (0, 0), (1, 0)), _checked=True)
            for lam in self.translation_lattice_basis()
        ]
        if self.ambient == "sl2zi":
            gens.append(GroupElement(ring, ((0, 1), (0, 0), (0, 0), (0, -1))))
        return tuple(gens)

    def cache_key(self):
        lvl = None if self.level is None else (self.level.re, self.level.im)
        return (self.ambient, self.subgroup, lvl)

    def label(self):
        if self.subgroup == "full":
            return f"PSL2({'Z' if self.ambient == 'sl2z' else 'Z[i]'})"
        return f"Gamma0({self.level!r})<{'PSL2(Z)' if self.ambient == 'sl2z' else 'PSL2(Z[i])'}"

    def __eq__(self, other):
        return isinstance(other, GroupDescriptor) and self.cache_key() == other.cache_key()

    def __hash__(self):
        return hash(self.cache_key())

    def __repr__(self):
        return self.label()


# ---------------------------------------------------------------------
# finite windows
# ---------------------------------------------------------------------

@lru_cache(maxsize=64)
def _ambient_window(ambient, bound):
    """All projective ambient elements with every entry norm <= bound^2."""
    ring = GroupDescriptor.ring_of(ambient)
    cap = bound * bound
    ring_ball = elements_of_norm_at_most(ring, cap)
    nonzero_ball = [x for x in ring_ball if not x.is_zero()]
    seen = set()
    out = []

    def emit(a, b, c, d):
        g = GroupElement.from_ring_elems(a, b, c, d)
        if g.abcd not in seen:
            seen.add(g.abcd)
            out.append(g)

    zero = RingElem.zero(ring)
    for a in ring_ball:
        for d in ring_ball:
            m = a * d - RingElem.one(ring)
            if m.is_zero():
                # b*c = 0: either b = 0 (c free) or c = 0 (b free)
                for x in ring_ball:
                    emit(a, zero, x, d)
                    emit(a, x, zero, d)
            else:
                nm = m.norm()
                for b in nonzero_ball:
                    nb = b.norm()
                    if nb * cap < nm:
                        continue
                    if not b.divides(m):
                        continue
                    c = m.exact_div(b)
                    if c.norm() <= cap:
                        emit(a, b, c, d)
    out.sort(key=GroupElement.key)
    return tuple(out)


def enumerate_elements(desc, bound):
    """Finite window of desc with entry norms <= bound^2, sorted, cached.

    Contains the identity and is closed under inverse for every bound >= 1.
    """
    if bound < 1:
        raise DomainError("entry bound must be >= 1")
    window = _ambient_window(desc.ambient, int(bound))
    if desc.subgroup == "full":
        return list(window)
    return [g for g in window if desc.contains(g)]


def _ring_points_in_disc(ring, center, radius):
    """Ring elements within euclidean distance radius of a complex center."""
    out = []
    if radius < 0:
        return out
    cr, ci = center.real, center.imag
    r2 = radius * radius + 1e-9
    lo_re = int(cr - radius) - 1
    hi_re = int(cr + radius) + 1
    if ring == RATIONAL:
        if abs(ci) > radius + 1e-9:
            return out
        for x in range(lo_re, hi_re + 1):
            if (x - cr) ** 2 + ci * ci <= r2:
                out.append((x, 0))
        return out
    lo_im = int(ci - radius) - 1
    hi_im = int(ci + radius) + 1
    for x in range(lo_re, hi_re + 1):
        dx2 = (x - cr) ** 2
        for y in range(lo_im, hi_im + 1):
            if dx2 + (y - ci) ** 2 <= r2:
                out.append((x, y))
    return out


def delta_ball(desc, w, cutoff):
    """All g in the group with delta(g w, w) <= cutoff, with their deltas.

    Returns a list of (g, delta) sorted by element key.  The enumeration
    is complete: delta <= D forces |c| <= sqrt(2D)/y, |cz+d| <= sqrt(2D),
    |a - cz| <= sqrt(2D) (apply the same bound to g^{-1}), and b is then
    determined by the determinant; the c = 0 stratum is a disc of
    translations twisted by a unit.  Identity is included (delta = 1).
    """
    if cutoff < 1.0:
        return []
    ring = desc.ring
    z, y = w.z, w.y
    s2d = (2.0 * cutoff) ** 0.5
    out = []
    seen = set()

    def try_entries(a, b, c, d):
        # determinant check in raw ints
        det_re = a[0] * d[0] - a[1] * d[1] - (b[0] * c[0] - b[1] * c[1])
        det_im = a[0] * d[1] + a[1] * d[0] - (b[0] * c[1] + b[1] * c[0])
        if det_re != 1 or det_im != 0:
            return
        g = GroupElement(ring, (a, b, c, d), _checked=True)
        if g.abcd in seen:
            return
        if not desc.contains(g):
            return
        dval = delta(apply_mobius(g, w), w)
        if dval <= cutoff:
            seen.add(g.abcd)
            out.append((g, dval))

    # c = 0 stratum: unit diagonal (projectively a in {1} or {1, i})
    units = [(1, 0)] if ring == RATIONAL else [(1, 0), (0, 1)]
    rad_b = (2.0 * max(cutoff - 1.0, 0.0)) ** 0.5 * y
    for ur, ui in units:
        a = complex(ur, ui)
        ainv = a.conjugate()  # |a| = 1
        center = ainv * (z - a * a * z)
        dinv = (ur, -ui) if (ur, ui) != (1, 0) else (1, 0)
        for b in _ring_points_in_disc(ring, center, rad_b + 1e-6):
            try_entries((ur, ui), b, (0, 0), dinv)

    # c != 0 stratum
    rad_c = s2d / y
    for c in _ring_points_in_disc(ring, 0j, rad_c + 1e-6):
        if c == (0, 0):
            continue
        cc = complex(*c)
        nc = c[0] * c[0] + c[1] * c[1]
        for d in _ring_points_in_disc(ring, -cc * z, s2d + 1e-6):
            for a in _ring_points_in_disc(ring, cc * z, s2d + 1e-6):
                # b = (a d - 1) / c must be exact
                pr_re = a[0] * d[0] - a[1] * d[1] - 1
                pr_im = a[0] * d[1] + a[1] * d[0]
                # multiply by conj(c), then divide by |c|^2
                num_re = pr_re * c[0] + pr_im * c[1]
                num_im = pr_im * c[0] - pr_re * c[1]
                if num_re % nc or num_im % nc:
                    continue
                try_entries(a, (num_re // nc, num_im // nc), c, d)

    out.sort(key=lambda item: item[0].key())
    return out
