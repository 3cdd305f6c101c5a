"""One-dimensional unitary characters with exact root-of-unity values.

Character values are stored as exact rational angles (multiples of a
full turn), so products, inverses and triviality tests are integer
arithmetic; complex values are materialized only when a sum needs them.

A congruence character of level q evaluates [[a,b],[c,d]] through the
residue of d modulo q; the table on the unit group of the residue ring
is generated from the image of a chosen generator, which is the shape
the scenario files use.  The projective convention imposes chi(-I) = 1,
checked at construction.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .errors import CharacterError
from .rings import ResidueSystem, RingElem


class UnitAngle:
    """A point exp(2 pi i t) of the unit circle with t rational, exact."""

    __slots__ = ("t",)

    def __init__(self, t):
        object.__setattr__(self, "t", Fraction(t) % 1)

    def __setattr__(self, name, value):
        raise AttributeError("UnitAngle is immutable")

    def __mul__(self, other):
        return UnitAngle(self.t + other.t)

    def inverse(self):
        return UnitAngle(-self.t)

    def power(self, k):
        return UnitAngle(self.t * k)

    def conj(self):
        return self.inverse()

    def is_one(self):
        return self.t == 0

    def order(self):
        return self.t.denominator

    def value(self):
        if self.t == 0:
            return 1 + 0j
        if 2 * self.t == 1:
            return -1 + 0j
        if 4 * self.t == 1:
            return 1j
        if 4 * self.t == 3:
            return -1j
        return cmath.exp(2j * cmath.pi * float(self.t))

    def __eq__(self, other):
        return isinstance(other, UnitAngle) and self.t == other.t

    def __hash__(self):
        return hash(("UnitAngle", self.t))

    def __repr__(self):
        return f"e(2pi*{self.t})"


ONE = UnitAngle(0)


class CharacterRep:
    """A unitary character of the subgroup, trivial or congruence-type."""

    def __init__(self, kind, level=None, generator_angle=None):
        if kind not in ("trivial", "congruence-character"):
            raise CharacterError(f"unknown character kind {kind!r}")
        self.kind = kind
        self.level = level
        self.generator_angle = None
        self.residues = None
        self._table = None
        if kind == "congruence-character":
            if level is None or generator_angle is None:
                raise CharacterError("congruence character needs a level and a generator image")
            self.generator_angle = UnitAngle(generator_angle)
            self.residues = ResidueSystem(level)
            self._table = self._build_table()
            minus_one = self.residues.reduce(RingElem(level.ring, -1, 0))
            if not self._table[minus_one.key()].is_one():
                raise CharacterError(
                    "character is not projective-compatible: chi(-I) != 1"
                )

    def _build_table(self):
        units = self.residues.units()
        order = len(units)
        ang = self.generator_angle
        if (ang.t * order) % 1 != 0:
            raise CharacterError(
                f"generator image of order {ang.order()} does not divide "
                f"the unit group order {order}"
            )
        gen = self._find_generator(units, order)
        table = {}
        one = self.residues.reduce(RingElem(self.level.ring, 1, 0))
        cur = one
        for k in range(order):
            table[cur.key()] = ang.power(k)
            cur = self.residues.mul(cur, gen)
        if cur != one:  # pragma: no cover
            raise CharacterError("generator order bookkeeping failed")
        if len(table) != order:  # pragma: no cover
            raise CharacterError("unit group traversal incomplete")
        return table

    def _find_generator(self, units, order):
        one = self.residues.reduce(RingElem(self.level.ring, 1, 0))
        for cand in units:
            cur = cand
            k = 1
            while cur != one and k <= order:
                cur = self.residues.mul(cur, cand)
                k += 1
            if k == order:
                return cand
        raise CharacterError(
            f"unit group mod {self.level!r} is not cyclic; "
            "supply a character as a full table instead"
        )

    # -- evaluation -----------------------------------------------------
    def angle(self, g):
        """chi(g) as an exact UnitAngle; g must lie in the subgroup."""
        if self.kind == "trivial":
            return ONE
        d = g.entry(3)
        c = g.entry(2)
        if not self.level.divides(c):
            raise CharacterError(
                f"element {g!r} is outside the level-{self.level!r} subgroup"
            )
        key = self.residues.reduce(d).key()
        try:
            return self._table[key]
        except KeyError:  # pragma: no cover
            raise CharacterError(f"residue {key} is not a unit mod {self.level!r}")

    def value(self, g):
        return self.angle(g).value()

    def is_trivial_on(self, elements):
        return all(self.angle(g).is_one() for g in elements)

    def label(self):
        if self.kind == "trivial":
            return "trivial"
        return f"chi mod {self.level!r} (gen -> {self.generator_angle!r})"

    def __repr__(self):
        return f"CharacterRep({self.label()})"
