import pytest

from zetapair.errors import RingError
from zetapair.rings import (
    GAUSSIAN,
    RATIONAL,
    ResidueSystem,
    RingElem,
    elements_of_norm_at_most,
    gauss_gcd,
    parse_ring_literal,
)


def gi(re, im=0):
    return RingElem(GAUSSIAN, re, im)


def test_basic_arithmetic_exact():
    a, b = gi(3, 2), gi(-1, 4)
    assert a + b == gi(2, 6)
    assert a - b == gi(4, -2)
    assert a * b == gi(-3 - 8, 12 - 2)
    assert a.conj() == gi(3, -2)
    assert a.norm() == 13
    assert (-a) == gi(-3, -2)


def test_rational_ring_rejects_imaginary():
    with pytest.raises(RingError):
        RingElem(RATIONAL, 1, 2)


def test_mixed_ring_arithmetic_rejected():
    with pytest.raises(RingError):
        RingElem(RATIONAL, 1) + gi(1)


def test_divides_and_exact_div():
    q = gi(2, 1)
    x = q * gi(3, -4)
    assert q.divides(x)
    assert x.exact_div(q) == gi(3, -4)
    assert not q.divides(gi(1, 1))
    with pytest.raises(RingError):
        gi(1, 1).exact_div(q)


def test_parse_literals():
    assert parse_ring_literal("7", RATIONAL) == RingElem(RATIONAL, 7)
    assert parse_ring_literal("-3", GAUSSIAN) == gi(-3)
    assert parse_ring_literal("1+1i", GAUSSIAN) == gi(1, 1)
    assert parse_ring_literal("2-3i", GAUSSIAN) == gi(2, -3)
    assert parse_ring_literal("i", GAUSSIAN) == gi(0, 1)
    assert parse_ring_literal("-i", GAUSSIAN) == gi(0, -1)
    with pytest.raises(RingError):
        parse_ring_literal("1+1i", RATIONAL)


def test_gauss_gcd_euclidean():
    # cofactors have prime norms 29 and 17, hence are coprime
    a = gi(2, 1) * gi(5, 2)
    b = gi(2, 1) * gi(1, -4)
    g = gauss_gcd(a, b)
    assert g.divides(a) and g.divides(b)
    assert g.norm() == gi(2, 1).norm()  # gcd up to units


def test_residue_system_sizes_and_uniqueness():
    for q in (gi(1, 1), gi(2, 1), gi(2, 0), gi(3, 0), gi(2, 2)):
        rs = ResidueSystem(q)
        reps = rs.residues()
        assert len(reps) == q.norm()
        # reduce is idempotent and lands in the same set
        keys = {r.key() for r in reps}
        assert len(keys) == q.norm()
        for r in reps:
            assert rs.reduce(r).key() in keys
        # reduction respects the ideal: x and x + q*t reduce identically
        for t in (gi(1, 0), gi(0, 1), gi(2, -3)):
            x = gi(5, -7)
            assert rs.reduce(x) == rs.reduce(x + q * t)


def test_residue_field_mod_2_plus_i():
    rs = ResidueSystem(gi(2, 1))
    assert rs.size == 5
    assert rs.reduce(gi(0, 1)) == gi(3)  # i = 3 mod (2+i)
    units = rs.units()
    assert len(units) == 4


def test_rational_residues():
    rs = ResidueSystem(RingElem(RATIONAL, 9))
    assert rs.size == 9
    assert len(rs.units()) == 6
    assert rs.reduce(RingElem(RATIONAL, -1)) == RingElem(RATIONAL, 8)


def test_norm_ball_enumeration():
    ball = elements_of_norm_at_most(GAUSSIAN, 2)
    # 0, 4 units, 4 elements of norm 2
    assert len(ball) == 9
    assert all(x.norm() <= 2 for x in ball)
    line = elements_of_norm_at_most(RATIONAL, 9)
    assert [x.re for x in line] == list(range(-3, 4))
