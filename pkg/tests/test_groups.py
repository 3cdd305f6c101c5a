import itertools
import random

import pytest

from zetapair import (
    GroupDescriptor,
    GroupElement,
    PointH3,
    apply_mobius,
    classify,
    delta,
    delta_ball,
    enumerate_elements,
)
from zetapair.errors import DomainError, RingError
from zetapair.groups import ELLIPTIC, HYPERBOLIC, IDENTITY_CLASS, PARABOLIC
from zetapair.rings import GAUSSIAN, RATIONAL


def test_determinant_enforced():
    with pytest.raises(DomainError):
        GroupElement.from_ints(1, 1, 1, 1)
    with pytest.raises(RingError):
        GroupElement(RATIONAL, ((0, 1), (0, 0), (0, 0), (0, -1)))


def test_projective_equality_and_hash():
    g = GroupElement.from_ints(2, 1, 1, 1)
    neg = GroupElement.from_ints(-2, -1, -1, -1)
    assert g == neg
    assert hash(g) == hash(neg)
    assert len({g, neg}) == 1


def test_inverse_and_power():
    g = GroupElement.from_ints(2, 1, 1, 1)
    assert g * g.inverse() == GroupElement.identity(RATIONAL)
    assert g.power(3) == g * g * g
    assert g.power(-2) == (g * g).inverse()


def test_classification_examples():
    assert classify(GroupElement.from_ints(1, 1, 0, 1)) == PARABOLIC
    assert classify(GroupElement.from_ints(2, 1, 1, 1)) == HYPERBOLIC
    assert classify(GroupElement(RATIONAL, ((0, 0), (-1, 0), (1, 0), (0, 0)))) == ELLIPTIC
    assert classify(GroupElement.identity(GAUSSIAN)) == IDENTITY_CLASS
    # non-real trace 2+i: [[1+i, 1], [i, 1]], det (1+i) - i = 1
    g = GroupElement(GAUSSIAN, ((1, 1), (1, 0), (0, 1), (1, 0)))
    assert classify(g) == HYPERBOLIC
    # parabolic boundary at trace -2
    assert classify(GroupElement.from_ints(-1, 1, 0, -1)) == PARABOLIC


def test_classify_conjugation_invariant(psl2zi):
    random.seed(3)
    window = enumerate_elements(psl2zi, 2)
    for _ in range(300):
        g, h = random.choice(window), random.choice(window)
        assert classify(h * g * h.inverse()) == classify(g)


def test_enumeration_b1_matches_brute_force(psl2z):
    window = enumerate_elements(psl2z, 1)
    seen = set()
    for a, b, c, d in itertools.product((-1, 0, 1), repeat=4):
        if a * d - b * c == 1:
            seen.add(GroupElement.from_ints(a, b, c, d).abcd)
    assert len(window) == len(seen)
    assert {g.abcd for g in window} == seen


def test_enumeration_contains_identity_and_inverses(psl2zi):
    for bound in (1, 2, 3):
        window = enumerate_elements(psl2zi, bound)
        keys = {g.abcd for g in window}
        assert GroupElement.identity(GAUSSIAN).abcd in keys
        assert all(g.inverse().abcd in keys for g in window)
        cap = bound * bound
        assert all(g.max_entry_norm() <= cap for g in window)


def test_enumeration_deterministic_order(psl2z):
    w1 = enumerate_elements(psl2z, 2)
    w2 = enumerate_elements(psl2z, 2)
    assert [g.abcd for g in w1] == [g.abcd for g in w2]
    assert [g.abcd for g in w1] == sorted(g.abcd for g in w1)


def test_hecke_membership(gamma0_2, psl2z):
    t = GroupElement.from_ints(1, 1, 0, 1)
    s = GroupElement(RATIONAL, ((0, 0), (-1, 0), (1, 0), (0, 0)))
    assert gamma0_2.contains(t)
    assert not gamma0_2.contains(s)
    assert psl2z.contains(s)
    window = enumerate_elements(gamma0_2, 3)
    assert all(g.abcd[2][0] % 2 == 0 for g in window)


def test_delta_ball_complete_against_window(psl2zi, psl2z):
    for desc, w in ((psl2zi, PointH3(0.3 + 0.2j, 1.1)), (psl2z, PointH3(0.4, 0.9))):
        cutoff = 9.0
        ball = {g.abcd: dv for g, dv in delta_ball(desc, w, cutoff)}
        for g in enumerate_elements(desc, 4):
            dv = delta(apply_mobius(g, w), w)
            if dv <= cutoff:
                assert g.abcd in ball
                assert ball[g.abcd] == pytest.approx(dv)
        # and the ball itself only holds members within the cutoff
        for key, dv in ball.items():
            assert dv <= cutoff
            g = GroupElement(desc.ring, key)
            assert desc.contains(g)


def test_delta_ball_respects_membership(gamma0_1pi):
    w = PointH3(0.3 + 0.2j, 1.1)
    for g, dv in delta_ball(gamma0_1pi, w, 8.0):
        assert gamma0_1pi.contains(g)


def test_validate_point_2d(psl2z, psl2zi):
    psl2z.validate_point(PointH3(0.5, 1.0))
    with pytest.raises(DomainError):
        psl2z.validate_point(PointH3(0.5 + 0.1j, 1.0))
    psl2zi.validate_point(PointH3(0.5 + 0.1j, 1.0))
