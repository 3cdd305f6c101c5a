import random

import pytest

from zetapair import (
    GroupElement,
    PointH3,
    apply_mobius,
    delta,
    enumerate_elements,
    height_lower_bound,
    trivial_pair,
)
from zetapair.errors import CuspDataError, DomainError
from zetapair.rings import GAUSSIAN, RATIONAL


def test_point_requires_positive_height():
    with pytest.raises(DomainError):
        PointH3(0.0, 0.0)
    with pytest.raises(DomainError):
        PointH3(0.0, -1.0)


def test_identity_acts_trivially():
    w = PointH3(0.25 + 0.5j, 1.75)
    out = apply_mobius(GroupElement.identity(GAUSSIAN), w)
    assert out.z == w.z and out.y == w.y


def test_parabolic_translation():
    g = GroupElement.from_ints(1, 5, 0, 1)
    w = PointH3(0.25, 1.5)
    out = apply_mobius(g, w)
    assert out.z == pytest.approx(5.25)
    assert out.y == pytest.approx(1.5)


def test_inversion_fixes_j():
    s = GroupElement(RATIONAL, ((0, 0), (-1, 0), (1, 0), (0, 0)))
    out = apply_mobius(s, PointH3(0.0, 1.0))
    assert abs(out.z) < 1e-15 and out.y == pytest.approx(1.0)


def test_delta_examples():
    w = PointH3(0.1 + 0.4j, 0.7)
    assert delta(w, w) == pytest.approx(1.0)
    assert delta(PointH3(0, 1), PointH3(0, 2)) == pytest.approx(1.25)
    # symmetry
    w2 = PointH3(-0.3 + 0.1j, 2.1)
    assert delta(w, w2) == pytest.approx(delta(w2, w))


def test_action_law_and_delta_invariance(psl2zi):
    random.seed(11)
    window = enumerate_elements(psl2zi, 2)
    for _ in range(500):
        g, h = random.choice(window), random.choice(window)
        w = PointH3(
            complex(random.uniform(-2, 2), random.uniform(-2, 2)),
            random.uniform(0.1, 4.0),
        )
        p1 = apply_mobius(g, apply_mobius(h, w))
        p2 = apply_mobius(g * h, w)
        assert abs(p1.z - p2.z) <= 1e-12 * (1.0 + abs(p2.z))
        assert abs(p1.y - p2.y) <= 1e-12 * p2.y
    for _ in range(100):
        g = random.choice(window)
        w1 = PointH3(complex(random.uniform(-2, 2), random.uniform(-2, 2)), random.uniform(0.1, 4))
        w2 = PointH3(complex(random.uniform(-2, 2), random.uniform(-2, 2)), random.uniform(0.1, 4))
        d0 = delta(w1, w2)
        d1 = delta(apply_mobius(g, w1), apply_mobius(g, w2))
        assert abs(d0 - d1) <= 1e-11 * d0


def test_2d_closure_is_exact(psl2z):
    w = PointH3(0.5, 1.0)
    for g in enumerate_elements(psl2z, 3):
        assert apply_mobius(g, w).z.imag == 0.0


def test_height_lower_bound_monotone_and_oracle(psl2z):
    pair = trivial_pair(psl2z)
    w = PointH3(0.5, 1.0)
    v2 = height_lower_bound(w, pair, 2)
    v3 = height_lower_bound(w, pair, 3)
    assert v3 >= v2 > 0

    # brute-force oracle: max y(g w) over all det-1 integer matrices with
    # |entries| <= 3 (single cusp at infinity, sigma = I)
    best = 0.0
    for a in range(-3, 4):
        for b in range(-3, 4):
            for c in range(-3, 4):
                for d in range(-3, 4):
                    if a * d - b * c != 1:
                        continue
                    g = GroupElement.from_ints(a, b, c, d)
                    best = max(best, apply_mobius(g, w).y)
    assert v3 == pytest.approx(best, rel=1e-12)


def test_height_dominates_y_at_high_points(psl2zi):
    pair = trivial_pair(psl2zi)
    w = PointH3(0.0, 37.0)
    assert height_lower_bound(w, pair, 1) >= 37.0


def test_height_requires_cusp_data(pair_2):
    class Bare:
        gamma = pair_2.gamma
        cusps = ()

    with pytest.raises(CuspDataError):
        height_lower_bound(PointH3(0, 1), Bare(), 2)
