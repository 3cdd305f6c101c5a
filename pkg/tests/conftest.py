import pytest

from zetapair import (
    CharacterRep,
    GroupDescriptor,
    InducedRep,
    RingElem,
    TruncationPolicy,
    coset_reps,
    parse_ring_literal,
    singular_space,
)
from zetapair.rings import GAUSSIAN, RATIONAL


@pytest.fixture(scope="session")
def psl2z():
    return GroupDescriptor("sl2z")


@pytest.fixture(scope="session")
def psl2zi():
    return GroupDescriptor("sl2zi")


@pytest.fixture(scope="session")
def gamma0_2():
    return GroupDescriptor("sl2z", "hecke", RingElem(RATIONAL, 2))


@pytest.fixture(scope="session")
def gamma0_9():
    return GroupDescriptor("sl2z", "hecke", RingElem(RATIONAL, 9))


@pytest.fixture(scope="session")
def gamma0_1pi():
    return GroupDescriptor("sl2zi", "hecke", parse_ring_literal("1+1i", GAUSSIAN))


@pytest.fixture(scope="session")
def gamma0_2pi():
    return GroupDescriptor("sl2zi", "hecke", parse_ring_literal("2+1i", GAUSSIAN))


@pytest.fixture(scope="session")
def pair_2(gamma0_2):
    return coset_reps(gamma0_2)


@pytest.fixture(scope="session")
def pair_9(gamma0_9):
    return coset_reps(gamma0_9)


@pytest.fixture(scope="session")
def pair_1pi(gamma0_1pi):
    return coset_reps(gamma0_1pi)


@pytest.fixture(scope="session")
def pair_2pi(gamma0_2pi):
    return coset_reps(gamma0_2pi)


@pytest.fixture(scope="session")
def trivial_chi():
    return CharacterRep("trivial")


@pytest.fixture(scope="session")
def quadratic_chi_2pi():
    return CharacterRep(
        "congruence-character", parse_ring_literal("2+1i", GAUSSIAN), "1/2"
    )


@pytest.fixture(scope="session")
def cubic_chi_9():
    return CharacterRep("congruence-character", RingElem(RATIONAL, 9), "1/3")


@pytest.fixture(scope="session")
def rep_2(pair_2, trivial_chi):
    return InducedRep(pair_2, trivial_chi)


@pytest.fixture(scope="session")
def ss_2(rep_2):
    return singular_space(rep_2)


@pytest.fixture(scope="session")
def ss_1pi(pair_1pi, trivial_chi):
    return singular_space(InducedRep(pair_1pi, trivial_chi))


@pytest.fixture(scope="session")
def small_policy():
    return TruncationPolicy(entry_bound=3, conj_bound=3, delta_cutoff=10.0)
