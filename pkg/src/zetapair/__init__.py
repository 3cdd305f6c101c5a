"""Exact-arithmetic verification of induced-representation identities
(zeta log-derivatives, orbital functions, Eisenstein series, scattering
algebra) on pairs of arithmetic groups over Z and Z[i]."""

from .characters import CharacterRep, UnitAngle
from .conjugacy import (
    HyperbolicClassData,
    artin_class_check,
    centralizer_data,
    class_reps,
    eigen_norm,
    torsion_elements,
    z_partial,
    zeta_term,
)
from .cosets import CuspData, SubgroupPair, coset_reps, trivial_pair
from .eisenstein import eiscor_check, eisenstein_chi, eisenstein_pi, t_map
from .errors import ZetapairError
from .geometry import PointH3, apply_mobius, delta, height_lower_bound
from .groups import (
    GroupDescriptor,
    GroupElement,
    classify,
    delta_ball,
    enumerate_elements,
)
from .induced import InducedRep, chi_tilde_angle, chi_tilde_value, singular_space
from .kernels import (
    OmegaSelector,
    TestFunction,
    estimate_sums,
    l_map,
    make_phi_s,
    orbital_identity_check,
    orbital_sum,
    phi_s,
    selberg_transform,
)
from .policy import TruncationPolicy
from .rings import RingElem, parse_ring_literal
from .scattering import (
    OmegaConstants,
    ScatteringMatrix,
    omega_constants,
    scattering_conjugation,
    synthetic_scattering,
    vz_transform,
)

__version__ = "0.1.0"
