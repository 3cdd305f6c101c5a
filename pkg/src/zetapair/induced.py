"""The induced representation of a character along a subgroup pair.

pi = Ind(chi) acts on C^n by the monomial matrices

    pi(g)[i, j] = chi~(alpha_i g alpha_j^{-1}),

where chi~ extends chi by zero off the subgroup.  Entries are exact
roots of unity or zero, kept as UnitAngle values; numeric matrices are
materialized on demand.  The singular space is spanned by the
normalized block indicators e_j over the singular cusps, with cusps
reordered singular-first so that the block structure of the coset
ordering stays aligned with the Eisenstein machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import UnitAngle
from .errors import CuspDataError, MembershipError
from .groups import PARABOLIC, classify


def chi_tilde_angle(pair, chi, g):
    """chi~(g): the exact angle of chi(g) for g in the subgroup, else None.

    Raises MembershipError when g is not even in the ambient group.
    """
    if not pair.gamma_tilde.contains(g):
        raise MembershipError(f"{g!r} is not in the ambient group")
    if not pair.gamma.contains(g):
        return None
    return chi.angle(g)


def chi_tilde_value(pair, chi, g):
    ang = chi_tilde_angle(pair, chi, g)
    return 0j if ang is None else ang.value()


class InducedRep:
    """Monomial realization of the induced representation on C^n."""

    def __init__(self, pair, chi):
        self.pair = pair
        self.chi = chi
        self.n = pair.n

    def matrix_angles(self, g):
        """n x n table of UnitAngle-or-None entries (exact)."""
        pair = self.pair
        rows = []
        for i in range(self.n):
            left = pair.alphas[i] * g
            row = []
            for j in range(self.n):
                cand = left * pair.alpha_invs[j]
                if pair.gamma.contains(cand):
                    row.append(self.chi.angle(cand))
                else:
                    row.append(None)
            rows.append(row)
        return rows

    def matrix(self, g):
        """pi(g) as a dense complex matrix."""
        angles = self.matrix_angles(g)
        out = np.zeros((self.n, self.n), dtype=complex)
        for i, row in enumerate(angles):
            for j, ang in enumerate(row):
                if ang is not None:
                    out[i, j] = ang.value()
        return out

    def column(self, g, j):
        """Column j of pi(g) as (row index, UnitAngle); monomial, so at
        most one row is nonzero."""
        pair = self.pair
        right = g * pair.alpha_invs[j]
        for i in range(self.n):
            cand = pair.alphas[i] * right
            if pair.gamma.contains(cand):
                return i, self.chi.angle(cand)
        return None

    def trace_angles(self, g):
        """Diagonal hits of pi(g) as exact angles."""
        pair = self.pair
        out = []
        for i in range(self.n):
            cand = pair.alphas[i] * g * pair.alpha_invs[i]
            if pair.gamma.contains(cand):
                out.append(self.chi.angle(cand))
        return out

    def trace_value(self, g):
        return sum((a.value() for a in self.trace_angles(g)), 0j)

    def is_monomial(self, g):
        """Exactly one unit-modulus entry per row and per column."""
        angles = self.matrix_angles(g)
        for row in angles:
            if sum(1 for a in row if a is not None) != 1:
                return False
        for j in range(self.n):
            if sum(1 for row in angles if row[j] is not None) != 1:
                return False
        return True

    def apply_to_block_vector(self, g, block):
        """Exact image of the normalized block indicator under pi(g):
        mapping row index -> UnitAngle sum structure.  Returns a dict
        nu -> UnitAngle (absent means exact zero)."""
        out = {}
        for j in block:
            hit = self.column(g, j)
            if hit is None:
                continue
            i, ang = hit
            if i in out:  # pragma: no cover - monomial structure forbids this
                raise CuspDataError("monomial structure violated")
            out[i] = ang
        return out


@dataclass
class SingularSpace:
    kappa: int
    pair: object          # cusps reordered singular-first
    rep: InducedRep       # induced representation on the reordered pair
    basis: np.ndarray     # (kappa, n) orthonormal rows e_j
    permutation: tuple    # applied cusp permutation
    singular_flags: tuple


def singular_space(rep, parabolic_only=False):
    """Identify singular cusps, reorder them first, and build the e_j.

    A cusp is singular when chi restricts trivially to its full
    stabilizer; ``parabolic_only`` switches the test to the parabolic
    part of the stabilizer only (an experimental alternative reading --
    the two differ just in the Gaussian case, where stabilizers can
    contain an elliptic diagonal-unit part).
    """
    pair = rep.pair
    chi = rep.chi
    flags = []
    for cusp in pair.cusps:
        if parabolic_only:
            gens = [g for g in cusp.stab_gens if classify(g) == PARABOLIC]
        else:
            gens = cusp.stab_gens
        flags.append(chi.is_trivial_on(gens))
    perm = sorted(range(pair.h), key=lambda i: (not flags[i], i))
    new_pair = pair.reordered(perm)
    new_flags = tuple(flags[i] for i in perm)
    kappa = sum(new_flags)
    new_rep = InducedRep(new_pair, chi)

    basis = np.zeros((kappa, new_pair.n))
    for j in range(kappa):
        cusp = new_pair.cusps[j]
        basis[j, cusp.offset:cusp.offset + cusp.width] = cusp.width ** -0.5

    # exact verification: each e_j is fixed by the ambient infinity
    # stabilizer generators (translations only under the parabolic-only
    # reading, which drops the diagonal-unit part throughout)
    gens = new_pair.gamma_tilde.infinity_stabilizer_generators()
    if parabolic_only:
        gens = tuple(g for g in gens if classify(g) == PARABOLIC)
    for j in range(kappa):
        block = list(new_pair.cusps[j].block_indices())
        for g in gens:
            image = new_rep.apply_to_block_vector(g, block)
            ok = set(image) == set(block) and all(
                image[nu].is_one() for nu in block
            )
            if not ok:
                raise CuspDataError(
                    f"block vector of cusp {j} is not fixed by the infinity stabilizer"
                )
    return SingularSpace(kappa, new_pair, new_rep, basis, tuple(perm), new_flags)


def fixed_space_dimension(rep, generators, tol=1e-9):
    """Independent oracle: numeric dimension of the common fixed space of
    pi(g) over the given generators, via the null space of the stacked
    (pi(g) - I)."""
    if not generators:
        raise CuspDataError("stabilizer generators unavailable")
    blocks = [rep.matrix(g) - np.eye(rep.n) for g in generators]
    stacked = np.vstack(blocks)
    svals = np.linalg.svd(stacked, compute_uv=False)
    return int(np.sum(svals <= tol * max(1.0, svals[0])))
