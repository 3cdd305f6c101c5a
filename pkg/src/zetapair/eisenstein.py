"""Truncated Eisenstein series and the matched comparison between the
character series and the induced-representation series.

Both series are sums of y^s over cosets: the character series at a
singular cusp j runs over Gamma_j \\ Gamma, the vector series over
Gamma~_inf \\ Gamma~.  Cosets are deduplicated by exact bottom-row keys
(bottom rows determine these cosets up to the stabilizer's unit part).

The comparison realizes, term by term, the reindexing proof of the
component identity  E_j(alpha_nu w, s; chi) = sqrt(n_j) E_j(w, s; pi)_nu:
a window coset [g] contributes to component nu through the block hits
gamma = alpha_nu g^{-1} alpha_mu^{-1} in Gamma, and the partner
character-series coset is [gamma^{-1}]; the heights agree exactly
because gamma^{-1} differs from g by stabilizer factors on the correct
sides.  With partners constructed exactly, closure fails only if a
partner exceeds the configured entry cap, and that is reported.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CuspDataError
from .geometry import apply_mobius
from .groups import GroupElement, enumerate_elements
from .parallel import sorted_complex_sum

CLOSURE_CAP_FACTOR = 16


def _y_power(w, s):
    return cmath.exp(complex(s) * math.log(w.y))


def eisenstein_chi(ss, j, w, s, policy):
    """Truncated character Eisenstein series at singular cusp j.

    Sums y^s(sigma_j^{-1} g w) chi(g^{-1}) over window representatives
    of Gamma_j \\ Gamma, in canonical coset-key order.
    """
    if j >= ss.kappa:
        raise CuspDataError(f"cusp {j} is not singular (kappa = {ss.kappa})")
    pair, chi = ss.pair, ss.rep.chi
    cusp = pair.cusps[j]
    reps = {}
    for g in enumerate_elements(pair.gamma, policy.entry_bound):
        key = pair.cusp_coset_key(cusp, g)
        cur = reps.get(key)
        if cur is None or g.key() < cur.key():
            reps[key] = g
    terms = []
    for key, g in reps.items():
        point = apply_mobius(cusp.sigma_inv * g, w)
        terms.append((key, _y_power(point, s) * chi.value(g.inverse())))
    value = sorted_complex_sum(terms)
    return value, len(terms)


def eisenstein_pi(ss, j, w, s, policy):
    """Truncated vector Eisenstein series of the induced representation.

    Sums y^s(g w) pi(g^{-1}) e_j over window representatives of
    Gamma~_inf \\ Gamma~; returns (vector, coset count).
    """
    if j >= ss.kappa:
        raise CuspDataError(f"cusp {j} is not singular (kappa = {ss.kappa})")
    pair, rep = ss.pair, ss.rep
    cusp = pair.cusps[j]
    block = list(cusp.block_indices())
    scale = cusp.width ** -0.5
    reps = _infinity_coset_reps(pair, policy.entry_bound)
    component_terms = [[] for _ in range(pair.n)]
    for key, g in reps.items():
        yv = _y_power(apply_mobius(g, w), s)
        hits = rep.apply_to_block_vector(g.inverse(), block)
        for nu, ang in hits.items():
            component_terms[nu].append((key, yv * ang.value() * scale))
    vec = np.array([sorted_complex_sum(t) for t in component_terms])
    return vec, len(reps)


def _infinity_coset_reps(pair, bound):
    reps = {}
    for g in enumerate_elements(pair.gamma_tilde, bound):
        key = pair.infinity_coset_key(g)
        cur = reps.get(key)
        if cur is None or g.key() < cur.key():
            reps[key] = g
    return reps


def t_map(f, pair, w):
    """Component vector [f(alpha_1 w), ..., f(alpha_n w)]."""
    return np.array([f(apply_mobius(alpha, w)) for alpha in pair.alphas])


@dataclass
class EiscorReport:
    component_residuals: list
    max_residual: float
    matched_terms: list
    closure_ok: bool
    dropped_partners: int
    full_lhs: np.ndarray
    full_rhs: np.ndarray
    full_residual: float
    policy: dict


def eiscor_check(ss, j, w, s, policy):
    """Matched-truncation and full-window comparison of the component
    identity between the two Eisenstein series at singular cusp j."""
    if j >= ss.kappa:
        raise CuspDataError(f"cusp {j} is not singular (kappa = {ss.kappa})")
    pair, rep, chi = ss.pair, ss.rep, ss.rep.chi
    cusp = pair.cusps[j]
    block = list(cusp.block_indices())
    cap = (CLOSURE_CAP_FACTOR * policy.entry_bound) ** 2

    reps = _infinity_coset_reps(pair, policy.entry_bound)
    dropped = 0
    lhs_terms = [dict() for _ in range(pair.n)]   # nu -> coset key -> value
    rhs_terms = [[] for _ in range(pair.n)]
    for key, g in sorted(reps.items()):
        g_inv = g.inverse()
        yv = _y_power(apply_mobius(g, w), s)
        for nu in range(pair.n):
            left = pair.alphas[nu] * g_inv
            for mu in block:
                gamma = left * pair.alpha_invs[mu]
                if not pair.gamma.contains(gamma):
                    continue
                rhs_terms[nu].append(((key, mu), yv * chi.value(gamma)))
                partner = gamma.inverse()
                if partner.max_entry_norm() > cap:
                    dropped += 1
                    continue
                pkey = pair.cusp_coset_key(cusp, partner)
                if pkey in lhs_terms[nu]:  # pragma: no cover
                    raise CuspDataError("reindexing bijection produced a collision")
                point = apply_mobius(cusp.sigma_inv * partner,
                                     apply_mobius(pair.alphas[nu], w))
                lhs_terms[nu][pkey] = _y_power(point, s) * chi.value(partner.inverse())

    residuals = []
    matched = []
    for nu in range(pair.n):
        rhs = sorted_complex_sum(rhs_terms[nu])
        lhs = sorted_complex_sum(list(lhs_terms[nu].items()))
        scale = max(1e-300, abs(rhs))
        residuals.append(abs(lhs - rhs) / scale)
        matched.append(len(rhs_terms[nu]))

    # independent full-window comparison (truncation-level agreement only)
    full_rhs = cusp.width ** 0.5 * eisenstein_pi(ss, j, w, s, policy)[0]
    full_lhs = t_map(
        lambda point: _eisenstein_chi_at(ss, j, point, s, policy), pair, w
    )
    denom = max(1e-300, float(np.max(np.abs(full_rhs))))
    full_residual = float(np.max(np.abs(full_lhs - full_rhs))) / denom

    return EiscorReport(
        component_residuals=residuals,
        max_residual=max(residuals),
        matched_terms=matched,
        closure_ok=dropped == 0,
        dropped_partners=dropped,
        full_lhs=full_lhs,
        full_rhs=full_rhs,
        full_residual=full_residual,
        policy=policy.as_dict(),
    )


def _eisenstein_chi_at(ss, j, point, s, policy):
    return eisenstein_chi(ss, j, point, s, policy)[0]
