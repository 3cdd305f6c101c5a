"""Test functions, the Selberg transform, and orbital sums.

The Green-kernel family is

    Phi_s(x) = (2^{-s} s / pi) (x + sqrt(x^2-1))^{-s} / sqrt(x^2-1),

decaying like x^{-Re(s)-1}; its transform g(t) = 2 pi int_{cosh t}^oo
Phi(x) dx has the closed form e^{-s|t|}, which the quadrature suite is
checked against.

An orbital function sums Phi(delta(g w, w)) * trace(g) over a
conjugation-invariant subset; the matched-truncation check of the
induction identity L F_chi = F_pi realizes the proof's term bijection
g <-> alpha_i g alpha_i^{-1} (which preserves delta) at finite scale,
so the finite sums agree to rounding error whenever the windows are
closed under the bijection.  Delta-ball windows are closed by
construction; entry-bound windows may fail closure, which is detected
and reported.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import ClosureError, DomainError, QuadratureError
from .geometry import PointH3, apply_mobius, delta
from .groups import (
    HYPERBOLIC,
    PARABOLIC,
    GroupElement,
    classify,
    delta_ball,
    enumerate_elements,
)
from .parallel import deterministic_map, sorted_complex_sum
from .policy import WINDOW_DELTA_BALL


@dataclass(frozen=True)
class TestFunction:
    """Evaluation rule on (1, oo) with a declared decay exponent."""

    fn: object
    decay: float
    name: str = "custom"

    def __call__(self, x):
        if x <= 1.0:
            raise DomainError(f"test function domain is (1, oo), got {x}")
        return self.fn(x)


def phi_s(s, x):
    """Green-kernel test function value at x > 1.

    Normalized so that 2 pi int_{cosh t}^oo phi_s(x) dx = e^{-s|t|}
    exactly (substitute x = cosh v; the integral is elementary).
    """
    if x <= 1.0:
        raise DomainError(f"Phi_s domain is (1, oo), got {x}")
    root = math.sqrt(x * x - 1.0)
    return s / (2.0 * math.pi) * (x + root) ** -s / root


def make_phi_s(s):
    sr = complex(s).real
    if sr <= 1.0:
        warnings.warn(f"Phi_s with Re(s) = {sr} <= 1 has too little decay "
                      "for convergent hyperbolic sums", stacklevel=2)
    return TestFunction(fn=lambda x: phi_s(s, x), decay=sr + 1.0, name=f"phi_s(s={s})")


def selberg_transform(phi, t, tol=1e-10, budget=10 ** 6):
    """2 pi int_{cosh t}^oo phi(x) dx by adaptive quadrature + tail bound.

    The tail cut T is chosen from the declared decay exponent alpha so
    the analytic tail bound C T^(1-alpha)/(alpha-1) is below tol/2; near
    the possible x = 1 singularity the substitution u = sqrt(x-1)
    flattens the integrand.  Raises QuadratureError if the error
    estimate cannot meet tol.
    """
    alpha = phi.decay
    if alpha <= 1.0:
        raise QuadratureError(f"decay exponent {alpha} <= 1: transform diverges")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    a = math.cosh(t)

    # estimate the tail constant on a probe grid, then push T out until
    # the analytic bound clears tol/2
    T = max(4.0, 2.0 * a)
    for _ in range(200):
        c_est = max(abs(phi(x)) * x ** alpha for x in _probe_grid(T))
        tail = 2.0 * math.pi * c_est * T ** (1.0 - alpha) / (alpha - 1.0)
        if tail <= tol / 2.0:
            break
        T *= 2.0
    else:  # pragma: no cover
        raise QuadratureError("no convergence: tail bound did not close")

    limit = max(50, min(1000, budget // 100))

    def integrate(f, lo, hi):
        val_r, err_r = quad(lambda x: f(x).real, lo, hi, limit=limit, epsabs=tol / 8, epsrel=0)
        val_i, err_i = quad(lambda x: f(x).imag, lo, hi, limit=limit, epsabs=tol / 8, epsrel=0)
        return complex(val_r, val_i), err_r + err_i

    if a < 1.5:
        # u = sqrt(x - 1): int_a^T phi = int 2u phi(1+u^2) du
        lo, hi = math.sqrt(a - 1.0) if a > 1.0 else 0.0, math.sqrt(T - 1.0)
        val, err = integrate(lambda u: 2.0 * u * complex(phi(1.0 + u * u)), lo, hi)
    else:
        val, err = integrate(lambda x: complex(phi(x)), a, T)
    err_total = 2.0 * math.pi * err + tail
    if err_total > tol:
        raise QuadratureError(f"no convergence: error estimate {err_total:.2e} > tol {tol:.2e}")
    return 2.0 * math.pi * val


def _probe_grid(T):
    return [T * (1.0 + k / 8.0) for k in range(25)]


# ---------------------------------------------------------------------
# conjugation-invariant subsets
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaSelector:
    """Conjugation-invariant subset: depends only on trace / norm, and
    never admits elliptic elements or the identity."""

    kind: str  # hyperbolic | parabolic | hyperbolic-parabolic | hyperbolic-norm-window
    norm_cutoff: float = math.inf

    def accepts(self, g):
        cls = classify(g)
        if self.kind == "hyperbolic":
            return cls == HYPERBOLIC
        if self.kind == "parabolic":
            return cls == PARABOLIC
        if self.kind == "hyperbolic-parabolic":
            return cls in (HYPERBOLIC, PARABOLIC)
        if self.kind == "hyperbolic-norm-window":
            if cls != HYPERBOLIC:
                return False
            from .conjugacy import eigen_norm

            return eigen_norm(g)[1] <= self.norm_cutoff
        raise DomainError(f"unknown selector kind {self.kind!r}")


HYPERBOLIC_SELECTOR = OmegaSelector("hyperbolic")
PARABOLIC_SELECTOR = OmegaSelector("parabolic")


def _window_with_deltas(desc, w, policy):
    """(g, delta(gw, w)) pairs for the configured window mode."""
    if policy.window == WINDOW_DELTA_BALL:
        return delta_ball(desc, w, policy.delta_cutoff)
    window = enumerate_elements(desc, policy.entry_bound)
    deltas = deterministic_map(
        window, lambda g: delta(apply_mobius(g, w), w), policy.threads
    )
    return [
        (g, dv) for g, dv in zip(window, deltas) if dv <= policy.delta_cutoff
    ]


@dataclass
class OrbitalSum:
    value: complex
    terms: int
    min_delta: float


def orbital_sum(desc, selector, trace_fn, phi, w, policy):
    """Truncated orbital function at w: sum of Phi(delta) * trace terms.

    Terms are ordered by the canonical element key, so the value is
    independent of enumeration and threading details.
    """
    pairs = [
        (g, dv) for g, dv in _window_with_deltas(desc, w, policy) if selector.accepts(g)
    ]
    values = deterministic_map(
        pairs, lambda item: phi(item[1]) * trace_fn(item[0]), policy.threads
    )
    keyed = [(g.key(), v) for (g, _), v in zip(pairs, values)]
    total = sorted_complex_sum(keyed)
    min_delta = min((dv for _, dv in pairs), default=math.inf)
    return OrbitalSum(value=total, terms=len(pairs), min_delta=min_delta)


def l_map(f, pair, w):
    """Average map to the extension quotient: sum of f over alpha_i w."""
    return sum(f(apply_mobius(alpha, w)) for alpha in pair.alphas)


def choose_delta_cutoff(desc, w, min_terms, start=8.0):
    """Smallest gap-safe cutoff whose delta-ball holds >= min_terms
    hyperbolic elements; placed at a midpoint between attained delta
    values so both sides of a matched check classify terms identically."""
    D = start
    for _ in range(40):
        ball = [dv for g, dv in delta_ball(desc, w, D) if classify(g) == HYPERBOLIC]
        if len(ball) >= min_terms + 1:
            ball.sort()
            lo, hi = ball[min_terms - 1], ball[min_terms]
            if hi - lo > 1e-9 * hi:
                return 0.5 * (lo + hi)
            # degenerate tie: walk up to the next clear gap
            for j in range(min_terms, len(ball) - 1):
                if ball[j + 1] - ball[j] > 1e-9 * ball[j + 1]:
                    return 0.5 * (ball[j] + ball[j + 1])
        D *= 1.6
    raise DomainError("could not place a gap-safe delta cutoff")  # pragma: no cover


@dataclass
class OrbitalIdentityReport:
    lhs: complex
    rhs: complex
    residual_rel: float
    terms_lhs: int
    terms_rhs: int
    bijection_closed: bool
    missing_partners: int
    matched_lhs: complex
    matched_rhs: complex
    matched_residual_rel: float
    policy: dict


def orbital_identity_check(pair, chi, rep, phi, w, policy, selector=HYPERBOLIC_SELECTOR):
    """Matched-truncation check of L F_chi^Omega = F_pi^Omega~.

    LHS sums F_chi over the subgroup at each base point alpha_i w with
    the same delta cutoff; RHS sums F_pi at w.  The proof's bijection
    (g~, i) <-> (i, alpha_i g~ alpha_i^{-1}) preserves delta, so with
    bijection-closed windows the two sides carry matched terms and equal
    pair counts.  Closure is verified exactly, per pair.
    """
    D = policy.delta_cutoff
    gamma, gamma_tilde = pair.gamma, pair.gamma_tilde

    # RHS: extension-side terms, with their per-coset character hits
    rhs_window = [
        (g, dv) for g, dv in _window_with_deltas(gamma_tilde, w, policy)
        if selector.accepts(g)
    ]
    rhs_pairs = {}  # (g key, i) -> (delta, angle)
    rhs_terms = []
    for g, dv in rhs_window:
        tr = 0j
        for i in range(pair.n):
            conj = pair.alphas[i] * g * pair.alpha_invs[i]
            if gamma.contains(conj):
                ang = chi.angle(conj)
                rhs_pairs[(g.abcd, i)] = (dv, conj)
                tr += ang.value()
        if tr != 0:
            rhs_terms.append((g.key(), phi(dv) * tr))
    rhs = sorted_complex_sum(rhs_terms)

    # LHS: subgroup-side terms at each base point
    lhs_pairs = {}  # (i, g key) -> delta
    lhs_terms = []
    for i in range(pair.n):
        base = apply_mobius(pair.alphas[i], w)
        for g, dv in _window_with_deltas(gamma, base, policy):
            if not selector.accepts(g):
                continue
            lhs_pairs[(i, g.abcd)] = dv
            lhs_terms.append(((i, g.key()), phi(dv) * chi.value(g)))
    lhs = sorted_complex_sum(lhs_terms)

    # closure: every RHS hit must appear as an LHS term and vice versa
    missing = 0
    matched_rhs_terms = []
    matched_lhs_keys = set()
    for (gkey, i), (dv, conj) in sorted(rhs_pairs.items()):
        partner = (i, conj.abcd)
        if partner in lhs_pairs:
            matched_lhs_keys.add(partner)
            matched_rhs_terms.append(((gkey, i), phi(dv) * chi.angle(conj).value()))
        else:
            missing += 1
    for (i, gkey) in lhs_pairs:
        if (i, gkey) not in matched_lhs_keys:
            missing += 1
    closed = missing == 0

    matched_rhs = sorted_complex_sum(matched_rhs_terms)
    matched_lhs_terms = []
    for (i, gkey) in sorted(matched_lhs_keys):
        dv = lhs_pairs[(i, gkey)]
        g = GroupElement(gamma.ring, gkey, _checked=True)
        matched_lhs_terms.append(((i, gkey), phi(dv) * chi.value(g)))
    matched_lhs = sorted_complex_sum(matched_lhs_terms)

    scale = max(1e-300, abs(rhs))
    mscale = max(1e-300, abs(matched_rhs))
    return OrbitalIdentityReport(
        lhs=lhs,
        rhs=rhs,
        residual_rel=abs(lhs - rhs) / scale,
        terms_lhs=len(lhs_pairs),
        terms_rhs=len(rhs_pairs),
        bijection_closed=closed,
        missing_partners=missing,
        matched_lhs=matched_lhs,
        matched_rhs=matched_rhs,
        matched_residual_rel=abs(matched_lhs - matched_rhs) / mscale,
        policy=policy.as_dict(),
    )


def estimate_sums(desc, sigma, w, policy, pair=None):
    """Truncated window sums of delta^{-sigma} by classification type,
    plus a height lower bound; used by the empirical trend suite (the
    asymptotic constants of the estimates are not asserted).

    The height bound maximizes y(sigma_j^{-1} gamma w) over the window;
    without an explicit pair the descriptor is treated as having its
    single cusp at infinity (true for the two ambient groups).
    """
    if sigma <= 1:
        warnings.warn("parabolic delta-sum needs sigma > 1 to converge", stacklevel=2)
    elif sigma <= 2:
        warnings.warn("hyperbolic delta-sum needs sigma > 2 to converge", stacklevel=2)
    window = enumerate_elements(desc, policy.entry_bound)
    par_terms, hyp_terms = [], []
    height = 0.0
    sigma_invs = [c.sigma_inv for c in pair.cusps] if pair is not None else None
    for g in window:
        if sigma_invs is None:
            height = max(height, apply_mobius(g, w).y)
        else:
            for sinv in sigma_invs:
                height = max(height, apply_mobius(sinv * g, w).y)
        cls = classify(g)
        if cls not in (PARABOLIC, HYPERBOLIC):
            continue
        dv = delta(apply_mobius(g, w), w)
        term = (g.key(), dv ** -sigma)
        (par_terms if cls == PARABOLIC else hyp_terms).append(term)
    par = sorted_complex_sum(par_terms).real
    hyp = sorted_complex_sum(hyp_terms).real
    return par, hyp, height
