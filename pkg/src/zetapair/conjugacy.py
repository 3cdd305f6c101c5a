"""Hyperbolic class invariants and truncated zeta log-derivative sums.

For a hyperbolic P the class term of the zeta log-derivative is

    tr chi(P) * log N(P0) / ( m(P) * |tr^2 - 4| ) * N(P)^{-s},

using |a - a^{-1}|^2 = |tr^2 - 4|.  The primitive P0 and the torsion
count m are found exactly: every element commuting with P lies in the
commutative algebra spanned by I and P, so candidate roots and torsion
elements are solved for from eigenvalue data, rounded to ring entries
and then verified by exact arithmetic.  Torsion eigenvalues in the two
hard-coded ambient groups are twelfth roots of unity (elliptic traces
are 0 and +-1), so the candidate lists are finite and complete; the
only incomplete step in the module is the bounded conjugator search
used to merge enumerated elements into classes, and that incompleteness
is reported, never hidden.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import NotHyperbolicError
from .groups import ELLIPTIC, HYPERBOLIC, IDENTITY_CLASS, GroupElement, classify, enumerate_elements
from .parallel import deterministic_map, sorted_complex_sum
from .rings import RATIONAL

# smallest hyperbolic norm in the ambient group: trace 3 over Z, trace i
# over Z[i]; bounds the exponent k in the primitive-root search
_MIN_HYP_NORM = {"sl2z": 6.85, "sl2zi": 2.61}
_ROOT_EPS = 1e-9

_TWELFTH_ROOTS = [cmath.exp(2j * cmath.pi * k / 12) for k in range(12)]


def _mul_abcd(x, y):
    """Raw 2x2 product on ((re,im),)*4 tuples, no object construction."""
    (ar, ai), (br, bi), (cr, ci), (dr, di) = x
    (er, ei), (fr, fi), (gr, gi), (hr, hi) = y
    return (
        (ar * er - ai * ei + br * gr - bi * gi, ar * ei + ai * er + br * gi + bi * gr),
        (ar * fr - ai * fi + br * hr - bi * hi, ar * fi + ai * fr + br * hi + bi * hr),
        (cr * er - ci * ei + dr * gr - di * gi, cr * ei + ci * er + dr * gi + di * gr),
        (cr * fr - ci * fi + dr * hr - di * hi, cr * fi + ci * fr + dr * hi + di * hr),
    )


def _canonical_abcd(abcd):
    for re, im in abcd:
        if re or im:
            if re > 0 or (re == 0 and im > 0):
                return abcd
            return tuple((-re, -im) for re, im in abcd)
    return abcd


def eigen_norm(g):
    """(a, N) with a the eigenvalue of modulus > 1 and N = |a|^2."""
    if classify(g) != HYPERBOLIC:
        raise NotHyperbolicError(f"{g!r} is not hyperbolic")
    t = complex(*g.trace_key())
    root = cmath.sqrt(t * t - 4)
    a = (t + root) / 2
    if abs(a) < 1:
        a = (t - root) / 2
    return a, abs(a) ** 2


def _round_to_element(ring, entries_num, tol=0.25):
    """Round complex entries to ring integers; None if any entry is not
    within tol of a lattice point (or the rounded matrix is singular)."""
    abcd = []
    for w in entries_num:
        re = round(w.real)
        im = round(w.imag)
        if abs(w.real - re) > tol or abs(w.imag - im) > tol:
            return None
        if ring == RATIONAL and im != 0:
            return None
        abcd.append((re, im))
    (ar, ai), (br, bi), (cr, ci), (dr, di) = abcd
    det_re = ar * dr - ai * di - (br * cr - bi * ci)
    det_im = ar * di + ai * dr - (br * ci + bi * cr)
    if det_re != 1 or det_im != 0:
        return None
    return GroupElement(ring, abcd, _checked=True)


def _algebra_element(g, a, mu):
    """Numeric alpha*I + beta*g with eigenvalues (mu, 1/mu) on the
    eigenvectors of g (whose eigenvalues are (a, 1/a))."""
    beta = (mu - 1 / mu) / (a - 1 / a)
    alpha = mu - beta * a
    ga, gb, gc, gd = g.complex_entries()
    return (alpha + beta * ga, beta * gb, beta * gc, alpha + beta * gd)


def torsion_elements(g, desc):
    """All projective torsion elements of the centralizer of g, exactly.

    Candidates have eigenvalue pairs (rho, 1/rho) with rho a twelfth
    root of unity; each is rounded to ring entries and kept only if the
    exact verification (determinant, membership, commutation, elliptic
    or identity classification) passes.
    """
    a, _ = eigen_norm(g)
    found = {}
    for rho in _TWELFTH_ROOTS:
        cand = _round_to_element(desc.ring, _algebra_element(g, a, rho))
        if cand is None or not desc.contains(cand):
            continue
        if classify(cand) not in (IDENTITY_CLASS, ELLIPTIC):
            continue
        if cand * g != g * cand:
            continue
        found[cand.abcd] = cand
    return sorted(found.values(), key=GroupElement.key)


@dataclass
class HyperbolicClassData:
    rep: GroupElement
    trace_key: tuple
    a: complex
    N: float
    P0: GroupElement
    N0: float
    k: int
    m: int
    torsion: tuple
    certified: bool = True

    def abs_tr2_minus_4(self):
        t = complex(*self.trace_key)
        return abs(t * t - 4)

    def sort_key(self):
        return (self.N, self.rep.key())

    def class_key(self):
        return self.rep.key()


def centralizer_data(g, desc, stop_at_first_root=True):
    """Primitive P0, exponent k with g = P0^k mod torsion, and m(g).

    Roots are searched largest exponent first; candidate eigenvalues of
    a k-th root are mu with mu^k = a * rho for a twelfth root of unity
    rho (the torsion twist).  Acceptance is by exact verification, so
    the search cannot produce a wrong primitive.
    """
    if not desc.contains(g):
        raise NotHyperbolicError(f"{g!r} is not a member of {desc!r}")
    a, N = eigen_norm(g)
    torsion = torsion_elements(g, desc)
    m = len(torsion)

    n_min = _MIN_HYP_NORM[desc.ambient]
    k_max = int(math.log(N) / math.log(n_min) + 1e-9)
    k_max = min(k_max, int(math.log(N) / math.log1p(_ROOT_EPS)))
    best = None
    for k in range(k_max, 1, -1):
        if N ** (1.0 / k) <= 1.0 + _ROOT_EPS:
            continue
        for rho in _TWELFTH_ROOTS:
            target = a * rho
            mu0 = target ** (1.0 / k)
            for j in range(k):
                mu = mu0 * cmath.exp(2j * cmath.pi * j / k)
                if abs(mu) <= 1.0:
                    continue
                cand = _round_to_element(desc.ring, _algebra_element(g, a, mu))
                if cand is None or not desc.contains(cand):
                    continue
                if classify(cand) != HYPERBOLIC:
                    continue
                if cand * g != g * cand:
                    continue
                rem = cand.power(k).inverse() * g
                if classify(rem) not in (IDENTITY_CLASS, ELLIPTIC):
                    continue
                if not desc.contains(rem) or rem * g != g * rem:
                    continue
                best = (k, cand)
                break
            if best:
                break
        if best and stop_at_first_root:
            break
    if best is None:
        k, P0 = 1, g
    else:
        k, P0 = best
    _, N0 = eigen_norm(P0)
    return HyperbolicClassData(
        rep=g,
        trace_key=g.trace_key(),
        a=a,
        N=N,
        P0=P0,
        N0=N0,
        k=k,
        m=m,
        torsion=tuple(torsion),
    )


@dataclass
class ClassList:
    classes: list
    undecided_pairs: list = field(default_factory=list)

    def certified_count(self):
        return sum(1 for c in self.classes if c.certified)


def class_reps(desc, norm_cutoff, policy):
    """Conjugacy classes among window elements of norm <= cutoff.

    Classes are merged by a bounded conjugator search (window of entry
    bound policy.conj_bound); distinct surviving classes with equal
    trace invariants are reported as undecided pairs rather than being
    silently kept or merged.
    """
    window = enumerate_elements(desc, policy.entry_bound)

    def norm_of(g):
        if classify(g) != HYPERBOLIC:
            return None
        _, N = eigen_norm(g)
        return N if N <= norm_cutoff + 1e-9 else None

    norms = deterministic_map(window, norm_of, policy.threads)
    cands = [(g, N) for g, N in zip(window, norms) if N is not None]

    index = {g.abcd: i for i, (g, _) in enumerate(cands)}
    parent = list(range(len(cands)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    # h and h^{-1} discover the same unordered relations; keep one per pair
    conj_window = enumerate_elements(desc, policy.conj_bound)
    conj_pairs = [
        (h.abcd, h.inverse().abcd)
        for h in conj_window
        if h.abcd <= h.inverse().abcd
    ]
    for i, (g, _) in enumerate(cands):
        gt = g.abcd
        for h, hinv in conj_pairs:
            key = _canonical_abcd(_mul_abcd(_mul_abcd(h, gt), hinv))
            j = index.get(key)
            if j is not None and j != i:
                union(i, j)

    groups = {}
    for i, (g, N) in enumerate(cands):
        groups.setdefault(find(i), []).append(g)
    reps = [min(members, key=GroupElement.key) for members in groups.values()]
    classes = [centralizer_data(rep, desc) for rep in reps]
    classes.sort(key=HyperbolicClassData.sort_key)

    by_trace = {}
    for c in classes:
        by_trace.setdefault(c.trace_key, []).append(c)
    undecided = []
    for tkey, bucket in sorted(by_trace.items()):
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                undecided.append((bucket[i].class_key(), bucket[j].class_key()))
    return ClassList(classes=classes, undecided_pairs=undecided)


def zeta_term(cd, trace_value, s):
    """One class term of the zeta log-derivative."""
    if trace_value == 0:
        return 0j
    denom = cd.m * cd.abs_tr2_minus_4()
    return trace_value * math.log(cd.N0) / denom * cmath.exp(-s * math.log(cd.N))


def z_partial(desc, trace_fn, s, norm_cutoff, policy, class_list=None):
    """Truncated zeta log-derivative sum over classes of norm <= cutoff.

    trace_fn maps a class representative to tr chi / tr pi.  Terms are
    summed in canonical class order, so the value is bit-reproducible.
    Returns (value, metadata dict).
    """
    if class_list is None:
        class_list = class_reps(desc, norm_cutoff, policy)
    terms = []
    for cd in class_list.classes:
        terms.append((cd.class_key(), zeta_term(cd, trace_fn(cd.rep), s)))
    value = sorted_complex_sum(terms)
    meta = {
        "classes": len(class_list.classes),
        "certified_classes": class_list.certified_count(),
        "undecided_pairs": len(class_list.undecided_pairs),
    }
    return value, meta


@dataclass
class ArtinClassReport:
    trace_pi_terms: int
    trace_pi_value: complex
    intersection_empty: bool
    gamma_classes: list
    lhs_term: complex
    rhs_term: complex
    residual: float
    undecided: bool = False


def artin_class_check(pair, chi, rep_pi, cd_tilde, s_probe, policy=None):
    """Per-class decomposition check behind the zeta identity.

    The subgroup classes inside the extension class of cd_tilde.rep are
    in bijection with orbits of the centralizer acting (by right
    multiplication, through coset indices) on the diagonal hits of
    pi(rep); that bijection is exact, so the decomposition needs no
    bounded conjugacy search at all.  The check then compares the single
    extension-side class term against the sum of subgroup-side terms at
    the probe point.
    """
    p_tilde = cd_tilde.rep
    hits = [
        nu
        for nu in range(pair.n)
        if pair.gamma.contains(pair.alphas[nu] * p_tilde * pair.alpha_invs[nu])
    ]
    trace_value = rep_pi.trace_value(p_tilde)

    # orbits of the centralizer on the hit set
    cent_gens = [cd_tilde.P0, cd_tilde.P0.inverse()] + list(cd_tilde.torsion)
    unvisited = set(hits)
    orbits = []
    for start in sorted(unvisited):
        if start not in unvisited:
            continue
        orbit = {start}
        frontier = [start]
        unvisited.discard(start)
        while frontier:
            nxt = []
            for nu in frontier:
                for c in cent_gens:
                    target = pair.coset_index(pair.alphas[nu] * c)
                    if target in unvisited:
                        unvisited.discard(target)
                        orbit.add(target)
                        nxt.append(target)
            frontier = nxt
        orbits.append(sorted(orbit))

    gamma_classes = []
    for orbit in orbits:
        nu = orbit[0]
        gamma_rep = pair.alphas[nu] * p_tilde * pair.alpha_invs[nu]
        gamma_classes.append(centralizer_data(gamma_rep, pair.gamma))

    rhs = zeta_term(cd_tilde, trace_value, s_probe)
    lhs_terms = [
        (cd.class_key(), zeta_term(cd, chi.value(cd.rep), s_probe))
        for cd in gamma_classes
    ]
    lhs = sorted_complex_sum(lhs_terms)
    residual = abs(lhs - rhs) / max(1.0, abs(rhs))
    return ArtinClassReport(
        trace_pi_terms=len(hits),
        trace_pi_value=trace_value,
        intersection_empty=not hits,
        gamma_classes=gamma_classes,
        lhs_term=lhs,
        rhs_term=rhs,
        residual=residual,
    )
