"""Coset decomposition and cusp data for a pair Gamma < Gamma~.

The ambient group has a single cusp class at infinity, so the cusp
classes of the subgroup are the orbits of the right action of the
infinity stabilizer on the finite coset space Gamma\\Gamma~.  Walking
each orbit assigns to every coset an element u of the infinity
stabilizer with coset representative sigma_i * u; that realizes the
representatives in the block form beta_it * sigma_i, ordered cusp by
cusp, which is the ordering the induced-representation block structure
relies on.

Stabilizer generators inside the subgroup are certified exactly: in 2-D
the stabilizers are cyclic and the generator is sigma_i T^{n_i}
sigma_i^{-1}; in 3-D the translation sublattice is grown from a bounded
search until its index (times the unit-part factor) matches the orbit
size, which certifies completeness.
"""

from __future__ import annotations

from math import gcd as _int_gcd

from .errors import (
    CuspDataError,
    GroupConstructionError,
    SearchExhaustedError,
)
from .groups import GroupDescriptor, GroupElement
from .rings import GAUSSIAN, RATIONAL, RingElem, elements_of_norm_at_most

DEFAULT_COSET_CAP = 4096


class CuspData:
    """Per-cusp record of a SubgroupPair (immutable after construction)."""

    __slots__ = (
        "label",
        "sigma",
        "sigma_inv",
        "width",
        "offset",
        "us",
        "betas",
        "stab_gens",
        "ambient_stab_gens",
        "cyclic_gen",
        "has_unit_part",
        "lattice_basis",
    )

    def __init__(self, label, sigma, width, offset, us, betas, stab_gens,
                 ambient_stab_gens, cyclic_gen, has_unit_part, lattice_basis):
        self.label = label
        self.sigma = sigma
        self.sigma_inv = sigma.inverse()
        self.width = width          # n_i = [Gamma~_i : Gamma_i]
        self.offset = offset        # block start in the alpha ordering
        self.us = us                # u_t with alpha_{offset+t} = sigma * u_t
        self.betas = betas          # beta_it = sigma u_t sigma^{-1}
        self.stab_gens = stab_gens  # generators of Gamma_i
        self.ambient_stab_gens = ambient_stab_gens  # generators of Gamma~_i
        self.cyclic_gen = cyclic_gen        # 2-D only: S_i
        self.has_unit_part = has_unit_part  # 3-D: diagonal unit in Gamma_i?
        self.lattice_basis = lattice_basis  # 3-D translation sublattice

    def block_indices(self):
        return range(self.offset, self.offset + self.width)

    def __repr__(self):
        return f"Cusp({self.label}, n={self.width})"


class SubgroupPair:
    """A pair Gamma < Gamma~ with coset representatives in block order."""

    def __init__(self, gamma, gamma_tilde, alphas, cusps, cusp_permutation=None):
        self.gamma = gamma
        self.gamma_tilde = gamma_tilde
        self.alphas = tuple(alphas)
        self.alpha_invs = tuple(a.inverse() for a in self.alphas)
        self.n = len(self.alphas)
        self.cusps = tuple(cusps)
        self.h = len(self.cusps)
        self.cusp_permutation = tuple(cusp_permutation or range(self.h))
        if sum(c.width for c in self.cusps) != self.n:
            raise GroupConstructionError("cusp widths do not sum to the index")

    # -- coset bookkeeping ----------------------------------------------
    def coset_index(self, g):
        """The unique nu with Gamma g = Gamma alpha_nu."""
        for nu, ainv in enumerate(self.alpha_invs):
            if self.gamma.contains(g * ainv):
                return nu
        raise GroupConstructionError(f"{g!r} lies in no coset (not in the ambient group?)")

    def check_disjoint(self):
        """Exact pairwise-distinctness of the cosets Gamma alpha_nu."""
        for mu in range(self.n):
            for nu in range(self.n):
                if mu != nu and self.gamma.contains(self.alphas[mu] * self.alpha_invs[nu]):
                    return False
        return True

    def check_partition(self, window):
        """Every window element lies in exactly one coset."""
        for g in window:
            hits = sum(
                1 for ainv in self.alpha_invs if self.gamma.contains(g * ainv)
            )
            if hits != 1:
                return False
        return True

    def infinity_coset_key(self, g):
        """Canonical key of the coset Gamma~_inf g: bottom row mod units."""
        units = _allowed_units(self.gamma_tilde.ring, True)
        return _row_key(g.abcd[2], g.abcd[3], units)

    def cusp_coset_key(self, cusp, g):
        """Canonical key of the coset Gamma_j g: bottom row of
        sigma_j^{-1} g modulo the units present in the stabilizer."""
        w = cusp.sigma_inv * g
        units = _allowed_units(self.gamma.ring, cusp.has_unit_part)
        return _row_key(w.abcd[2], w.abcd[3], units)

    def reordered(self, perm):
        """New pair with cusps permuted (and alphas re-blocked to match)."""
        if sorted(perm) != list(range(self.h)):
            raise GroupConstructionError(f"not a permutation: {perm}")
        new_cusps = []
        new_alphas = []
        offset = 0
        for i in perm:
            c = self.cusps[i]
            new_cusps.append(
                CuspData(c.label, c.sigma, c.width, offset, c.us, c.betas,
                         c.stab_gens, c.ambient_stab_gens, c.cyclic_gen,
                         c.has_unit_part, c.lattice_basis)
            )
            new_alphas.extend(self.alphas[nu] for nu in c.block_indices())
            offset += c.width
        composed = tuple(self.cusp_permutation[i] for i in perm)
        return SubgroupPair(self.gamma, self.gamma_tilde, new_alphas, new_cusps, composed)

    def __repr__(self):
        return f"SubgroupPair({self.gamma!r} < {self.gamma_tilde!r}, n={self.n}, h={self.h})"


def _allowed_units(ring, with_diagonal_unit):
    units = [(1, 0)]
    if ring == GAUSSIAN and with_diagonal_unit:
        units.append((0, 1))
    return units


def _row_key(c, d, units):
    """Min over allowed unit multiples and global sign of the row (c, d)."""
    best = None
    for ur, ui in units:
        row = (
            (c[0] * ur - c[1] * ui, c[0] * ui + c[1] * ur),
            (d[0] * ur - d[1] * ui, d[0] * ui + d[1] * ur),
        )
        for s in (1, -1):
            cand = tuple((s * re, s * im) for re, im in row)
            if best is None or cand < best:
                best = cand
    return best


def _boundary_label(sigma):
    """Human-readable cusp label sigma * infinity."""
    (ar, ai), _, (cr, ci), _ = sigma.abcd
    if cr == 0 and ci == 0:
        return "inf"
    if sigma.ring == RATIONAL:
        g = _int_gcd(abs(ar), abs(cr))
        a, c = ar // g, cr // g
        if c < 0:
            a, c = -a, -c
        return f"{a}/{c}"
    from .rings import gauss_gcd

    a = RingElem(GAUSSIAN, ar, ai)
    c = RingElem(GAUSSIAN, cr, ci)
    g = gauss_gcd(a, c)
    a, c = a.exact_div(g), c.exact_div(g)
    for unit in (RingElem(GAUSSIAN, 1, 0), RingElem(GAUSSIAN, -1, 0),
                 RingElem(GAUSSIAN, 0, 1), RingElem(GAUSSIAN, 0, -1)):
        cc = c * unit
        if cc.re > 0 or (cc.re == 0 and cc.im > 0):
            a, c = a * unit, cc
            break
    if c == RingElem(GAUSSIAN, 1, 0):
        return f"{a}"
    return f"({a})/({c})"


def _lattice_reduce(vectors):
    """Hermite-style basis [(p, 0), (c0, g)] of the sublattice of Z^2
    generated by the given (re, im) vectors; returns None if rank < 2."""
    vecs = [v for v in vectors if v != (0, 0)]
    if not vecs:
        return None
    # reduce to one vector with minimal positive im, rest pure-real
    g = 0
    for _, im in vecs:
        g = _int_gcd(g, abs(im))
    if g == 0:
        reals = [abs(re) for re, _ in vecs]
        p = 0
        for r in reals:
            p = _int_gcd(p, r)
        return None  # rank 1 (horizontal only)
    # find combination with im = g by gcd chaining
    cur = None
    for v in vecs:
        if v[1] != 0:
            cur = v if cur is None else _gcd_combine(cur, v)
    # cur has im = +-g up to sign; normalize
    if cur[1] < 0:
        cur = (-cur[0], -cur[1])
    assert cur[1] == g
    p = 0
    for re, im in vecs:
        t = im // g
        p = _int_gcd(p, abs(re - t * cur[0]))
    if p == 0:
        return None  # rank 1 (all multiples of cur)
    c0 = cur[0] % p
    return [(p, 0), (c0, g)]


def _gcd_combine(v, w):
    """Combination of v, w whose im component is gcd(v.im, w.im)."""
    a, b = v, w
    while b[1] != 0:
        q = a[1] // b[1]
        a, b = b, (a[0] - q * b[0], a[1] - q * b[1])
    return a


def _lattice_index(basis):
    return abs(basis[0][0] * basis[1][1])


def _lattice_contains(basis, v):
    (p, _), (c0, g) = basis
    if v[1] % g:
        return False
    t = v[1] // g
    return (v[0] - t * c0) % p == 0


def coset_reps(gamma, gamma_tilde=None, coset_cap=DEFAULT_COSET_CAP, stab_bound=32):
    """Build the full SubgroupPair for gamma inside its ambient group.

    The ambient group must be one of the two hard-coded one-cusp groups;
    passing a Hecke descriptor as gamma_tilde signals the assumption
    violation explicitly rather than constructing a multi-cusp extension.
    """
    if gamma_tilde is None:
        gamma_tilde = gamma.ambient_descriptor()
    if gamma_tilde.subgroup != "full":
        raise GroupConstructionError(
            "assumption violated: the extension group must have a single cusp "
            "(use the full ambient group)"
        )
    if gamma.ambient != gamma_tilde.ambient:
        raise GroupConstructionError("pair must share the ambient group")

    ring = gamma.ring
    ident = GroupElement.identity(ring)
    gens = gamma_tilde.generators()
    gens = gens + tuple(g.inverse() for g in gens)

    # breadth-first closure of the right cosets Gamma g
    reps = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for r in frontier:
            for gen in gens:
                cand = r * gen
                if all(not gamma.contains(cand * r2.inverse()) for r2 in reps):
                    reps.append(cand)
                    nxt.append(cand)
                    if len(reps) > coset_cap:
                        raise GroupConstructionError(
                            f"index overflow: more than {coset_cap} cosets"
                        )
        frontier = nxt
    n = len(reps)

    # orbits of the right infinity-stabilizer action on the cosets
    inf_gens = gamma_tilde.infinity_stabilizer_generators()
    inf_gens = inf_gens + tuple(g.inverse() for g in inf_gens)

    def coset_of(g):
        for idx, r in enumerate(reps):
            if gamma.contains(g * r.inverse()):
                return idx
        raise GroupConstructionError("coset closure was not complete")  # pragma: no cover

    assigned = [None] * n  # coset idx -> (cusp_number, u)
    cusp_blocks = []
    for start in range(n):
        if assigned[start] is not None:
            continue
        cusp_no = len(cusp_blocks)
        sigma = reps[start]
        assigned[start] = (cusp_no, ident)
        block = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for idx in frontier:
                _, u = assigned[idx]
                for gen in inf_gens:
                    cand_u = u * gen
                    target = coset_of(sigma * cand_u)
                    if assigned[target] is None:
                        assigned[target] = (cusp_no, cand_u)
                        block.append(target)
                        nxt.append(target)
            frontier = nxt
        cusp_blocks.append((sigma, block))

    # assemble cusp records in discovery order
    alphas = []
    cusps = []
    offset = 0
    for sigma, block in cusp_blocks:
        us = [assigned[idx][1] for idx in block]
        width = len(block)
        sigma_inv = sigma.inverse()
        betas = [sigma * u * sigma_inv for u in us]
        block_alphas = [sigma * u for u in us]
        for a, idx in zip(block_alphas, block):
            if not gamma.contains(a * reps[idx].inverse()):  # pragma: no cover
                raise GroupConstructionError("orbit walk left the coset")
        stab = _stabilizer_data(gamma, gamma_tilde, sigma, width, stab_bound)
        cusps.append(
            CuspData(
                label=_boundary_label(sigma),
                sigma=sigma,
                width=width,
                offset=offset,
                us=tuple(us),
                betas=tuple(betas),
                stab_gens=stab["gens"],
                ambient_stab_gens=tuple(
                    sigma * g * sigma_inv for g in gamma_tilde.infinity_stabilizer_generators()
                ),
                cyclic_gen=stab["cyclic_gen"],
                has_unit_part=stab["has_unit_part"],
                lattice_basis=stab["lattice_basis"],
            )
        )
        alphas.extend(block_alphas)
        offset += width

    pair = SubgroupPair(gamma, gamma_tilde, alphas, cusps)
    if not pair.check_disjoint():  # pragma: no cover
        raise GroupConstructionError("constructed cosets are not disjoint")
    return pair


def _translation(ring, lam):
    return GroupElement(ring, ((1, 0), (lam.re, lam.im), (0, 0), (1, 0)), _checked=True)


def _diag_unit_translation(ring, lam):
    """[[i, lam], [0, -i]] (Gaussian only)."""
    return GroupElement(ring, ((0, 1), (lam.re, lam.im), (0, 0), (0, -1)), _checked=True)


def _stabilizer_data(gamma, gamma_tilde, sigma, width, stab_bound):
    """Generators of Gamma_i = Gamma intersect sigma Gamma~_inf sigma^{-1}.

    2-D: the stabilizer is cyclic with generator sigma T^{n_i} sigma^{-1}.
    3-D: grow the translation sublattice (plus optional diagonal-unit
    part) until the index formula reproduces the orbit size n_i.
    """
    ring = gamma.ring
    sigma_inv = sigma.inverse()

    def in_gamma_conj(h):
        return gamma.contains(sigma * h * sigma_inv)

    if ring == RATIONAL:
        one = RingElem(RATIONAL, 1)
        gen = sigma * _translation(ring, RingElem(RATIONAL, width)) * sigma_inv
        if not gamma.contains(gen):  # pragma: no cover
            raise GroupConstructionError("cyclic stabilizer generator not in the subgroup")
        for k in range(1, width):
            if in_gamma_conj(_translation(ring, RingElem(RATIONAL, k))):  # pragma: no cover
                raise GroupConstructionError("stabilizer width smaller than the orbit size")
        return {
            "gens": (gen,),
            "cyclic_gen": gen,
            "has_unit_part": False,
            "lattice_basis": ((width, 0),),
        }

    # Gaussian case: bounded search for the translation sublattice
    found = []
    basis = None
    unit_elem = None
    cap = stab_bound * stab_bound
    candidates = sorted(
        (lam for lam in elements_of_norm_at_most(GAUSSIAN, cap) if not lam.is_zero()),
        key=lambda lam: (lam.norm(), lam.key()),
    )

    def certified():
        if basis is None:
            return False
        e = 2 if unit_elem is not None else 1
        return 2 * _lattice_index(basis) == e * width

    # the diagonal-unit part: search lam0 with [[i, lam0],[0,-i]] conjugating in
    for lam in [RingElem(GAUSSIAN, 0, 0)] + candidates:
        if in_gamma_conj(_diag_unit_translation(GAUSSIAN, lam)):
            unit_elem = sigma * _diag_unit_translation(GAUSSIAN, lam) * sigma_inv
            break

    for lam in candidates:
        if basis is not None and _lattice_contains(basis, (lam.re, lam.im)):
            continue
        if in_gamma_conj(_translation(GAUSSIAN, lam)):
            found.append((lam.re, lam.im))
            basis = _lattice_reduce(found)
            if certified():
                break
    if not certified():
        raise SearchExhaustedError(
            f"stabilizer search exhausted at bound {stab_bound} for cusp {_boundary_label(sigma)}"
        )
    gens = tuple(
        sigma * _translation(GAUSSIAN, RingElem(GAUSSIAN, re, im)) * sigma_inv
        for re, im in basis
    )
    if unit_elem is not None:
        gens = gens + (unit_elem,)
    return {
        "gens": gens,
        "cyclic_gen": None,
        "has_unit_part": unit_elem is not None,
        "lattice_basis": tuple(basis),
    }


def trivial_pair(desc):
    """The degenerate pair Gamma = Gamma~ (one cusp, one coset)."""
    if desc.subgroup != "full":
        raise CuspDataError("trivial pair requires the one-cusp ambient group")
    return coset_reps(desc, desc)
