"""Generating-set construction and verification for crystal groups.

Every public reduction returns a `GenSetReport` whose set has been checked
by `verify_generates`; the verifier is the only authority, reduction
pipelines are treated as heuristics that must pass it.  When a pipeline's
candidate fails verification it falls back to a greedy reduction of the
naive generating set and records why.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .crystal import (
    AffineElement,
    CrystalGroup,
    CoinvariantSplit,
    HolonomyGroup,
    affine_identity,
    affine_inv,
    affine_mul,
    affine_pow,
    coinvariant_split,
    conjugate_crystal,
    enumerate_holonomy,
    fixed_lattice,
    is_torsion_free,
    lattice_element,
    lift_all,
    map_affine,
    norm_matrix,
    require_normalized,
)
from .linalg import (
    FlatGroupError,
    IncrementalLattice,
    IntMatrix,
    RatVector,
    UnimodularTransform,
    matrix_order,
    xgcd,
)
from .modules import (
    GModule,
    bound_cyclic,
    coinvariant_lower_bound,
    cyclic_module,
    prime_factors,
    rank_upper_search,
)


class WrongHolonomyShape(FlatGroupError):
    """The holonomy group does not satisfy the method's hypotheses."""


class InputNotTorsionFree(FlatGroupError):
    """A method requiring torsion-freeness received a group with torsion."""

    def __init__(self, message: str, witness: Optional[AffineElement] = None):
        super().__init__(message)
        self.witness = witness


class InternalContradiction(FlatGroupError):
    """The computation reached a state the theory rules out; either the
    input violated a precondition undetectably or there is a bug."""


class NotAGeneratingPair(FlatGroupError):
    """The two designated elements do not generate the holonomy group."""


class NotASubset(FlatGroupError):
    """A candidate generating set contains elements outside the group."""


METHOD_NAIVE = "NAIVE"
METHOD_A_I = "THEOREM_A_I"
METHOD_A_II = "THEOREM_A_II"
METHOD_C = "THEOREM_C"
METHOD_GREEDY = "GREEDY"


@dataclass(frozen=True, slots=True)
class GenSetReport:
    """A verified generating set: `verified` is always True on anything
    this module returns."""

    generators: tuple[AffineElement, ...]
    size: int
    method: str
    verified: bool
    theorem_bound: Optional[int]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class GenerationCheck:
    ok: bool
    reason: Optional[str] = None


@dataclass(frozen=True, slots=True)
class FHomomorphism:
    """The surjection onto Z used by the cyclic reduction: an element with
    split-coordinate translation y maps to scale * y[coordinate_index].

    `basis_change` is the coinvariant split transform; `value` accepts
    elements in the original coordinates."""

    coordinate_index: int
    scale: int
    numerator: int
    basis_change: UnimodularTransform

    def __post_init__(self):
        if gcd(self.numerator, self.scale) != 1:
            raise ValueError("numerator and scale must be coprime")

    def value_split(self, elem: AffineElement) -> int:
        v = elem.translation.coords[self.coordinate_index] * self.scale
        if v.denominator != 1:
            raise ValueError("element is not in the group (non-integral image)")
        return v.numerator

    def value(self, elem: AffineElement) -> int:
        moved = map_affine(elem, self.basis_change, forward=False)
        return self.value_split(moved)


# ---------------------------------------------------------------------------
# Verification


def verify_generates(gamma: CrystalGroup, elements: Sequence[AffineElement]) -> GenerationCheck:
    """Decide whether the elements generate the whole group.

    Two conditions, both necessary and together sufficient: the holonomy
    images must generate the finite quotient, and the Schreier generators
    t_g s t_{gs}^{-1} over a transversal built from the candidate set must
    span Z^n.
    """
    require_normalized(gamma)
    group = gamma.holonomy
    n = gamma.dim
    table = lift_all(gamma)
    for e in elements:
        if not 0 <= e.holonomy_index < group.size:
            raise NotASubset(f"holonomy index {e.holonomy_index} out of range")
        if e.translation.dim != n:
            raise NotASubset("translation of wrong dimension")
        if not (e.translation - table[e.holonomy_index]).is_integral():
            raise NotASubset(
                f"translation {e.translation.coords} is not in the lift coset of "
                f"holonomy element {e.holonomy_index}"
            )
    covered = group.closure([e.holonomy_index for e in elements])
    if len(covered) != group.size:
        return GenerationCheck(
            False, f"holonomy coverage {len(covered)} of {group.size} elements"
        )
    transversal: dict[int, AffineElement] = {group.identity_index: affine_identity(group)}
    queue = [group.identity_index]
    while queue:
        g = queue.pop(0)
        for s in elements:
            h = group.mul(g, s.holonomy_index)
            if h not in transversal:
                transversal[h] = affine_mul(transversal[g], s, group)
                queue.append(h)
    span = IncrementalLattice(n)
    for g in list(transversal):
        for s in elements:
            h = group.mul(g, s.holonomy_index)
            sigma = affine_mul(
                affine_mul(transversal[g], s, group), affine_inv(transversal[h], group), group
            )
            if sigma.holonomy_index != group.identity_index:
                raise InternalContradiction("Schreier element with nontrivial holonomy")
            span.add(sigma.translation.to_int_tuple())
    if span.is_full():
        return GenerationCheck(True)
    return GenerationCheck(
        False, f"Schreier translation lattice has rank {span.rank()} (index > 1 or < {n})"
    )


def _trim_to_minimal(
    gamma: CrystalGroup, elements: list[AffineElement], notes: list[str]
) -> list[AffineElement]:
    """Drop elements while the rest still verifies; records a note when
    anything was removable (the incoming set was not minimal)."""
    trimmed = False
    changed = True
    while changed:
        changed = False
        for i in range(len(elements)):
            cand = elements[:i] + elements[i + 1 :]
            if cand and verify_generates(gamma, cand).ok:
                elements = cand
                changed = trimmed = True
                break
    if trimmed:
        notes.append("TRIMMED_NON_MINIMAL")
    return elements


# ---------------------------------------------------------------------------
# Baseline constructions


def naive_generating_set(gamma: CrystalGroup) -> GenSetReport:
    """Standard basis translations plus one lift per listed holonomy
    generator; always verifies on a normalized group."""
    require_normalized(gamma)
    group = gamma.holonomy
    gens = [lattice_element(tuple(1 if j == i else 0 for j in range(gamma.dim)), group)
            for i in range(gamma.dim)]
    for gi, mat in enumerate(group.generators):
        gens.append(AffineElement(gamma.lifts[gi], group.index_of(mat)))
    check = verify_generates(gamma, gens)
    if not check.ok:
        raise InternalContradiction(f"naive set failed verification: {check.reason}")
    return GenSetReport(
        tuple(gens), len(gens), METHOD_NAIVE, True,
        gamma.dim + len(group.generators),
    )


def greedy_reduce(
    gamma: CrystalGroup,
    start: Sequence[AffineElement],
    notes: Sequence[str] = (),
) -> GenSetReport:
    """Shrink a verified set by single removals and short product merges
    (words of length <= 3 over the current set), re-verifying every step.
    Deterministic order; the result is a verified local minimum."""
    if not verify_generates(gamma, start).ok:
        raise ValueError("greedy_reduce requires a verified starting set")
    group = gamma.holonomy
    s = list(start)
    note_list = list(notes)
    improved = True
    while improved:
        improved = False
        for i in range(len(s)):
            cand = s[:i] + s[i + 1 :]
            if cand and verify_generates(gamma, cand).ok:
                s = cand
                improved = True
                break
        if improved:
            continue
        for i, j in itertools.permutations(range(len(s)), 2):
            rest = [s[t] for t in range(len(s)) if t not in (i, j)]
            if not rest:
                continue
            for word in (
                affine_mul(s[i], s[j], group),
                affine_mul(s[i], affine_inv(s[j], group), group),
            ):
                cand = rest + [word]
                if verify_generates(gamma, cand).ok:
                    s = cand
                    improved = True
                    break
            if improved:
                break
        if improved:
            continue
        for i, j, k in itertools.permutations(range(len(s)), 3):
            rest = [s[t] for t in range(len(s)) if t not in (i, j, k)]
            if not rest:
                continue
            word = affine_mul(affine_mul(s[i], s[j], group), s[k], group)
            cand = rest + [word]
            if verify_generates(gamma, cand).ok:
                s = cand
                improved = True
                break
    return GenSetReport(tuple(s), len(s), METHOD_GREEDY, True, None, tuple(note_list))


def _greedy_fallback(gamma: CrystalGroup, notes: Sequence[str]) -> GenSetReport:
    return greedy_reduce(gamma, naive_generating_set(gamma).generators, notes=notes)


# ---------------------------------------------------------------------------
# Theorem A(i): cyclic holonomy with a prime factor above 3


def reduce_theorem_a_i(
    gamma: CrystalGroup, budget: int = 100000, seed: Optional[int] = None
) -> GenSetReport:
    """Module generators from the rank search plus a single holonomy lift.

    Requires cyclic holonomy of order m >= 3 divisible by a prime above 3;
    torsion-freeness is not required."""
    require_normalized(gamma)
    group = gamma.holonomy
    n = gamma.dim
    m = group.size
    gidx = group.cyclic_generator()
    if gidx is None or m < 3:
        raise WrongHolonomyShape(f"cyclic holonomy of order >= 3 required, got order {m}")
    if not any(p > 3 for p in prime_factors(m)):
        raise WrongHolonomyShape(f"order {m} has no prime factor above 3")
    rb = rank_upper_search(GModule(n, group), budget=budget, seed=seed)
    table = lift_all(gamma)
    alpha = AffineElement(table[gidx], gidx)
    cand = [lattice_element(v, group) for v in rb.upper_witness] + [alpha]
    notes = list(rb.flags)
    check = verify_generates(gamma, cand)
    if not check.ok:
        return _greedy_fallback(gamma, notes + [f"A_I_CANDIDATE_FAILED: {check.reason}"])
    cand = _trim_to_minimal(gamma, cand, notes)
    return GenSetReport(tuple(cand), len(cand), METHOD_A_I, True, n - 2, tuple(notes))


# ---------------------------------------------------------------------------
# Theorem A(ii): torsion-free cyclic holonomy, m >= 3


@dataclass(frozen=True, slots=True)
class CyclicReductionData:
    """Intermediate state of the cyclic reduction, exposed for testing."""

    split: CoinvariantSplit
    fhom: FHomomorphism
    alpha_split: AffineElement  # lift of the cyclic generator, split coords
    beta_split: AffineElement  # f-preimage of 1, split coords
    sigma: int
    tau: int
    k_action: IntMatrix  # conjugation action on <e_j : j != i>


def _coprime_bezout(q: int, z: int, m: int) -> Optional[tuple[int, int]]:
    """sigma, tau with sigma q + tau z = 1 and gcd(sigma, m) = 1, scanning
    the Bezout family sigma_0 + t z deterministically."""
    _, sigma0, _ = xgcd(q, z)
    for t in range(0, 2 * m + 2):
        for cand in ((sigma0 + t * z,) if t == 0 else (sigma0 + t * z, sigma0 - t * z)):
            if gcd(cand, m) == 1:
                return cand, (1 - cand * q) // z
    return None


def cyclic_reduction_data(gamma: CrystalGroup) -> CyclicReductionData:
    """Steps 1-6 of the cyclic reduction (split, tail pick, f, beta, K)."""
    require_normalized(gamma)
    group = gamma.holonomy
    n = gamma.dim
    m = group.size
    gidx = group.cyclic_generator()
    if gidx is None or m < 3:
        raise WrongHolonomyShape(f"cyclic holonomy of order >= 3 required, got order {m}")
    torsion = is_torsion_free(gamma)
    if not torsion.torsion_free:
        raise InputNotTorsionFree("group has torsion", witness=torsion.witness)
    k = fixed_lattice(group).rank
    if k == 0:
        raise InternalContradiction(
            "torsion-free cyclic holonomy with trivial fixed lattice"
        )
    split = coinvariant_split(gamma, gidx)
    sgamma = conjugate_crystal(gamma, split.transform)
    sgroup = sgamma.holonomy
    x = lift_all(sgamma)[gidx].frac_part()  # integral lift shift, coords in [0,1)
    alpha = AffineElement(x, gidx)
    head = split.head_dim
    nonintegral = [
        (x.coords[i].denominator, i) for i in range(head, n) if x.coords[i].denominator > 1
    ]
    if not nonintegral:
        res = is_torsion_free(gamma)
        if not res.torsion_free:
            raise InputNotTorsionFree("integral tail implies torsion", witness=res.witness)
        raise InternalContradiction("integral tail lift in a torsion-free group")
    z, i_abs = min(nonintegral)
    q = x.coords[i_abs].numerator
    fhom = FHomomorphism(i_abs, z, q, split.transform)
    bez = _coprime_bezout(q, z, m)
    if bez is None:
        raise InternalContradiction("no Bezout coefficient coprime to the order")
    sigma, tau = bez
    e_i = lattice_element(tuple(1 if j == i_abs else 0 for j in range(n)), sgroup)
    beta = affine_mul(
        affine_pow(alpha, sigma, sgroup), affine_pow(e_i, tau, sgroup), sgroup
    )
    if fhom.value_split(beta) != 1:
        raise InternalContradiction("f(beta) != 1")
    k_action = sgroup.matrix(gidx).delete_row_col(i_abs, i_abs)
    return CyclicReductionData(split, fhom, alpha, beta, sigma, tau, k_action)


def reduce_cyclic(
    gamma: CrystalGroup, budget: int = 100000, seed: Optional[int] = None
) -> GenSetReport:
    """Cyclic-holonomy reduction to at most n - 1 generators.

    Pipeline: coinvariant split; pick the tail coordinate of the lift with
    the smallest denominator z >= 2 (ties to the smallest index); build the
    homomorphism f = z * (that coordinate) onto Z and an element beta with
    f(beta) = 1; search module generators for the complementary coordinate
    sublattice under the conjugation action; verify the assembled set and
    fall back to a greedy reduction when the verifier rejects it."""
    data = cyclic_reduction_data(gamma)
    group = gamma.holonomy
    n = gamma.dim
    m = group.size
    notes: list[str] = []
    order = matrix_order(data.k_action)
    if order != m:
        return _greedy_fallback(
            gamma, [f"K_ACTION_ORDER_MISMATCH: order {order} != {m}"]
        )
    rb = rank_upper_search(cyclic_module(data.k_action), budget=budget, seed=seed)
    notes.extend(rb.flags)
    i_abs = data.fhom.coordinate_index
    sgroup = conjugate_crystal(gamma, data.split.transform).holonomy
    cand_split = [
        lattice_element(v[:i_abs] + (0,) + v[i_abs:], sgroup) for v in rb.upper_witness
    ]
    cand_split.append(data.beta_split)
    cand = [map_affine(e, data.split.transform, forward=True) for e in cand_split]
    check = verify_generates(gamma, cand)
    if not check.ok:
        return _greedy_fallback(gamma, notes + [f"KER_F_DISCREPANCY: {check.reason}"])
    cand = _trim_to_minimal(gamma, cand, notes)
    return GenSetReport(tuple(cand), len(cand), METHOD_A_II, True, n - 1, tuple(notes))


# ---------------------------------------------------------------------------
# Theorem C: two-generated holonomy


def find_generating_pair(group: HolonomyGroup) -> Optional[tuple[int, int]]:
    """First pair of element indices (lexicographic) generating the group."""
    for i in range(group.size):
        for j in range(i, group.size):
            if len(group.closure([i, j])) == group.size:
                return (i, j)
    return None


def _lift_subgroup_crystal(
    gamma: CrystalGroup, elem: AffineElement
) -> CrystalGroup:
    """The subgroup <Z^n, elem> as a crystal group with cyclic holonomy.

    Its translation subgroup is exactly Z^n again (it is squeezed between
    Z^n and the translations of gamma)."""
    mat = gamma.holonomy.matrix(elem.holonomy_index)
    holonomy = enumerate_holonomy([mat], dim=gamma.dim)
    return CrystalGroup(gamma.dim, holonomy, (elem.translation,), name=gamma.name)


def reduce_two_generated(
    gamma: CrystalGroup,
    x_index: int,
    y_index: int,
    budget: int = 100000,
    seed: Optional[int] = None,
) -> GenSetReport:
    """Reduction for torsion-free groups whose holonomy is generated by the
    two designated elements: at most n generators.

    Case split on the orders a, b of the designated pair: a cyclic
    subgroup of order >= 3 (one of x, y, or xy) yields an (n-1)-element
    set for its lift subgroup by the cyclic reduction, plus the remaining
    lift; holonomy C_2 and C_2 x C_2 fall back to the greedy reduction."""
    require_normalized(gamma)
    group = gamma.holonomy
    n = gamma.dim
    if len(group.closure([x_index, y_index])) != group.size:
        raise NotAGeneratingPair("designated elements do not generate the holonomy")
    torsion = is_torsion_free(gamma)
    if not torsion.torsion_free:
        raise InputNotTorsionFree("group has torsion", witness=torsion.witness)
    table = lift_all(gamma)
    alpha = AffineElement(table[x_index], x_index)
    beta = AffineElement(table[y_index], y_index)
    a, b = group.order(x_index), group.order(y_index)
    notes: list[str] = []

    if a == 1 or b == 1:
        # cyclic holonomy generated by the nontrivial one
        if group.size >= 3 and group.cyclic_generator() is not None:
            inner = reduce_cyclic(gamma, budget=budget, seed=seed)
            notes = list(inner.notes) + ["cyclic holonomy: theorem C delegates to the cyclic reduction"]
            return GenSetReport(
                inner.generators, inner.size, METHOD_C, True, n, tuple(notes)
            )
        return greedy_reduce(
            gamma,
            naive_generating_set(gamma).generators,
            notes=["holonomy of order <= 2: outside the cyclic reduction, greedy fallback"],
        )

    if a >= 3 or b >= 3:
        if b > a:
            x_index, y_index = y_index, x_index
            alpha, beta = beta, alpha
            a, b = b, a
        sub = _lift_subgroup_crystal(gamma, alpha)
        inner = reduce_cyclic(sub, budget=budget, seed=seed)
        inner_mapped = _map_subgroup_generators(gamma, sub, inner.generators)
        cand = list(inner_mapped) + [beta]
        notes = list(inner.notes)
    else:
        xy_index = group.mul(x_index, y_index)
        k = group.order(xy_index)
        if k >= 3:
            alphabeta = affine_mul(alpha, beta, group)
            sub = _lift_subgroup_crystal(gamma, alphabeta)
            inner = reduce_cyclic(sub, budget=budget, seed=seed)
            inner_mapped = _map_subgroup_generators(gamma, sub, inner.generators)
            cand = list(inner_mapped) + [beta]
            notes = list(inner.notes)
        else:
            return greedy_reduce(
                gamma,
                naive_generating_set(gamma).generators,
                notes=["elementary abelian 2-group holonomy: greedy fallback"],
            )

    check = verify_generates(gamma, cand)
    if not check.ok:
        return _greedy_fallback(gamma, notes + [f"C_CANDIDATE_FAILED: {check.reason}"])
    cand = _trim_to_minimal(gamma, cand, notes)
    return GenSetReport(tuple(cand), len(cand), METHOD_C, True, n, tuple(notes))


def _map_subgroup_generators(
    gamma: CrystalGroup, sub: CrystalGroup, gens: Sequence[AffineElement]
) -> list[AffineElement]:
    """Re-index affine elements of the lift subgroup as elements of gamma
    (same coordinates, holonomy indices looked up in gamma's table)."""
    out = []
    for e in gens:
        mat = sub.holonomy.matrix(e.holonomy_index)
        out.append(AffineElement(e.translation, gamma.holonomy.index_of(mat)))
    return out


# ---------------------------------------------------------------------------
# Auto dispatch


_METHOD_PRIORITY = {METHOD_A_I: 0, METHOD_A_II: 1, METHOD_C: 2, METHOD_GREEDY: 3, METHOD_NAIVE: 4}


def auto_reduce(
    gamma: CrystalGroup, budget: int = 100000, seed: Optional[int] = None
) -> GenSetReport:
    """Run every applicable reduction and return the smallest verified set
    (ties break by method priority: A(i), A(ii), C, greedy, naive)."""
    require_normalized(gamma)
    group = gamma.holonomy
    candidates = [naive_generating_set(gamma)]
    torsion_free = is_torsion_free(gamma).torsion_free
    cyc = group.cyclic_generator()
    m = group.size
    if cyc is not None and m >= 3 and any(p > 3 for p in prime_factors(m)):
        candidates.append(reduce_theorem_a_i(gamma, budget=budget, seed=seed))
    if cyc is not None and m >= 3 and torsion_free:
        candidates.append(reduce_cyclic(gamma, budget=budget, seed=seed))
    if torsion_free and (cyc is None or m < 3):
        pair = find_generating_pair(group)
        if pair is not None:
            candidates.append(
                reduce_two_generated(gamma, pair[0], pair[1], budget=budget, seed=seed)
            )
    candidates.append(greedy_reduce(gamma, naive_generating_set(gamma).generators))
    return min(candidates, key=lambda r: (r.size, _METHOD_PRIORITY[r.method]))


# ---------------------------------------------------------------------------
# Bound report


@dataclass(frozen=True, slots=True)
class SylowInfo:
    prime: int
    order: int
    min_generators: int
    fixed_rank: int


@dataclass(frozen=True, slots=True)
class TheoremBound:
    tag: str
    applies: bool
    bound: Optional[int]
    details: tuple[tuple[str, object], ...] = ()


@dataclass(frozen=True, slots=True)
class BoundReport:
    name: Optional[str]
    dim: int
    order: int
    factorization: tuple[tuple[int, int], ...]
    torsion_free: bool
    sylow: tuple[SylowInfo, ...]
    theorems: tuple[TheoremBound, ...]
    best: Optional[GenSetReport]


def _factorize(m: int) -> tuple[tuple[int, int], ...]:
    out = []
    for p in prime_factors(m):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return tuple(out)


def _is_p_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def sylow_subgroup(group: HolonomyGroup, p: int) -> tuple[int, ...]:
    """Element indices of one Sylow p-subgroup, grown greedily inside the
    enumerated table (a maximal p-subgroup of a finite group is Sylow)."""
    current = frozenset({group.identity_index})
    changed = True
    while changed:
        changed = False
        for i in range(group.size):
            if i in current or not _is_p_power(group.order(i), p):
                continue
            cand = group.closure(list(current) + [i])
            if _is_p_power(len(cand), p):
                current = cand
                changed = True
                break
    return tuple(sorted(current))


def subgroup_min_generators(group: HolonomyGroup, indices: Sequence[int]) -> int:
    """d(H) for a subgroup given by its element table indices, by
    exhaustive search over generator subsets of increasing size."""
    target = frozenset(indices)
    if len(target) == 1:
        return 0
    nontrivial = [i for i in indices if i != group.identity_index]
    for size in range(1, len(nontrivial) + 1):
        for combo in itertools.combinations(nontrivial, size):
            if group.closure(combo) == target:
                return size
    raise InternalContradiction("subgroup not generated by its own elements")


def normal_closure(group: HolonomyGroup, seed: int) -> frozenset[int]:
    current = set(group.closure([seed]))
    changed = True
    while changed:
        changed = False
        for h in range(group.size):
            hinv = group.inv(h)
            for g in list(current):
                c = group.mul(group.mul(hinv, g), h)
                if c not in current:
                    current = set(group.closure(list(current) + [c]))
                    changed = True
    return frozenset(current)


def is_simple_group(group: HolonomyGroup) -> bool:
    if group.size == 1:
        return False
    return all(
        len(normal_closure(group, g)) == group.size
        for g in range(group.size)
        if g != group.identity_index
    )


def bound_report(
    gamma: CrystalGroup,
    budget: int = 100000,
    seed: Optional[int] = None,
    with_reduction: bool = True,
    reduction: Optional[GenSetReport] = None,
) -> BoundReport:
    """Everything the theorems predict for this group, next to the best
    constructive (verified) result."""
    require_normalized(gamma)
    group = gamma.holonomy
    n = gamma.dim
    m = group.size
    torsion_free = is_torsion_free(gamma).torsion_free
    factorization = _factorize(m)
    sylow = []
    for p, _ in factorization:
        indices = sylow_subgroup(group, p)
        sylow.append(
            SylowInfo(
                prime=p,
                order=len(indices),
                min_generators=subgroup_min_generators(group, indices),
                fixed_rank=fixed_lattice(group, indices).rank,
            )
        )
    cyc = group.cyclic_generator()
    cyclic_m3 = cyc is not None and m >= 3
    has_big_prime = any(p > 3 for p, _ in factorization)
    theorems = [
        TheoremBound(
            "THEOREM_A_I",
            cyclic_m3 and has_big_prime,
            n - 2 if cyclic_m3 and has_big_prime else None,
        ),
        TheoremBound(
            "THEOREM_A_II",
            cyclic_m3 and not has_big_prime and torsion_free,
            n - 1 if cyclic_m3 and not has_big_prime and torsion_free else None,
        ),
    ]
    coprime6 = m % 2 != 0 and m % 3 != 0
    if sylow:
        max_d = max(s.min_generators for s in sylow)
        details = (
            ("max_sylow_generators", max_d),
            ("holonomy_generator_bound", max_d + 1),
            ("min_sylow_fixed_rank", min(s.fixed_rank for s in sylow)),
        )
    else:
        details = ()
    theorems.append(TheoremBound("THEOREM_B", coprime6, n if coprime6 else None, details))
    pair = find_generating_pair(group)
    c_applies = torsion_free and pair is not None
    pair_details = ()
    if pair is not None:
        pair_details = (
            ("pair_indices", pair),
            ("pair_orders", (group.order(pair[0]), group.order(pair[1]))),
        )
    theorems.append(TheoremBound("THEOREM_C", c_applies, n if c_applies else None, pair_details))
    theorems.append(
        TheoremBound("COROLLARY_4_1", torsion_free, 2 * n if torsion_free else None)
    )
    simple = is_simple_group(group) and m != 2
    cor42 = torsion_free and simple
    theorems.append(TheoremBound("COROLLARY_4_2", cor42, n - 1 if cor42 else None))
    best = reduction
    if best is None and with_reduction:
        best = auto_reduce(gamma, budget=budget, seed=seed)
    return BoundReport(
        name=gamma.name,
        dim=n,
        order=m,
        factorization=factorization,
        torsion_free=torsion_free,
        sylow=tuple(sylow),
        theorems=tuple(theorems),
        best=best,
    )
