"""Z^n as a module over a finite matrix group: spans, ranks, bounds.

The central question is how few vectors generate Z^n once the group orbit
of each vector is thrown in.  `rank_upper_search` answers constructively
(a verified generating set), `coinvariant_lower_bound` bounds from below,
and `bound_prime` / `bound_cyclic` evaluate the closed-form bounds that
hold for faithful cyclic actions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Optional, Sequence

from .crystal import HolonomyGroup, enumerate_holonomy, fixed_lattice
from .linalg import (
    FlatGroupError,
    IncrementalLattice,
    IntMatrix,
    cyclotomic,
    euler_phi,
    hnf,
    int_inverse,
    matrix_order,
    snf,
)


class NoFaithfulAction(FlatGroupError):
    """The requested faithful action cannot exist in this dimension."""


class NoOrderFourBlock(FlatGroupError):
    """The supplied block decomposition has no 2-dimensional order-4 block."""


@dataclass(frozen=True, eq=False)
class GModule:
    """The lattice Z^dim acted on by a finite unimodular matrix group."""

    dim: int
    action: HolonomyGroup

    def __post_init__(self):
        if self.action.dim != self.dim:
            raise ValueError("action dimension mismatch")


def cyclic_module(m: IntMatrix, cap: int = 20000) -> GModule:
    """Module over the cyclic group generated by a single finite-order matrix."""
    return GModule(m.rows, enumerate_holonomy([m], cap=cap))


def orbit_vectors(module: GModule, vec: Sequence[int]) -> list[tuple[int, ...]]:
    return [module.action.matrix(i).apply(vec) for i in range(module.action.size)]


def zg_span_is_full(vectors: Iterable[Sequence[int]], module: GModule) -> bool:
    """True iff the orbit lattice of the vectors has index 1 in Z^n.

    Reference implementation: stack every orbit vector as a column, take
    the HNF and check that the pivot product is 1.
    """
    cols: list[tuple[int, ...]] = []
    for v in vectors:
        cols.extend(orbit_vectors(module, v))
    if not cols:
        return False
    h, _ = hnf(IntMatrix.from_columns(cols))
    nonzero = [col for col in h.columns() if any(col)]
    if len(nonzero) != module.dim:
        return False
    det = 1
    for col in nonzero:
        det *= col[max(i for i, v in enumerate(col) if v)]
    return abs(det) == 1


def coinvariant_lower_bound(module: GModule) -> int:
    """Minimal generator count of the coinvariant group
    Z^n / <(rho(g) - I) x>, a lower bound for the module generator rank.

    Computed from the Smith invariant factors: free rank plus the number
    of nontrivial torsion factors.
    """
    group = module.action
    n = module.dim
    eye = IntMatrix.identity(n)
    mats = [group.matrix(i) - eye for i in range(group.size) if i != group.identity_index]
    if not mats:
        return n
    stacked = mats[0]
    for m in mats[1:]:
        stacked = stacked.hstack(m)
    s, _, _ = snf(stacked)
    diag = [s.entries[i][i] for i in range(min(s.rows, s.cols))]
    rank = sum(1 for d in diag if d != 0)
    torsion = sum(1 for d in diag if d > 1)
    return (n - rank) + torsion


def default_pool(module: GModule) -> list[tuple[int, ...]]:
    """Deterministic candidate pool for the rank search: the standard
    basis, a basis of the fixed lattice, then all two-coordinate integer
    combinations with coefficients in [-2, 2] (sign-canonicalized)."""
    n = module.dim
    pool: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()

    def push(vec: tuple[int, ...]):
        if not any(vec):
            return
        first = next(v for v in vec if v)
        if first < 0:
            vec = tuple(-v for v in vec)
        if vec not in seen:
            seen.add(vec)
            pool.append(vec)

    for i in range(n):
        push(tuple(1 if j == i else 0 for j in range(n)))
    for col in fixed_lattice(module.action).basis:
        push(col)
    coeffs = (-2, -1, 1, 2)
    for i, j in itertools.combinations(range(n), 2):
        for a in coeffs:
            for b in coeffs:
                vec = [0] * n
                vec[i], vec[j] = a, b
                push(tuple(vec))
    return pool


@dataclass(frozen=True, slots=True)
class RankBounds:
    """Result of a generator-rank search; `upper_witness` is always a
    verified generating set."""

    lower: int
    upper: int
    upper_witness: tuple[tuple[int, ...], ...]
    formula_bound: Optional[tuple[str, int]]
    flags: tuple[str, ...] = ()


def _formula_bound(module: GModule) -> Optional[tuple[str, int]]:
    group = module.action
    if group.cyclic_generator() is None or group.size < 3:
        return None
    return ("cyclic", bound_cyclic(group.size, module.dim))


def rank_upper_search(
    module: GModule,
    pool: Optional[Sequence[Sequence[int]]] = None,
    budget: int = 100000,
    seed: Optional[int] = None,
) -> RankBounds:
    """Smallest generating set found within budget, searched by subset
    size then lexicographic pool order.

    Sizes below the coinvariant lower bound are skipped (no such set can
    generate).  The remaining budget is split evenly over the remaining
    sizes, so an exhaustive sweep of one hopeless size cannot starve the
    larger sizes; a sweep cut short this way is flagged
    SIZE_SWEEP_TRUNCATED (the result is then verified but possibly not
    pool-minimal).  The standard basis is always a fallback witness, so
    the returned upper bound is verified even when the budget runs out
    (flagged BUDGET_EXHAUSTED).  EXCEEDS_FORMULA_BOUND is flagged when the
    found size is worse than the applicable closed-form bound.  A seed
    shuffles the pool beyond the standard-basis head, changing the witness
    but never the reported size."""
    n = module.dim
    if pool is None:
        pool_list = default_pool(module)
    else:
        pool_list = [tuple(int(x) for x in v) for v in pool]
    if seed is not None:
        head = n if [tuple(v) for v in pool_list[:n]] == [
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        ] else 0
        tail = pool_list[head:]
        random.Random(seed).shuffle(tail)
        pool_list = pool_list[:head] + tail

    basis = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    lower = coinvariant_lower_bound(module)
    flags: list[str] = []
    best_size, best_witness = n, basis

    orbits: list[IncrementalLattice] = []
    for v in pool_list:
        acc = IncrementalLattice(n)
        acc.add_all(orbit_vectors(module, v))
        orbits.append(acc)

    spent = 0
    found = False
    start = max(1, lower)
    for size in range(start, n):
        if found or spent >= budget:
            break
        for combo in itertools.combinations(range(len(pool_list)), size):
            if spent >= budget:
                flags.append("BUDGET_EXHAUSTED")
                break
            spent += 1
            acc = orbits[combo[0]].copy()
            for idx in combo[1:]:
                acc.merge(orbits[idx])
            if acc.is_full():
                best_size = size
                best_witness = tuple(pool_list[i] for i in combo)
                found = True
                break

    if not zg_span_is_full(best_witness, module):
        raise FlatGroupError("rank search produced an unverified witness (bug)")
    formula = _formula_bound(module)
    if formula is not None and best_size > formula[1]:
        flags.append("EXCEEDS_FORMULA_BOUND")
    return RankBounds(lower, best_size, best_witness, formula, tuple(flags))


# ---------------------------------------------------------------------------
# Closed-form bounds for faithful cyclic actions


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def bound_prime(p: int, n: int) -> int:
    """Generator-rank bound n - p + a for a faithful order-p action on Z^n,
    with a = 2 for p <= 19 (class number one) and a = 3 otherwise."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < p - 1:
        raise NoFaithfulAction(f"a faithful C_{p}-action needs dimension >= {p - 1}")
    a = 2 if p <= 19 else 3
    return n - p + a


def bound_cyclic(m: int, n: int) -> int:
    """Generator-rank bound for a faithful order-m action on Z^n, m >= 3:
    n - 3 when m has a prime factor above 3, else n - 1.

    Feasibility of a faithful action in dimension n is not checked."""
    if m < 3:
        raise ValueError("bound requires m >= 3")
    if any(p > 3 for p in prime_factors(m)):
        return n - 3
    return n - 1


# ---------------------------------------------------------------------------
# Order-4 block reduction


def _single_block_generator(block: IntMatrix) -> Optional[tuple[int, ...]]:
    # (0, 1) first (the canonical rotation choice), then growing boxes
    def generates(w):
        span = IncrementalLattice(2)
        span.add(w)
        span.add(block.apply(w))
        return span.is_full()

    if generates((0, 1)):
        return (0, 1)
    for bound in range(1, 11):
        for w in itertools.product(range(-bound, bound + 1), repeat=2):
            if any(w) and generates(w):
                return tuple(w)
    return None


def c4_block_reduce(
    module: GModule,
    block_sizes: Sequence[int],
    element_index: Optional[int] = None,
) -> tuple[tuple[int, ...], ...]:
    """Generators contributed blockwise for a designated block-diagonal
    order-4 element: each 2-dimensional order-4 block contributes one
    vector (its (0,1) in block coordinates whenever that works), every
    other block contributes its standard basis.  Total is at most n - 1.
    """
    group = module.action
    n = module.dim
    if sum(block_sizes) != n:
        raise ValueError("block sizes must partition the dimension")
    if element_index is None:
        element_index = next(
            (i for i in range(group.size) if group.order(i) == 4), None
        )
        if element_index is None:
            raise NoOrderFourBlock("no order-4 element in the action group")
    if group.order(element_index) != 4:
        raise ValueError("designated element does not have order 4")
    m = group.matrix(element_index)
    starts = [sum(block_sizes[:i]) for i in range(len(block_sizes))]
    for start, size in zip(starts, block_sizes):
        for r in range(start, start + size):
            for c in range(n):
                if not (start <= c < start + size) and m.entries[r][c] != 0:
                    raise ValueError("matrix is not block-diagonal for the given sizes")

    out: list[tuple[int, ...]] = []
    found_c4 = False
    for start, size in zip(starts, block_sizes):
        block = IntMatrix.from_rows(
            [row[start : start + size] for row in m.entries[start : start + size]]
        )
        if size == 2 and matrix_order(block) == 4:
            found_c4 = True
            w = _single_block_generator(block)
            if w is None:
                raise FlatGroupError("no single generator found for an order-4 block")
            vec = [0] * n
            vec[start], vec[start + 1] = w
            out.append(tuple(vec))
        else:
            for j in range(size):
                vec = [0] * n
                vec[start + j] = 1
                out.append(tuple(vec))
    if not found_c4:
        raise NoOrderFourBlock("no 2-dimensional order-4 block in the decomposition")
    assert len(out) <= n - 1
    return tuple(out)


# ---------------------------------------------------------------------------
# Seeded module generation (for sweeps and the acceptance suite)


def permutation_cycle_matrix(d: int) -> IntMatrix:
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[(i + 1) % d][i] = 1
    return IntMatrix.from_rows(rows)


def random_cyclic_module(rng: random.Random, m: int, max_dim: int = 6) -> GModule:
    """A faithful C_m-module on Z^n (n <= max_dim) assembled from
    cyclotomic-companion, cyclic-permutation and trivial blocks, then
    conjugated by a random signed permutation.  Deterministic in `rng`."""
    divisors = [d for d in range(2, m + 1) if m % d == 0]

    def block_options(remaining: int):
        opts: list[tuple[str, int, int]] = []  # (kind, d, size)
        for d in divisors:
            if euler_phi(d) <= remaining:
                opts.append(("comp", d, euler_phi(d)))
            if d <= remaining:
                opts.append(("perm", d, d))
        if remaining >= 1:
            opts.append(("triv", 1, 1))
        return opts

    while True:
        remaining = max_dim
        blocks: list[tuple[str, int, int]] = []
        while remaining > 0:
            opts = block_options(remaining)
            if blocks and rng.random() < 0.35:
                break
            blocks.append(rng.choice(opts))
            remaining -= blocks[-1][2]
        if lcm(*(b[1] for b in blocks)) != m:
            continue
        mats = []
        for kind, d, size in blocks:
            if kind == "comp":
                mats.append(IntMatrix.companion(cyclotomic(d)))
            elif kind == "perm":
                mats.append(permutation_cycle_matrix(d))
            else:
                mats.append(IntMatrix.identity(1))
        full = IntMatrix.block_diag(mats)
        n = full.rows
        perm = rng.sample(range(n), n)
        signs = [rng.choice((-1, 1)) for _ in range(n)]
        p_rows = [[0] * n for _ in range(n)]
        for i in range(n):
            p_rows[perm[i]][i] = signs[i]
        p = IntMatrix.from_rows(p_rows)
        conj = int_inverse(p) @ full @ p
        if matrix_order(conj) != m:
            raise FlatGroupError("generated module lost faithfulness (bug)")
        return cyclic_module(conj)
