"""Crystallographic group model.

A crystallographic group here is the subgroup of Aff(R^n) generated by the
integer translations Z^n together with one affine element per listed
holonomy generator.  The finite holonomy is stored as a fully enumerated
integer matrix group; translations are exact rationals.

Elements are pairs ``(a, g)`` of a rational translation and a holonomy
index, multiplying as ``(a, g)(b, h) = (a + g.b, gh)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .linalg import (
    FlatGroupError,
    IncrementalLattice,
    IntMatrix,
    Lattice,
    NotUnimodular,
    RatMatrix,
    RatVector,
    RationalTransform,
    UnimodularTransform,
    int_inverse,
    integer_kernel,
    saturate,
    snf,
    solve_integer,
)


class InfiniteOrExceedsCap(FlatGroupError):
    """Closure of the generators grew past the configured cap."""


class NotNormalized(FlatGroupError):
    """Operation requires the translation subgroup to be exactly Z^n."""


DEFAULT_CAP = 20000


@dataclass(frozen=True, eq=False)
class HolonomyGroup:
    """A finite subgroup of GL_n(Z), fully enumerated.

    ``elements[0]`` is the identity.  ``tree[i]`` records how element i was
    first reached in the generator BFS: ``(parent_index, generator_pos)``,
    with ``tree[0] = None``.  That fixed spanning tree is what makes lift
    tables and transversals reproducible.

    Equality/hash are identity-based; groups are built once and shared.
    """

    dim: int
    generators: tuple[IntMatrix, ...]
    elements: tuple[IntMatrix, ...]
    tree: tuple[Optional[tuple[int, int]], ...]
    index: dict = field(repr=False)
    _mul_cache: dict = field(default_factory=dict, repr=False)
    _inv_cache: dict = field(default_factory=dict, repr=False)
    _order_cache: dict = field(default_factory=dict, repr=False)

    identity_index = 0

    @property
    def size(self) -> int:
        return len(self.elements)

    def matrix(self, i: int) -> IntMatrix:
        return self.elements[i]

    def index_of(self, m: IntMatrix) -> int:
        try:
            return self.index[m]
        except KeyError:
            raise KeyError(f"matrix not in the enumerated group: {m.entries}")

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        got = self._mul_cache.get(key)
        if got is None:
            got = self.index_of(self.elements[i] @ self.elements[j])
            self._mul_cache[key] = got
        return got

    def inv(self, i: int) -> int:
        got = self._inv_cache.get(i)
        if got is None:
            got = self.index_of(int_inverse(self.elements[i]))
            self._inv_cache[i] = got
        return got

    def order(self, i: int) -> int:
        got = self._order_cache.get(i)
        if got is None:
            k, j = 1, i
            while j != self.identity_index:
                j = self.mul(j, i)
                k += 1
            got = k
            self._order_cache[i] = got
        return got

    def power(self, i: int, k: int) -> int:
        k %= self.order(i)
        j = self.identity_index
        for _ in range(k):
            j = self.mul(j, i)
        return j

    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index_of(g) for g in self.generators)

    def closure(self, indices: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        seen = {self.identity_index}
        queue = [self.identity_index]
        gens = [i for i in indices]
        while queue:
            v = queue.pop()
            for g in gens:
                w = self.mul(v, g)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def multiplication_table(self) -> tuple[tuple[int, ...], ...]:
        """Full composition table; materialized on demand."""
        return tuple(tuple(self.mul(i, j) for j in range(self.size)) for i in range(self.size))

    def cyclic_generator(self) -> Optional[int]:
        """Index of the first element whose powers cover the group."""
        for i in range(self.size):
            if self.order(i) == self.size:
                return i
        return None


def enumerate_holonomy(
    gens: Sequence[IntMatrix], cap: int = DEFAULT_CAP, dim: Optional[int] = None
) -> HolonomyGroup:
    """BFS closure of a finite matrix group; raises InfiniteOrExceedsCap
    when the closure grows past ``cap``.

    New elements are discovered as ``known * generator``, generators in
    listed order, so the resulting element order and spanning tree are
    deterministic functions of the input.
    """
    if not gens:
        if dim is None:
            raise ValueError("dim is required when there are no generators")
        eye = IntMatrix.identity(dim)
        return HolonomyGroup(dim, (), (eye,), (None,), {eye: 0})
    n = gens[0].rows
    for g in gens:
        if not g.is_square or g.rows != n:
            raise ValueError("generators must be square matrices of equal dimension")
        if abs(g.det()) != 1:
            raise NotUnimodular(f"generator with determinant {g.det()}")
    if dim is not None and dim != n:
        raise ValueError(f"declared dimension {dim} != matrix dimension {n}")
    eye = IntMatrix.identity(n)
    elements = [eye]
    index = {eye: 0}
    tree: list[Optional[tuple[int, int]]] = [None]
    head = 0
    while head < len(elements):
        v = head
        head += 1
        for gi, g in enumerate(gens):
            w = elements[v] @ g
            if w not in index:
                if len(elements) >= cap:
                    raise InfiniteOrExceedsCap(
                        f"holonomy closure exceeded cap of {cap} elements"
                    )
                index[w] = len(elements)
                elements.append(w)
                tree.append((v, gi))
    return HolonomyGroup(n, tuple(gens), tuple(elements), tuple(tree), index)


# ---------------------------------------------------------------------------
# Affine elements


@dataclass(frozen=True, slots=True)
class AffineElement:
    """Pair (translation, holonomy index into the group table)."""

    translation: RatVector
    holonomy_index: int

    def is_pure_translation(self) -> bool:
        return self.holonomy_index == HolonomyGroup.identity_index


VectorSystem = tuple[RatVector, ...]


def affine_identity(group: HolonomyGroup) -> AffineElement:
    return AffineElement(RatVector.zero(group.dim), group.identity_index)


def lattice_element(vec: Sequence[int] | RatVector, group: HolonomyGroup) -> AffineElement:
    if not isinstance(vec, RatVector):
        vec = RatVector.from_ints(vec)
    return AffineElement(vec, group.identity_index)


def affine_mul(p: AffineElement, q: AffineElement, group: HolonomyGroup) -> AffineElement:
    rho = group.matrix(p.holonomy_index)
    return AffineElement(
        p.translation + rho.apply_rat(q.translation),
        group.mul(p.holonomy_index, q.holonomy_index),
    )


def affine_inv(p: AffineElement, group: HolonomyGroup) -> AffineElement:
    j = group.inv(p.holonomy_index)
    rho = group.matrix(j)
    return AffineElement(-rho.apply_rat(p.translation), j)


def affine_pow(p: AffineElement, k: int, group: HolonomyGroup) -> AffineElement:
    if k < 0:
        return affine_pow(affine_inv(p, group), -k, group)
    out = affine_identity(group)
    for _ in range(k):
        out = affine_mul(out, p, group)
    return out


# ---------------------------------------------------------------------------
# Crystal groups


@dataclass(frozen=True, eq=False)
class CrystalGroup:
    """Z^n extended by a finite holonomy group with chosen generator lifts.

    ``lifts[k]`` is the translation part of the lift of ``generators[k]``.
    The group itself is <(e_i, I) for all i> u <(lifts[k], generators[k])>.
    """

    dim: int
    holonomy: HolonomyGroup
    lifts: VectorSystem
    name: Optional[str] = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.lifts) != len(self.holonomy.generators):
            raise ValueError("one lift per holonomy generator is required")
        for v in self.lifts:
            if v.dim != self.dim:
                raise ValueError("lift of wrong dimension")
        if self.holonomy.dim != self.dim:
            raise ValueError("holonomy dimension mismatch")


FullLiftTable = tuple[RatVector, ...]


def lift_all(gamma: CrystalGroup) -> FullLiftTable:
    """One lift translation per holonomy element, along the BFS spanning
    tree: a_identity = 0 and a_{v*s} = a_v + rho(v) * lift_s."""
    got = gamma._cache.get("lifts")
    if got is not None:
        return got
    group = gamma.holonomy
    table: list[Optional[RatVector]] = [None] * group.size
    table[group.identity_index] = RatVector.zero(gamma.dim)
    for w in range(group.size):
        edge = group.tree[w]
        if edge is None:
            continue
        v, gi = edge
        table[w] = table[v] + group.matrix(v).apply_rat(gamma.lifts[gi])
    out = tuple(table)  # type: ignore[arg-type]
    gamma._cache["lifts"] = out
    return out


@dataclass(frozen=True, slots=True)
class ScaledLattice:
    """A rational lattice (1/denominator) * integer_lattice, used for
    translation subgroups which contain (and may exceed) Z^n."""

    denominator: int
    scaled: Lattice  # the integer lattice denominator * L

    @property
    def ambient_dim(self) -> int:
        return self.scaled.ambient_dim

    @property
    def rank(self) -> int:
        return self.scaled.rank

    def is_standard(self) -> bool:
        n = self.ambient_dim
        d = self.denominator
        return self.scaled == Lattice.from_vectors(
            n, [tuple(d if j == i else 0 for j in range(n)) for i in range(n)]
        )

    def basis_rational(self) -> tuple[RatVector, ...]:
        d = self.denominator
        return tuple(
            RatVector(tuple(Fraction(v, d) for v in col)) for col in self.scaled.basis
        )

    def index_over_standard(self) -> Fraction:
        """[L : Z^n] as an exact rational (an integer when Z^n <= L)."""
        n = self.ambient_dim
        det = 1
        for j, col in enumerate(self.scaled.basis):
            det *= col[max(i for i, v in enumerate(col) if v)]
        return Fraction(self.denominator**n, abs(det))


def translation_subgroup(gamma: CrystalGroup) -> ScaledLattice:
    """The full translation lattice of the group: Z^n together with every
    Schreier-generator translation t_g s t_{gs}^{-1} over the lift table."""
    got = gamma._cache.get("translations")
    if got is not None:
        return got
    group = gamma.holonomy
    n = gamma.dim
    table = lift_all(gamma)
    gen_indices = group.generator_indices()
    vectors: list[RatVector] = [RatVector.unit(n, i) for i in range(n)]
    for v in range(group.size):
        rho_v = group.matrix(v)
        for gi, si in enumerate(gen_indices):
            w = group.mul(v, si)
            t = table[v] + rho_v.apply_rat(gamma.lifts[gi]) - table[w]
            vectors.append(t)
    denom = lcm(*(v.denominator_lcm() for v in vectors))
    ints = [tuple((c * denom).numerator for c in v.coords) for v in vectors]
    out = ScaledLattice(denom, Lattice.from_vectors(n, ints))
    gamma._cache["translations"] = out
    return out


def normalize_lattice(gamma: CrystalGroup) -> tuple[CrystalGroup, RationalTransform]:
    """Change basis so the translation subgroup becomes exactly Z^n.

    Returns the rewritten group and the rational transform T with
    old_coords = T.forward * new_coords.  Idempotent: an already
    normalized group comes back unchanged with the identity transform.
    """
    lat = translation_subgroup(gamma)
    if lat.rank != gamma.dim:
        raise FlatGroupError("translation subgroup is not full rank")
    if lat.is_standard():
        return gamma, RationalTransform.identity(gamma.dim)
    fwd = RatMatrix.from_columns(lat.basis_rational())
    inv = fwd.inverse()
    new_gens = []
    for g in gamma.holonomy.generators:
        conj = inv @ RatMatrix.from_int(g) @ fwd
        if not conj.is_integral():
            raise FlatGroupError("holonomy does not preserve its translation lattice")
        m = conj.to_int_matrix()
        if abs(m.det()) != 1:
            raise NotUnimodular("conjugated holonomy generator is not unimodular")
        new_gens.append(m)
    new_lifts = tuple(inv.apply(v) for v in gamma.lifts)
    holonomy = enumerate_holonomy(new_gens, dim=gamma.dim)
    out = CrystalGroup(gamma.dim, holonomy, new_lifts, name=gamma.name)
    return out, RationalTransform(fwd, inv)


def require_normalized(gamma: CrystalGroup) -> None:
    if not translation_subgroup(gamma).is_standard():
        raise NotNormalized(
            "operation requires translation subgroup Z^n; call normalize_lattice first"
        )


def conjugate_crystal(gamma: CrystalGroup, t: UnimodularTransform) -> CrystalGroup:
    """Rewrite the group in the basis whose columns are t.forward.

    Conjugation is a group isomorphism, so the BFS enumeration of the new
    holonomy discovers elements in the same word order: element indices
    carry over unchanged.
    """
    new_gens = [t.inverse @ g @ t.forward for g in gamma.holonomy.generators]
    holonomy = enumerate_holonomy(new_gens, dim=gamma.dim)
    if holonomy.size != gamma.holonomy.size:
        raise FlatGroupError("conjugation changed the group order (bug)")
    new_lifts = tuple(t.inverse.apply_rat(v) for v in gamma.lifts)
    return CrystalGroup(gamma.dim, holonomy, new_lifts, name=gamma.name)


def map_affine(elem: AffineElement, t: UnimodularTransform, forward: bool) -> AffineElement:
    """Move an affine element across `conjugate_crystal`: forward=True maps
    new-basis elements back to the original coordinates."""
    m = t.forward if forward else t.inverse
    return AffineElement(m.apply_rat(elem.translation), elem.holonomy_index)


# ---------------------------------------------------------------------------
# Torsion


@dataclass(frozen=True, slots=True)
class TorsionResult:
    torsion_free: bool
    witness: Optional[AffineElement]  # a finite-order non-identity element


def norm_matrix(group: HolonomyGroup, i: int) -> IntMatrix:
    """Sum of rho(g)^s over s = 0..order(g)-1."""
    k = group.order(i)
    acc = IntMatrix.identity(group.dim)
    j = i
    for _ in range(k - 1):
        acc = acc + group.matrix(j)
        j = group.mul(j, i)
    return acc


def is_torsion_free(gamma: CrystalGroup) -> TorsionResult:
    """Torsion test for a normalized crystal group.

    The coset (a_g + Z^n, g) contains a finite-order element iff
    N_g x = -N_g a_g has an integer solution x, where N_g is the norm
    matrix of g; then ((a_g + x), g) has order dividing ord(g).  Cosets
    where N_g a_g is not integral trivially contain no torsion.  The first
    solvable coset in table order provides the witness.
    """
    require_normalized(gamma)
    group = gamma.holonomy
    table = lift_all(gamma)
    for g in range(group.size):
        if g == group.identity_index:
            continue
        ng = norm_matrix(group, g)
        rhs = ng.apply_rat(table[g])
        if not rhs.is_integral():
            continue
        sol = solve_integer(ng, tuple(-c for c in rhs.to_int_tuple()))
        if sol is not None:
            witness = AffineElement(table[g] + RatVector.from_ints(sol), g)
            return TorsionResult(False, witness)
    return TorsionResult(True, None)


# ---------------------------------------------------------------------------
# Fixed lattices and the coinvariant split


def fixed_lattice(
    group: HolonomyGroup, element_indices: Optional[Iterable[int]] = None
) -> Lattice:
    """Saturated lattice of vectors fixed by every listed element (by the
    whole group when none are listed).  Fixed by the generators is fixed by
    the subgroup they generate, so generators suffice."""
    if element_indices is None:
        mats = list(group.generators)
    else:
        mats = [group.matrix(i) for i in element_indices]
    mats = [m for m in mats if not m.is_identity()]
    if not mats:
        return Lattice.standard(group.dim)
    eye = IntMatrix.identity(group.dim)
    stacked = mats[0] - eye
    for m in mats[1:]:
        stacked = stacked.vstack(m - eye)
    return integer_kernel(stacked)


@dataclass(frozen=True, slots=True)
class CoinvariantSplit:
    """Basis change putting rho(g) into the block form [[A, B], [0, I_k]].

    transform.forward's columns are the new basis in old coordinates: the
    first head_dim of them span the saturation of im(rho(g) - I), the last
    tail_dim complete a basis of Z^n.  In the new basis the head block A
    fixes only 0 and tail translation coordinates add under the group law.
    """

    transform: UnimodularTransform
    head_dim: int
    tail_dim: int


def coinvariant_split(gamma: CrystalGroup, g: int) -> CoinvariantSplit:
    group = gamma.holonomy
    n = gamma.dim
    m = group.matrix(g)
    diff = m - IntMatrix.identity(n)
    image = saturate(Lattice.from_vectors(n, diff.columns()))
    k = n - image.rank
    if image.is_zero():
        transform = UnimodularTransform.identity(n)
    else:
        basis = image.basis_matrix()
        s, u, _ = snf(basis)
        for i in range(image.rank):
            if s.entries[i][i] != 1:
                raise FlatGroupError("saturated lattice with non-unit invariant factor (bug)")
        transform = UnimodularTransform(u.inverse, u.forward)
    conj = transform.inverse @ m @ transform.forward
    head = n - k
    for i in range(head, n):
        for j in range(n):
            expect = 1 if i == j else 0
            if (j >= head and conj.entries[i][j] != expect) or (j < head and conj.entries[i][j] != 0):
                raise FlatGroupError("coinvariant split has wrong block shape (bug)")
    if head:
        a_block = IntMatrix.from_rows([row[:head] for row in conj.entries[:head]])
        if not integer_kernel(a_block - IntMatrix.identity(head)).is_zero():
            raise FlatGroupError("head block fixes a nonzero vector (bug)")
    if fixed_lattice(group, [g]).rank != k:
        raise FlatGroupError("tail dimension disagrees with the fixed lattice (bug)")
    return CoinvariantSplit(transform, head, k)
