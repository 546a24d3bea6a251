"""Group law, lift tables, normalization, torsion, fixed lattices, splits."""

import random
from fractions import Fraction

import pytest

from flatgroup.crystal import (
    AffineElement,
    CrystalGroup,
    InfiniteOrExceedsCap,
    NotNormalized,
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
    normalize_lattice,
    norm_matrix,
    translation_subgroup,
)
from flatgroup.linalg import IntMatrix, Lattice, NotUnimodular, RatVector

from helpers import (
    ROT3,
    ROT4,
    build_crystal,
    c3_dim3_spec_example,
    hantzsche_wendt,
    klein_bottle,
    klein_with_torsion,
    rv,
    torsion_box_oracle,
    torus,
    affine_eq,
)


class TestEnumerateHolonomy:
    def test_trivial(self):
        g = enumerate_holonomy([IntMatrix.identity(2)])
        assert g.size == 1

    def test_c4(self):
        g = enumerate_holonomy([ROT4])
        assert g.size == 4
        assert g.order(g.index_of(ROT4)) == 4

    def test_klein_four(self):
        g = enumerate_holonomy(
            [IntMatrix.from_rows([[1, 0], [0, -1]]), IntMatrix.from_rows([[-1, 0], [0, 1]])]
        )
        assert g.size == 4
        assert all(g.order(i) in (1, 2) for i in range(4))

    def test_cap(self):
        with pytest.raises(InfiniteOrExceedsCap):
            enumerate_holonomy([IntMatrix.from_rows([[1, 1], [0, 1]])], cap=50)

    def test_not_unimodular(self):
        with pytest.raises(NotUnimodular):
            enumerate_holonomy([IntMatrix.from_rows([[2, 0], [0, 1]])])

    def test_table_closed(self):
        g = enumerate_holonomy([ROT3])
        for i in range(g.size):
            assert 0 <= g.inv(i) < g.size
            for j in range(g.size):
                assert 0 <= g.mul(i, j) < g.size
        table = g.multiplication_table()
        assert len(table) == g.size

    def test_s3_permutations(self):
        p12 = IntMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        p23 = IntMatrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        g = enumerate_holonomy([p12, p23])
        assert g.size == 6
        assert g.cyclic_generator() is None
        assert g.closure(g.generator_indices()) == frozenset(range(6))


class TestAffineOps:
    def test_pure_translations(self):
        g = enumerate_holonomy([], dim=2)
        a = lattice_element((1, 2), g)
        b = lattice_element((3, -1), g)
        assert affine_mul(a, b, g).translation == rv(4, 1)

    def test_klein_square(self):
        gamma = klein_bottle()
        g = gamma.holonomy
        alpha = AffineElement(gamma.lifts[0], g.index_of(gamma.holonomy.generators[0]))
        sq = affine_mul(alpha, alpha, g)
        assert affine_eq(sq, lattice_element((1, 0), g))

    def test_torsion_square(self):
        gamma = klein_with_torsion()
        g = gamma.holonomy
        alpha = AffineElement(gamma.lifts[0], g.index_of(gamma.holonomy.generators[0]))
        sq = affine_mul(alpha, alpha, g)
        assert affine_eq(sq, affine_identity(g))

    def test_inverse(self):
        gamma = c3_dim3_spec_example()
        g = gamma.holonomy
        rng = random.Random(2)
        for _ in range(50):
            p = AffineElement(
                rv(*(Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3))) for _ in range(3))),
                rng.randrange(g.size),
            )
            assert affine_eq(affine_mul(p, affine_inv(p, g), g), affine_identity(g))

    def test_associativity_random(self):
        for gamma in (klein_bottle(), c3_dim3_spec_example(), hantzsche_wendt()):
            g = gamma.holonomy
            rng = random.Random(5)
            for _ in range(1000):
                ps = [
                    AffineElement(
                        rv(*(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(gamma.dim))),
                        rng.randrange(g.size),
                    )
                    for _ in range(3)
                ]
                left = affine_mul(affine_mul(ps[0], ps[1], g), ps[2], g)
                right = affine_mul(ps[0], affine_mul(ps[1], ps[2], g), g)
                assert affine_eq(left, right)

    def test_pow(self):
        gamma = c3_dim3_spec_example()
        g = gamma.holonomy
        alpha = AffineElement(gamma.lifts[0], g.index_of(gamma.holonomy.generators[0]))
        cube = affine_pow(alpha, 3, g)
        assert affine_eq(cube, lattice_element((0, 0, 1), g))
        assert affine_eq(affine_pow(alpha, -3, g), lattice_element((0, 0, -1), g))


class TestLiftTable:
    def test_trivial(self):
        table = lift_all(torus(2))
        assert table == (rv(0, 0),)

    def test_single_edge(self):
        gamma = klein_bottle()
        table = lift_all(gamma)
        assert table[0] == rv(0, 0)
        assert table[1] == rv(Fraction(1, 2), 0)

    def test_cocycle_congruence(self):
        # a_{gh} == a_g + rho(g) a_h  (mod Z^n) for all pairs
        for gamma in (klein_bottle(), c3_dim3_spec_example(), hantzsche_wendt()):
            g = gamma.holonomy
            table = lift_all(gamma)
            for i in range(g.size):
                for j in range(g.size):
                    lhs = table[g.mul(i, j)]
                    rhs = table[i] + g.matrix(i).apply_rat(table[j])
                    assert (lhs - rhs).is_integral()

    def test_c3_power_congruence(self):
        gamma = c3_dim3_spec_example()
        g = gamma.holonomy
        table = lift_all(gamma)
        gi = g.index_of(gamma.holonomy.generators[0])
        g2 = g.mul(gi, gi)
        diff = table[g2] - (table[gi] + g.matrix(gi).apply_rat(table[gi]))
        assert diff.is_integral()


class TestTranslationSubgroup:
    def test_integral_lifts(self):
        gamma = build_crystal([ROT4], [rv(0, 0)])
        assert translation_subgroup(gamma).is_standard()

    def test_klein(self):
        assert translation_subgroup(klein_bottle()).is_standard()

    def test_half_translation_extension(self):
        # identity holonomy generator carrying a pure translation (1/2, 0)
        gamma = build_crystal([IntMatrix.identity(2)], [rv(Fraction(1, 2), 0)])
        lat = translation_subgroup(gamma)
        assert not lat.is_standard()
        assert lat.index_over_standard() == 2
        basis = lat.basis_rational()
        assert rv(Fraction(1, 2), 0) in basis or rv(Fraction(-1, 2), 0) in basis


class TestNormalize:
    def test_identity_on_normalized(self):
        gamma = klein_bottle()
        out, t = normalize_lattice(gamma)
        assert out is gamma
        assert t.is_identity()

    def test_rescales(self):
        gamma = build_crystal([IntMatrix.identity(2)], [rv(Fraction(1, 2), 0)])
        out, t = normalize_lattice(gamma)
        assert translation_subgroup(out).is_standard()
        out2, t2 = normalize_lattice(out)
        assert t2.is_identity()

    def test_holonomy_stays_unimodular(self):
        gamma = build_crystal(
            [IntMatrix.from_rows([[1, 0], [0, -1]]), IntMatrix.identity(2)],
            [rv(Fraction(1, 2), 0), rv(0, Fraction(1, 3))],
        )
        out, _ = normalize_lattice(gamma)
        assert translation_subgroup(out).is_standard()
        for g in out.holonomy.generators:
            assert g.is_unimodular()


class TestTorsion:
    def test_klein_torsion_free(self):
        res = is_torsion_free(klein_bottle())
        assert res.torsion_free and res.witness is None

    def test_flipped_lift_torsion(self):
        res = is_torsion_free(klein_with_torsion())
        assert not res.torsion_free
        w = res.witness
        assert w is not None
        g = klein_with_torsion().holonomy
        # witness squares to the identity
        sq = affine_mul(w, w, g)
        assert affine_eq(sq, affine_identity(g))

    def test_torus_torsion_free(self):
        assert is_torsion_free(torus(3)).torsion_free

    def test_requires_normalized(self):
        gamma = build_crystal([IntMatrix.identity(2)], [rv(Fraction(1, 2), 0)])
        with pytest.raises(NotNormalized):
            is_torsion_free(gamma)

    def test_hantzsche_wendt_torsion_free(self):
        assert is_torsion_free(hantzsche_wendt()).torsion_free

    def test_agrees_with_box_oracle_fixtures(self):
        for gamma in (
            torus(2),
            klein_bottle(),
            klein_with_torsion(),
            c3_dim3_spec_example(),
            hantzsche_wendt(),
            build_crystal([ROT4], [rv(0, 0)]),
        ):
            assert is_torsion_free(gamma).torsion_free == torsion_box_oracle(gamma)

    def test_agrees_with_box_oracle_random(self):
        rng = random.Random(77)
        gens_pool = [
            [IntMatrix.from_rows([[1, 0], [0, -1]])],
            [ROT4],
            [ROT3],
            [IntMatrix.block_diag([IntMatrix.identity(1), ROT3])],
        ]
        checked = 0
        for _ in range(60):
            gens = rng.choice(gens_pool)
            n = gens[0].rows
            lifts = [
                rv(*(Fraction(rng.randint(0, 5), rng.choice((1, 2, 3, 4))) for _ in range(n)))
                for _ in gens
            ]
            gamma = build_crystal(gens, lifts)
            gamma, _ = normalize_lattice(gamma)
            assert is_torsion_free(gamma).torsion_free == torsion_box_oracle(gamma)
            checked += 1
        assert checked == 60


class TestFixedLattice:
    def test_reflection(self):
        g = enumerate_holonomy([IntMatrix.from_rows([[1, 0], [0, -1]])])
        assert fixed_lattice(g) == Lattice.from_vectors(2, [(1, 0)])

    def test_rotation(self):
        g = enumerate_holonomy([ROT4])
        assert fixed_lattice(g).is_zero()

    def test_trivial_group(self):
        g = enumerate_holonomy([], dim=3)
        assert fixed_lattice(g) == Lattice.standard(3)

    def test_subgroup_selection(self):
        gamma = hantzsche_wendt()
        g = gamma.holonomy
        # full Klein four group fixes nothing, each involution fixes a line
        assert fixed_lattice(g).is_zero()
        for i in range(g.size):
            if i != g.identity_index:
                assert fixed_lattice(g, [i]).rank == 1


class TestNormMatrix:
    def test_klein(self):
        g = klein_bottle().holonomy
        i = g.index_of(g.generators[0])
        assert norm_matrix(g, i) == IntMatrix.from_rows([[2, 0], [0, 0]])


class TestCoinvariantSplit:
    def test_identity_element(self):
        gamma = torus(3)
        split = coinvariant_split(gamma, 0)
        assert split.head_dim == 0 and split.tail_dim == 3

    def test_spec_example_already_split(self):
        gamma = c3_dim3_spec_example()
        g = gamma.holonomy
        gi = g.index_of(gamma.holonomy.generators[0])
        split = coinvariant_split(gamma, gi)
        assert split.head_dim == 2 and split.tail_dim == 1
        conj = split.transform.inverse @ g.matrix(gi) @ split.transform.forward
        assert conj.entries[2] == (0, 0, 1)

    def test_block_shape_and_tail_additivity(self):
        rng = random.Random(9)
        fixtures = [klein_bottle(), c3_dim3_spec_example()]
        for gamma in fixtures:
            g = gamma.holonomy
            gi = g.index_of(gamma.holonomy.generators[0])
            split = coinvariant_split(gamma, gi)
            conj_gamma = conjugate_crystal(gamma, split.transform)
            cg = conj_gamma.holonomy
            head = split.head_dim
            # every element of the conjugated cyclic group has tail rows (0 | I)
            for i in range(cg.size):
                m = cg.matrix(i)
                for r in range(head, gamma.dim):
                    for c in range(gamma.dim):
                        assert m.entries[r][c] == (1 if r == c else 0)
            # tail coordinates add under the group law
            for _ in range(200):
                p = AffineElement(
                    rv(*(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(gamma.dim))),
                    rng.randrange(cg.size),
                )
                q = AffineElement(
                    rv(*(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(gamma.dim))),
                    rng.randrange(cg.size),
                )
                prod = affine_mul(p, q, cg)
                for r in range(head, gamma.dim):
                    assert prod.translation.coords[r] == (
                        p.translation.coords[r] + q.translation.coords[r]
                    )

    def test_tail_dim_is_fixed_rank(self):
        for gamma in (klein_bottle(), c3_dim3_spec_example(), hantzsche_wendt()):
            g = gamma.holonomy
            for i in range(g.size):
                split = coinvariant_split(gamma, i)
                assert split.tail_dim == fixed_lattice(g, [i]).rank


class TestConjugation:
    def test_roundtrip(self):
        gamma = c3_dim3_spec_example()
        gi = gamma.holonomy.index_of(gamma.holonomy.generators[0])
        split = coinvariant_split(gamma, gi)
        conj = conjugate_crystal(gamma, split.transform)
        assert conj.holonomy.size == gamma.holonomy.size
        # element indices carry over: matrices are conjugates slotwise
        for i in range(gamma.holonomy.size):
            lhs = split.transform.inverse @ gamma.holonomy.matrix(i) @ split.transform.forward
            assert lhs == conj.holonomy.matrix(i)
        # affine elements map across and back
        table = lift_all(gamma)
        for i in range(gamma.holonomy.size):
            elem = AffineElement(table[i], i)
            moved = map_affine(elem, split.transform, forward=False)
            back = map_affine(moved, split.transform, forward=True)
            assert affine_eq(back, elem)
