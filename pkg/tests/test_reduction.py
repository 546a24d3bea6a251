"""Generating-set verification, theorem pipelines, greedy, bound reports."""

import random
from fractions import Fraction

import pytest

from flatgroup.crystal import (
    AffineElement,
    affine_mul,
    is_torsion_free,
    lattice_element,
    lift_all,
    normalize_lattice,
)
from flatgroup.linalg import IntMatrix, RatVector
from flatgroup.reduction import (
    InputNotTorsionFree,
    NotAGeneratingPair,
    NotASubset,
    WrongHolonomyShape,
    auto_reduce,
    bound_report,
    cyclic_reduction_data,
    find_generating_pair,
    greedy_reduce,
    is_simple_group,
    naive_generating_set,
    normal_closure,
    reduce_cyclic,
    reduce_theorem_a_i,
    reduce_two_generated,
    subgroup_min_generators,
    sylow_subgroup,
    verify_generates,
)

from helpers import (
    build_crystal,
    c3_dim3_spec_example,
    hantzsche_wendt,
    klein_bottle,
    klein_with_torsion,
    phi5_dim5,
    rv,
    s3_sign_action,
    torus,
)


def drop_each_still_fails(gamma, report):
    """Spec invariant: removing any single element breaks generation."""
    for i in range(report.size):
        rest = report.generators[:i] + report.generators[i + 1 :]
        if rest and verify_generates(gamma, rest).ok:
            return False
    return True


class TestNaive:
    def test_torus(self):
        rep = naive_generating_set(torus(2))
        assert rep.size == 2 and rep.verified

    def test_klein(self):
        rep = naive_generating_set(klein_bottle())
        assert rep.size == 3 and rep.verified

    def test_c3(self):
        rep = naive_generating_set(c3_dim3_spec_example())
        assert rep.size == 4 and rep.verified


class TestVerify:
    def test_klein_two_element_set(self):
        gamma = klein_bottle()
        g = gamma.holonomy
        alpha = AffineElement(gamma.lifts[0], g.index_of(g.generators[0]))
        assert verify_generates(gamma, [lattice_element((0, 1), g), alpha]).ok

    def test_klein_lattice_only(self):
        gamma = klein_bottle()
        g = gamma.holonomy
        check = verify_generates(
            gamma, [lattice_element((1, 0), g), lattice_element((0, 1), g)]
        )
        assert not check.ok and "coverage" in check.reason

    def test_klein_sublattice_fails(self):
        gamma = klein_bottle()
        g = gamma.holonomy
        alpha = AffineElement(gamma.lifts[0], g.index_of(g.generators[0]))
        # alpha alone: its square only reaches (1, 0)
        assert not verify_generates(gamma, [alpha]).ok

    def test_not_a_subset(self):
        gamma = klein_bottle()
        g = gamma.holonomy
        bad = AffineElement(rv(Fraction(1, 3), 0), g.index_of(g.generators[0]))
        with pytest.raises(NotASubset):
            verify_generates(gamma, [bad])

    def test_empty_set(self):
        gamma = torus(2)
        assert not verify_generates(gamma, []).ok


class TestGreedy:
    def test_klein_naive_to_two(self):
        gamma = klein_bottle()
        rep = greedy_reduce(gamma, naive_generating_set(gamma).generators)
        assert rep.size == 2 and rep.verified
        assert drop_each_still_fails(gamma, rep)

    def test_torus_unchanged(self):
        gamma = torus(3)
        rep = greedy_reduce(gamma, naive_generating_set(gamma).generators)
        assert rep.size == 3

    def test_never_grows(self):
        for gamma in (klein_bottle(), hantzsche_wendt(), c3_dim3_spec_example()):
            start = naive_generating_set(gamma).generators
            rep = greedy_reduce(gamma, start)
            assert rep.size <= len(start)


class TestReduceCyclic:
    def test_spec_dim3_example(self):
        gamma = c3_dim3_spec_example()
        rep = reduce_cyclic(gamma)
        assert rep.verified and rep.size == 2
        assert rep.method == "THEOREM_A_II"
        assert rep.theorem_bound == 2
        # the documented witness: a lattice vector and the lift itself
        kinds = sorted(e.holonomy_index for e in rep.generators)
        assert kinds[0] == 0 and kinds[1] != 0
        assert drop_each_still_fails(gamma, rep)

    def test_pipeline_data(self):
        gamma = c3_dim3_spec_example()
        data = cyclic_reduction_data(gamma)
        assert data.fhom.scale == 3 and data.fhom.numerator == 1
        assert data.fhom.coordinate_index == 2
        assert data.sigma * 1 + data.tau * 3 == 1
        from flatgroup.linalg import matrix_order

        assert matrix_order(data.k_action) == 3

    def test_f_is_additive(self):
        for gamma in (c3_dim3_spec_example(), phi5_dim5()):
            data = cyclic_reduction_data(gamma)
            f = data.fhom
            group = gamma.holonomy
            table = lift_all(gamma)
            rng = random.Random(8)
            n = gamma.dim
            for _ in range(1000):
                g1, g2 = rng.randrange(group.size), rng.randrange(group.size)
                t1 = table[g1] + RatVector.from_ints(
                    tuple(rng.randint(-3, 3) for _ in range(n))
                )
                t2 = table[g2] + RatVector.from_ints(
                    tuple(rng.randint(-3, 3) for _ in range(n))
                )
                e1, e2 = AffineElement(t1, g1), AffineElement(t2, g2)
                prod = affine_mul(e1, e2, group)
                assert f.value(prod) == f.value(e1) + f.value(e2)
            # f(beta) = 1; on split basis vectors: z at i, 0 elsewhere
            assert f.value_split(data.beta_split) == 1
            fwd = data.split.transform.forward
            for j in range(n):
                col = lattice_element(fwd.column(j), group)
                expect = f.scale if j == f.coordinate_index else 0
                assert f.value(col) == expect

    def test_wrong_shape(self):
        with pytest.raises(WrongHolonomyShape):
            reduce_cyclic(torus(2))
        with pytest.raises(WrongHolonomyShape):
            reduce_cyclic(klein_bottle())  # m = 2

    def test_torsion_input_rejected(self):
        # C_3 rotation with a zero lift: the lift itself has order 3
        g = IntMatrix.block_diag(
            [IntMatrix.from_rows([[0, -1], [1, -1]]), IntMatrix.identity(1)]
        )
        gamma = build_crystal([g], [rv(0, 0, 0)])
        with pytest.raises(InputNotTorsionFree):
            reduce_cyclic(gamma)

    def test_spec_half_lift_mismatch(self):
        # C_3 rotation block with a 1/2 tail lift: after normalization the
        # group has torsion and the pipeline refuses it
        g = IntMatrix.block_diag(
            [IntMatrix.from_rows([[0, -1], [1, -1]]), IntMatrix.identity(1)]
        )
        gamma = build_crystal([g], [rv(0, 0, Fraction(1, 2))])
        gamma, _ = normalize_lattice(gamma)
        with pytest.raises(InputNotTorsionFree):
            reduce_cyclic(gamma)

    def test_phi5(self):
        gamma = phi5_dim5()
        rep = reduce_cyclic(gamma)
        assert rep.verified and rep.size <= 4  # n - 1


class TestReduceTheoremAI:
    def test_phi5(self):
        gamma = phi5_dim5()
        rep = reduce_theorem_a_i(gamma)
        assert rep.verified and rep.size <= 3  # n - 2
        assert rep.method == "THEOREM_A_I"
        assert drop_each_still_fails(gamma, rep)

    def test_c4_rejected(self):
        g = IntMatrix.block_diag(
            [IntMatrix.from_rows([[0, 1], [-1, 0]]), IntMatrix.identity(1)]
        )
        gamma = build_crystal([g], [rv(Fraction(1, 4), 0, 0)])
        with pytest.raises(WrongHolonomyShape):
            reduce_theorem_a_i(gamma)

    def test_torus_rejected(self):
        with pytest.raises(WrongHolonomyShape):
            reduce_theorem_a_i(torus(3))


class TestReduceTwoGenerated:
    def test_s3_pair(self):
        gamma = s3_sign_action()
        assert is_torsion_free(gamma).torsion_free
        g = gamma.holonomy
        x = g.index_of(g.generators[0])
        y = g.index_of(g.generators[1])
        rep = reduce_two_generated(gamma, x, y)
        assert rep.verified and rep.size <= 4  # n

    def test_hantzsche_wendt_greedy_path(self):
        gamma = hantzsche_wendt()
        g = gamma.holonomy
        x = g.index_of(g.generators[0])
        y = g.index_of(g.generators[1])
        rep = reduce_two_generated(gamma, x, y)
        assert rep.verified and rep.size <= 3
        assert rep.method == "GREEDY"

    def test_cyclic_delegation(self):
        gamma = c3_dim3_spec_example()
        g = gamma.holonomy
        gi = g.index_of(g.generators[0])
        rep = reduce_two_generated(gamma, gi, g.identity_index)
        assert rep.verified and rep.size <= 2
        assert rep.method == "THEOREM_C"

    def test_not_a_pair(self):
        gamma = hantzsche_wendt()
        with pytest.raises(NotAGeneratingPair):
            reduce_two_generated(gamma, 0, 0)

    def test_torsion_rejected(self):
        gamma = klein_with_torsion()
        g = gamma.holonomy
        gi = g.index_of(g.generators[0])
        with pytest.raises(InputNotTorsionFree):
            reduce_two_generated(gamma, gi, g.identity_index)


class TestAutoReduce:
    def test_klein(self):
        rep = auto_reduce(klein_bottle())
        assert rep.verified and rep.size == 2
        assert rep.method == "GREEDY"

    def test_torus(self):
        rep = auto_reduce(torus(2))
        assert rep.size == 2

    def test_c3_manifold(self):
        rep = auto_reduce(c3_dim3_spec_example())
        assert rep.size == 2 and rep.method in ("THEOREM_A_II", "GREEDY")

    def test_phi5_meets_a_i_bound(self):
        rep = auto_reduce(phi5_dim5())
        assert rep.size <= 3

    def test_torsion_group_still_reduces(self):
        gamma = build_crystal([[[0, 1], [-1, 0]]], [rv(0, 0)])
        rep = auto_reduce(gamma)
        assert rep.verified and rep.size <= 2


class TestSylowAndSimple:
    def test_sylow_of_s3(self):
        group = s3_sign_action().holonomy
        p2 = sylow_subgroup(group, 2)
        p3 = sylow_subgroup(group, 3)
        assert len(p2) == 2 and len(p3) == 3
        assert subgroup_min_generators(group, p2) == 1
        assert subgroup_min_generators(group, p3) == 1

    def test_sylow_of_klein_four(self):
        group = hantzsche_wendt().holonomy
        p2 = sylow_subgroup(group, 2)
        assert len(p2) == 4
        assert subgroup_min_generators(group, p2) == 2

    def test_simplicity(self):
        assert is_simple_group(c3_dim3_spec_example().holonomy)  # C_3
        assert not is_simple_group(s3_sign_action().holonomy)  # S_3 has A_3
        assert not is_simple_group(torus(2).holonomy)  # trivial
        assert not is_simple_group(hantzsche_wendt().holonomy)  # Klein four

    def test_normal_closure(self):
        group = s3_sign_action().holonomy
        # the normal closure of a transposition is all of S_3; of a
        # 3-cycle it is A_3
        orders = {i: group.order(i) for i in range(group.size)}
        for i, o in orders.items():
            if o == 2:
                assert len(normal_closure(group, i)) == 6
            elif o == 3:
                assert len(normal_closure(group, i)) == 3


class TestBoundReport:
    def test_torus(self):
        rep = bound_report(torus(2))
        assert rep.order == 1 and rep.best.size == 2
        cor = next(t for t in rep.theorems if t.tag == "COROLLARY_4_1")
        assert cor.applies and cor.bound == 4

    def test_c3_dim3(self):
        rep = bound_report(c3_dim3_spec_example())
        a2 = next(t for t in rep.theorems if t.tag == "THEOREM_A_II")
        assert a2.applies and a2.bound == 2
        assert rep.best.size <= 2
        cor42 = next(t for t in rep.theorems if t.tag == "COROLLARY_4_2")
        assert cor42.applies and cor42.bound == 2  # C_3 is simple

    def test_theorem_b_coprime_order(self):
        from flatgroup.linalg import cyclotomic

        g = IntMatrix.companion(cyclotomic(35))
        gamma = build_crystal([g], [RatVector.zero(24)])
        rep = bound_report(gamma, with_reduction=False)
        b = next(t for t in rep.theorems if t.tag == "THEOREM_B")
        assert b.applies and b.bound == 24
        assert rep.order == 35
        assert rep.factorization == ((5, 1), (7, 1))
        assert rep.best is None

    def test_s3_report(self):
        rep = bound_report(s3_sign_action())
        b = next(t for t in rep.theorems if t.tag == "THEOREM_B")
        assert not b.applies  # |S_3| = 6 is divisible by 2 and 3
        c = next(t for t in rep.theorems if t.tag == "THEOREM_C")
        assert c.applies and c.bound == 4
        assert rep.best.size <= 4


class TestGeneratingPair:
    def test_s3(self):
        pair = find_generating_pair(s3_sign_action().holonomy)
        assert pair is not None

    def test_trivial(self):
        assert find_generating_pair(torus(2).holonomy) == (0, 0)
