"""Shared test fixtures and independent oracles.

The torsion oracle here deliberately avoids the solver used by
`is_torsion_free`: it scans coset representatives (a_g + x, g) with x
ranging over an integer box of side |G| * (max lift denominator) and tests
whether the |G|-th power is the identity.
"""

from fractions import Fraction

from flatgroup.crystal import (
    AffineElement,
    CrystalGroup,
    enumerate_holonomy,
    lift_all,
)
from flatgroup.linalg import IntMatrix, RatVector

ROT2 = IntMatrix.from_rows([[-1, 0], [0, -1]])
ROT3 = IntMatrix.from_rows([[0, -1], [1, -1]])
ROT4 = IntMatrix.from_rows([[0, 1], [-1, 0]])
ROT6 = IntMatrix.from_rows([[0, -1], [1, 1]])


def rv(*coords) -> RatVector:
    return RatVector(tuple(Fraction(c) for c in coords))


def build_crystal(gens, lifts, name=None, dim=None, cap=20000) -> CrystalGroup:
    mats = [IntMatrix.from_rows(g) if not isinstance(g, IntMatrix) else g for g in gens]
    vecs = [v if isinstance(v, RatVector) else rv(*v) for v in lifts]
    if dim is None:
        dim = mats[0].rows if mats else vecs[0].dim
    holonomy = enumerate_holonomy(mats, cap=cap, dim=dim)
    return CrystalGroup(dim, holonomy, tuple(vecs), name=name)


def torus(n: int) -> CrystalGroup:
    return build_crystal([], [], name=f"torus{n}", dim=n)


def klein_bottle() -> CrystalGroup:
    return build_crystal([[[1, 0], [0, -1]]], [rv(Fraction(1, 2), 0)], name="klein")


def klein_with_torsion() -> CrystalGroup:
    return build_crystal([[[1, 0], [0, -1]]], [rv(0, Fraction(1, 2))], name="klein_bad")


def c3_dim3_spec_example() -> CrystalGroup:
    # rho(g) = diag([[0,-1],[1,-1]], 1), lift (0, 0, 1/3)
    g = IntMatrix.block_diag([ROT3, IntMatrix.identity(1)])
    return build_crystal([g], [rv(0, 0, Fraction(1, 3))], name="c3_dim3")


def hantzsche_wendt() -> CrystalGroup:
    return build_crystal(
        [[[1, 0, 0], [0, -1, 0], [0, 0, -1]], [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]],
        [rv(Fraction(1, 2), Fraction(1, 2), 0), rv(0, Fraction(1, 2), Fraction(1, 2))],
        name="hantzsche_wendt",
    )


def s3_sign_action() -> CrystalGroup:
    # S_3 on Z^4: permutation matrices on the first three coordinates,
    # sign of the permutation on the fourth; torsion-free vector system
    x = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    y = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]]
    return build_crystal(
        [x, y],
        [rv(0, 0, Fraction(1, 2), Fraction(1, 3)), rv(Fraction(1, 2), 0, 0, 0)],
        name="s3_sign",
    )


def phi5_dim5() -> CrystalGroup:
    from flatgroup.linalg import cyclotomic

    g = IntMatrix.block_diag([IntMatrix.companion(cyclotomic(5)), IntMatrix.identity(1)])
    return build_crystal([g], [rv(0, 0, 0, 0, Fraction(1, 5))], name="phi5_dim5")


def torsion_box_oracle(gamma: CrystalGroup) -> bool:
    """True iff no torsion was found in a brute-force box scan.

    For each nontrivial g, representatives (a_g + x, g) are scanned with x
    in a box of side |G| * max-denominator; (a + x, g)^{|G|} is the
    identity iff N (a + x) = 0 for the |G|-term norm N of g.  The last
    coordinate is solved exactly instead of scanned; that visits the same
    solution set as the full scan.
    """
    group = gamma.holonomy
    n = gamma.dim
    table = lift_all(gamma)
    maxden = max(v.denominator_lcm() for v in table)
    side = group.size * maxden
    lo = -(side // 2)
    values = range(lo, lo + side)
    for g in range(group.size):
        if g == group.identity_index:
            continue
        norm = IntMatrix.identity(n)
        j = g
        for _ in range(group.size - 1):
            norm = norm + group.matrix(j)
            j = group.mul(j, g)
        # reduce the coset representative into [0,1)^n so the box is centered
        target = norm.apply_rat(table[g].frac_part())
        cols = norm.columns()

        def search(axis, partial):
            # partial = N a + sum_{c < axis} x_c * col_c (exact Fractions)
            if axis == n - 1:
                col = cols[axis]
                pivot = next((t for t in range(n) if col[t] != 0), None)
                if pivot is None:
                    return all(c == 0 for c in partial)
                num = -partial[pivot]
                if num % col[pivot] != 0:
                    return False
                x = num // col[pivot]
                if x not in values:
                    return False
                return all(partial[t] + x * col[t] == 0 for t in range(n))
            col = cols[axis]
            cur = [p + lo * c for p, c in zip(partial, col)]
            for _ in values:
                if search(axis + 1, cur):
                    return True
                cur = [p + c for p, c in zip(cur, col)]
            return False

        start = [Fraction(c) for c in target.coords]
        if all(c.denominator == 1 for c in start):
            if search(0, [int(c) for c in start]):
                return False
    return True


def affine_eq(a: AffineElement, b: AffineElement) -> bool:
    return a.holonomy_index == b.holonomy_index and a.translation == b.translation
