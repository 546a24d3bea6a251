"""The bundled group corpus.

Twenty groups: the 2- and 3-torus, the Klein bottle, the ten flat
3-manifold fundamental groups (six orientable with holonomy C_1, C_2,
C_3, C_4, C_6, C_2 x C_2 and four non-orientable), a dimension-4 group
with holonomy S_3, a dimension-5 group with holonomy C_5, and six
crystallographic groups with torsion.  File order is fixed; reports keep
it regardless of processing order.
"""

from __future__ import annotations

from importlib import resources

from .groupfile import GroupFile, build_crystal, load_group_file

CORPUS_FILES: tuple[str, ...] = (
    "torus_t2",
    "torus_t3",
    "klein_bottle",
    "orientable_c2",
    "orientable_c3",
    "orientable_c4",
    "orientable_c6",
    "hantzsche_wendt",
    "nonorientable_b1",
    "nonorientable_b2",
    "nonorientable_b3",
    "nonorientable_b4",
    "s3_sign_dim4",
    "cyclic5_dim5",
    "point_inversion_2d",
    "klein_flipped_lift",
    "c4_rotation_2d",
    "c3_rotation_2d",
    "klein_four_zero_lifts",
    "s3_permutation_dim3",
)


def corpus_names() -> tuple[str, ...]:
    return CORPUS_FILES


def corpus_path(name: str) -> str:
    if name not in CORPUS_FILES:
        raise KeyError(f"no corpus entry named {name!r}")
    ref = resources.files("flatgroup") / "corpus_data" / f"{name}.json"
    return str(ref)


def load_corpus_entry(name: str) -> GroupFile:
    return load_group_file(corpus_path(name))


def build_corpus_entry(name: str, cap: int = 20000):
    return build_crystal(load_corpus_entry(name), cap=cap)
