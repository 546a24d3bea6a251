"""Command-line interface.

    flatgroup validate FILE            parse, enumerate, normalize, report
    flatgroup check-torsion FILE       exit 0 torsion-free, 1 torsion
    flatgroup reduce FILE              small verified generating set
    flatgroup verify FILE --set FILE   check a candidate generating set
    flatgroup bounds FILE              theorem predictions vs. construction
    flatgroup corpus [--run NAME]      full pipeline over the bundled corpus

Exit codes: 0 success / affirmative, 1 negative outcome or violated bound
or failed hypothesis, 2 input error.  `--json` output is byte-stable for a
fixed seed.
"""

from __future__ import annotations

import argparse
import sys

from .corpus import CORPUS_FILES, corpus_path
from .crystal import (
    CrystalGroup,
    fixed_lattice,
    is_torsion_free,
    normalize_lattice,
    translation_subgroup,
)
from .groupfile import (
    GroupFileError,
    affine_dict,
    bound_report_dict,
    build_crystal,
    dumps_stable,
    load_group_file,
    parse_set_file,
    report_dict,
    vector_dict,
)
from .linalg import FlatGroupError
from .reduction import (
    GenSetReport,
    InputNotTorsionFree,
    NotAGeneratingPair,
    NotASubset,
    WrongHolonomyShape,
    auto_reduce,
    bound_report,
    find_generating_pair,
    greedy_reduce,
    naive_generating_set,
    reduce_cyclic,
    reduce_theorem_a_i,
    reduce_two_generated,
    verify_generates,
)

DEFAULT_BUDGET = 100000
DEFAULT_CAP = 20000


def _load(path: str, cap: int) -> tuple[CrystalGroup, CrystalGroup]:
    """Returns (as-written group, normalized group)."""
    gf = load_group_file(path)
    gamma = build_crystal(gf, cap=cap)
    normalized, _ = normalize_lattice(gamma)
    return gamma, normalized


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(dumps_stable(payload))
    else:
        for line in human_lines:
            print(line)


def cmd_validate(args) -> int:
    gamma, normalized = _load(args.file, args.cap)
    lat = translation_subgroup(gamma)
    fixed = fixed_lattice(normalized.holonomy)
    payload = {
        "name": gamma.name,
        "dimension": gamma.dim,
        "holonomy_order": gamma.holonomy.size,
        "translation_index_over_standard": str(lat.index_over_standard()),
        "already_normalized": lat.is_standard(),
        "fixed_lattice_rank": fixed.rank,
    }
    _emit(args, payload, [
        f"name: {gamma.name}",
        f"dimension: {gamma.dim}",
        f"holonomy order: {gamma.holonomy.size}",
        f"already normalized: {lat.is_standard()}",
        f"fixed-lattice rank: {fixed.rank}",
    ])
    return 0


def cmd_check_torsion(args) -> int:
    _, normalized = _load(args.file, args.cap)
    res = is_torsion_free(normalized)
    payload = {
        "name": normalized.name,
        "torsion_free": res.torsion_free,
        "witness": affine_dict(res.witness, normalized) if res.witness else None,
    }
    lines = [f"{normalized.name}: " + ("torsion-free" if res.torsion_free else "has torsion")]
    if res.witness is not None:
        lines.append(
            f"witness: translation {vector_dict(res.witness.translation)}, "
            f"holonomy element #{res.witness.holonomy_index}"
        )
    _emit(args, payload, lines)
    return 0 if res.torsion_free else 1


def _run_method(gamma: CrystalGroup, method: str, budget: int, seed) -> GenSetReport:
    if method == "auto":
        return auto_reduce(gamma, budget=budget, seed=seed)
    if method == "a1":
        return reduce_theorem_a_i(gamma, budget=budget, seed=seed)
    if method == "a2":
        return reduce_cyclic(gamma, budget=budget, seed=seed)
    if method == "c":
        pair = find_generating_pair(gamma.holonomy)
        if pair is None:
            raise WrongHolonomyShape("holonomy group is not 2-generated")
        return reduce_two_generated(gamma, pair[0], pair[1], budget=budget, seed=seed)
    if method == "greedy":
        return greedy_reduce(gamma, naive_generating_set(gamma).generators)
    raise ValueError(f"unknown method {method!r}")


def cmd_reduce(args) -> int:
    _, normalized = _load(args.file, args.cap)
    try:
        rep = _run_method(normalized, args.method, args.budget, args.seed)
    except (WrongHolonomyShape, InputNotTorsionFree, NotAGeneratingPair) as exc:
        print(f"method {args.method!r} does not apply: {exc}", file=sys.stderr)
        return 1
    payload = {"name": normalized.name, "report": report_dict(rep, normalized)}
    lines = [
        f"{normalized.name}: {rep.size} generators via {rep.method}"
        + (f" (theorem bound {rep.theorem_bound})" if rep.theorem_bound is not None else ""),
        f"verified: {rep.verified}",
    ]
    for e in rep.generators:
        lines.append(
            f"  translation {vector_dict(e.translation)}, holonomy element #{e.holonomy_index}"
        )
    for note in rep.notes:
        lines.append(f"note: {note}")
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    _, normalized = _load(args.file, args.cap)
    elements = parse_set_file(args.set, normalized)
    try:
        check = verify_generates(normalized, elements)
    except NotASubset as exc:
        raise GroupFileError(f"{args.set}: {exc}") from exc
    payload = {
        "name": normalized.name,
        "generates": check.ok,
        "reason": check.reason,
        "set_size": len(elements),
    }
    lines = [f"{normalized.name}: " + ("generates" if check.ok else f"does not generate ({check.reason})")]
    _emit(args, payload, lines)
    return 0 if check.ok else 1


def cmd_bounds(args) -> int:
    _, normalized = _load(args.file, args.cap)
    rep = bound_report(normalized, budget=args.budget, seed=args.seed)
    payload = bound_report_dict(rep, normalized)
    lines = [
        f"{rep.name}: |G| = {rep.order} = "
        + " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in rep.factorization)
        if rep.factorization
        else f"{rep.name}: |G| = 1",
        f"torsion-free: {rep.torsion_free}",
    ]
    for s in rep.sylow:
        lines.append(
            f"sylow {s.prime}: order {s.order}, d = {s.min_generators}, fixed rank {s.fixed_rank}"
        )
    for t in rep.theorems:
        mark = f"bound {t.bound}" if t.applies else "does not apply"
        lines.append(f"{t.tag}: {mark}")
    if rep.best is not None:
        lines.append(f"best construction: {rep.best.size} generators via {rep.best.method}")
    _emit(args, payload, lines)
    return 0


def cmd_corpus(args) -> int:
    names = CORPUS_FILES if args.run == "all" else (args.run,)
    for name in names:
        if name not in CORPUS_FILES:
            print(f"no corpus entry named {name!r}", file=sys.stderr)
            return 2
    groups = []
    violations = []
    for name in names:
        gf = load_group_file(corpus_path(name))
        gamma = build_crystal(gf, cap=args.cap)
        normalized, _ = normalize_lattice(gamma)
        torsion = is_torsion_free(normalized)
        reduction = auto_reduce(normalized, budget=args.budget, seed=args.seed)
        bounds = bound_report(
            normalized, budget=args.budget, seed=args.seed, reduction=reduction
        )
        entry = {
            "name": name,
            "dimension": normalized.dim,
            "holonomy_order": normalized.holonomy.size,
            "torsion_free": torsion.torsion_free,
            "bounds": bound_report_dict(bounds, normalized),
            "reduction": report_dict(reduction, normalized),
        }
        if not reduction.verified:
            violations.append(f"{name}: unverified reduction report")
        if reduction.size > 2 * normalized.dim:
            violations.append(
                f"{name}: {reduction.size} generators exceeds 2n = {2 * normalized.dim}"
            )
        expected = gf.expected
        checks = {}
        if expected is not None and expected.torsion_free is not None:
            checks["torsion_free"] = torsion.torsion_free == expected.torsion_free
            if not checks["torsion_free"]:
                violations.append(
                    f"{name}: torsion verdict {torsion.torsion_free}, expected {expected.torsion_free}"
                )
        if expected is not None and expected.max_generators is not None:
            checks["max_generators"] = reduction.size <= expected.max_generators
            if not checks["max_generators"]:
                violations.append(
                    f"{name}: {reduction.size} generators, expected <= {expected.max_generators}"
                )
        entry["expected_checks"] = checks
        groups.append(entry)
    payload = {
        "seed": args.seed,
        "budget": args.budget,
        "groups": groups,
        "violations": violations,
    }
    lines = []
    for entry in groups:
        lines.append(
            f"{entry['name']:24s} n={entry['dimension']} |G|={entry['holonomy_order']:2d} "
            f"torsion_free={str(entry['torsion_free']):5s} "
            f"generators={entry['reduction']['size']} via {entry['reduction']['method']}"
        )
    lines.extend(f"VIOLATION: {v}" for v in violations)
    if not violations:
        lines.append(f"{len(groups)} groups, no violations")
    _emit(args, payload, lines)
    return 1 if violations else 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatgroup",
        description="Exact-arithmetic toolkit for crystallographic and Bieberbach groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True):
        if needs_file:
            p.add_argument("file", help="group file (JSON)")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="holonomy enumeration cap")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("validate", help="parse and validate a group file")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check-torsion", help="torsion test (exit 1 when torsion exists)")
    common(p)
    p.set_defaults(func=cmd_check_torsion)

    p = sub.add_parser("reduce", help="construct a small verified generating set")
    common(p)
    p.add_argument("--method", choices=("auto", "a1", "a2", "c", "greedy"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="span-check budget")
    p.add_argument("--seed", type=int, default=None, help="search order seed")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="verify a candidate generating set")
    common(p)
    p.add_argument("--set", required=True, help="set file (JSON)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="theorem bounds and best construction")
    common(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("corpus", help="run the full pipeline over the bundled corpus")
    common(p, needs_file=False)
    p.add_argument("--run", default="all", help="'all' or one corpus entry name")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except GroupFileError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except FlatGroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
