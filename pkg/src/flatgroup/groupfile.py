"""Group files, set files, and JSON rendering.

A group file is UTF-8 JSON:

    {
      "name": "klein_bottle",
      "dimension": 2,
      "holonomy_generators": [[[1, 0], [0, -1]]],
      "lifts": [["1/2", "0"]],
      "expected": {"torsion_free": true, "max_generators": 2}
    }

`holonomy_generators` are n x n integer matrices (row-major); `lifts` give
one rational translation per generator, coordinates written as reduced
strings "p/q" (q >= 1, "p" allowed for integers).  `expected` is optional.
Rationals travel as strings so no serializer ever sees a float.

A set file lists affine elements in the same syntax:

    {"elements": [{"translation": ["1/2", "0"], "holonomy": [[1, 0], [0, -1]]}]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .crystal import AffineElement, CrystalGroup, enumerate_holonomy
from .linalg import FlatGroupError, IntMatrix, RatVector
from .reduction import BoundReport, GenSetReport

RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class GroupFileError(FlatGroupError):
    """Malformed or invalid input file; the message names the location."""


@dataclass(frozen=True, slots=True)
class Expected:
    torsion_free: Optional[bool] = None
    max_generators: Optional[int] = None


@dataclass(frozen=True, slots=True)
class GroupFile:
    name: str
    dimension: int
    holonomy_generators: tuple[IntMatrix, ...]
    lifts: tuple[RatVector, ...]
    expected: Optional[Expected] = None


def parse_rational(text, where: str) -> Fraction:
    if not isinstance(text, str) or not RATIONAL_RE.match(text):
        raise GroupFileError(f"{where}: expected a rational string 'p/q', got {text!r}")
    if "/" in text:
        p, q = text.split("/")
        if gcd(int(p), int(q)) != 1:
            raise GroupFileError(f"{where}: rational {text!r} is not reduced")
    return Fraction(text)


def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise GroupFileError(f"{where}: {msg}")


def parse_group_dict(data, source: str = "<group file>") -> GroupFile:
    _expect(isinstance(data, dict), source, "top level must be a JSON object")
    allowed = {"name", "dimension", "holonomy_generators", "lifts", "expected"}
    for key in data:
        _expect(key in allowed, f"{source}.{key}", "unknown field")
    name = data.get("name")
    _expect(isinstance(name, str) and name, f"{source}.name", "nonempty string required")
    n = data.get("dimension")
    _expect(isinstance(n, int) and not isinstance(n, bool) and n >= 1,
            f"{source}.dimension", "positive integer required")
    gens_raw = data.get("holonomy_generators")
    _expect(isinstance(gens_raw, list), f"{source}.holonomy_generators", "list required")
    lifts_raw = data.get("lifts")
    _expect(isinstance(lifts_raw, list), f"{source}.lifts", "list required")
    _expect(
        len(gens_raw) == len(lifts_raw),
        f"{source}.lifts",
        f"{len(lifts_raw)} lifts for {len(gens_raw)} generators",
    )
    gens = []
    for gi, mat in enumerate(gens_raw):
        where = f"{source}.holonomy_generators[{gi}]"
        gens.append(parse_matrix(mat, n, where))
        if abs(gens[-1].det()) != 1:
            raise GroupFileError(f"{where}: matrix has determinant {gens[-1].det()}, not +-1")
    lifts = []
    for li, vec in enumerate(lifts_raw):
        where = f"{source}.lifts[{li}]"
        _expect(isinstance(vec, list) and len(vec) == n, where, f"list of {n} rationals required")
        lifts.append(RatVector(tuple(parse_rational(c, f"{where}[{ci}]") for ci, c in enumerate(vec))))
    expected = None
    if "expected" in data and data["expected"] is not None:
        exp = data["expected"]
        where = f"{source}.expected"
        _expect(isinstance(exp, dict), where, "object required")
        for key in exp:
            _expect(key in ("torsion_free", "max_generators"), f"{where}.{key}", "unknown field")
        tf = exp.get("torsion_free")
        _expect(tf is None or isinstance(tf, bool), f"{where}.torsion_free", "boolean required")
        mg = exp.get("max_generators")
        _expect(
            mg is None or (isinstance(mg, int) and not isinstance(mg, bool) and mg >= 1),
            f"{where}.max_generators",
            "positive integer required",
        )
        expected = Expected(tf, mg)
    return GroupFile(name, n, tuple(gens), tuple(lifts), expected)


def parse_matrix(mat, n: int, where: str) -> IntMatrix:
    _expect(isinstance(mat, list) and len(mat) == n, where, f"{n}x{n} integer matrix required")
    for ri, row in enumerate(mat):
        _expect(isinstance(row, list) and len(row) == n, f"{where}[{ri}]", f"row of {n} integers required")
        for ci, v in enumerate(row):
            _expect(
                isinstance(v, int) and not isinstance(v, bool),
                f"{where}[{ri}][{ci}]",
                f"integer required, got {v!r}",
            )
    return IntMatrix.from_rows(mat)


def load_group_file(path: str) -> GroupFile:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise GroupFileError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    return parse_group_dict(data, source=path)


def build_crystal(gf: GroupFile, cap: int = 20000) -> CrystalGroup:
    holonomy = enumerate_holonomy(list(gf.holonomy_generators), cap=cap, dim=gf.dimension)
    return CrystalGroup(gf.dimension, holonomy, gf.lifts, name=gf.name)


def parse_set_file(path: str, gamma: CrystalGroup) -> list[AffineElement]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise GroupFileError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    _expect(isinstance(data, dict) and "elements" in data, path, "object with 'elements' required")
    elems_raw = data["elements"]
    _expect(isinstance(elems_raw, list), f"{path}.elements", "list required")
    n = gamma.dim
    out = []
    for ei, elem in enumerate(elems_raw):
        where = f"{path}.elements[{ei}]"
        _expect(isinstance(elem, dict), where, "object required")
        for key in elem:
            _expect(key in ("translation", "holonomy"), f"{where}.{key}", "unknown field")
        vec_raw = elem.get("translation")
        _expect(isinstance(vec_raw, list) and len(vec_raw) == n, f"{where}.translation",
                f"list of {n} rationals required")
        vec = RatVector(
            tuple(parse_rational(c, f"{where}.translation[{ci}]") for ci, c in enumerate(vec_raw))
        )
        mat = parse_matrix(elem.get("holonomy"), n, f"{where}.holonomy")
        try:
            idx = gamma.holonomy.index_of(mat)
        except KeyError:
            raise GroupFileError(
                f"{where}.holonomy: matrix is not an element of the holonomy group"
            ) from None
        out.append(AffineElement(vec, idx))
    return out


# ---------------------------------------------------------------------------
# Rendering (all deterministic; rationals stay strings)


def rational_str(c: Fraction) -> str:
    return str(c)


def vector_dict(v: RatVector) -> list[str]:
    return [rational_str(c) for c in v.coords]


def matrix_dict(m: IntMatrix) -> list[list[int]]:
    return [list(row) for row in m.entries]


def affine_dict(e: AffineElement, gamma: CrystalGroup) -> dict:
    return {
        "translation": vector_dict(e.translation),
        "holonomy": matrix_dict(gamma.holonomy.matrix(e.holonomy_index)),
    }


def report_dict(rep: GenSetReport, gamma: CrystalGroup) -> dict:
    return {
        "method": rep.method,
        "size": rep.size,
        "verified": rep.verified,
        "theorem_bound": rep.theorem_bound,
        "notes": list(rep.notes),
        "generators": [affine_dict(e, gamma) for e in rep.generators],
    }


def bound_report_dict(rep: BoundReport, gamma: CrystalGroup) -> dict:
    return {
        "name": rep.name,
        "dimension": rep.dim,
        "order": rep.order,
        "factorization": [list(pe) for pe in rep.factorization],
        "torsion_free": rep.torsion_free,
        "sylow": [
            {
                "prime": s.prime,
                "order": s.order,
                "min_generators": s.min_generators,
                "fixed_rank": s.fixed_rank,
            }
            for s in rep.sylow
        ],
        "theorems": [
            {
                "tag": t.tag,
                "applies": t.applies,
                "bound": t.bound,
                "details": {k: _jsonable(v) for k, v in t.details},
            }
            for t in rep.theorems
        ],
        "best": report_dict(rep.best, gamma) if rep.best is not None else None,
    }


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def group_file_dict(gf: GroupFile) -> dict:
    out = {
        "name": gf.name,
        "dimension": gf.dimension,
        "holonomy_generators": [matrix_dict(m) for m in gf.holonomy_generators],
        "lifts": [vector_dict(v) for v in gf.lifts],
    }
    if gf.expected is not None:
        exp = {}
        if gf.expected.torsion_free is not None:
            exp["torsion_free"] = gf.expected.torsion_free
        if gf.expected.max_generators is not None:
            exp["max_generators"] = gf.expected.max_generators
        out["expected"] = exp
    return out


def dumps_stable(data) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
