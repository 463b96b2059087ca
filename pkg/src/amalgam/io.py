"""JSON formats for algebras, maps, bimodules, construction descriptors and reports.

Rationals are written as decimal-free strings ``"p"`` or ``"p/q"``.  Integers
are accepted on input as well.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .algebra import AlgebraMap, FiniteAlgebra, make_algebra, make_ideal, make_map
from .constructions import (
    AmalgamResult,
    amalgamate,
    cartesian,
    id_amalgam,
    lau_product,
    module_extension,
    semidirect_product,
    unitize,
)
from .duality import Bimodule, make_bimodule
from .linalg import Matrix, Subspace, to_fraction

DESCRIPTOR_KINDS = ("amalgam", "unitize", "module-ext", "lau", "semidirect", "cartesian", "id")


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}: "
        if line is not None:
            where += f"line {line}, column {column}: "
        super().__init__(where + message)


def fmt(x: Fraction) -> str:
    return str(x)


def _rational(x, where: str, source=None) -> Fraction:
    try:
        return to_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{where}: {e}", source=source) from None


def _load_json(text: str, source=None):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno, source) from None


def _read(path) -> tuple:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file ({e.strerror})", source=str(path)) from None
    return _load_json(text, str(path)), path


def _require(doc: dict, key: str, source=None):
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object", source=source)
    if key not in doc:
        raise ParseError(f"missing key {key!r}", source=source)
    return doc[key]


# ---------------------------------------------------------------------------
# algebras


def algebra_to_dict(a: FiniteAlgebra) -> dict:
    return {
        "dim": a.dim,
        "labels": list(a.labels),
        "table": [[[fmt(c) for c in a.table[i][j]] for j in range(a.dim)] for i in range(a.dim)],
        "weights": [fmt(w) for w in a.weights],
    }


def algebra_from_dict(doc, source=None) -> FiniteAlgebra:
    dim = _require(doc, "dim", source)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError("'dim' must be a non-negative integer", source=source)
    table = _require(doc, "table", source)
    if not isinstance(table, list):
        raise ParseError("'table' must be a nested list", source=source)
    parsed = []
    for i, row in enumerate(table):
        if not isinstance(row, list):
            raise ParseError(f"table[{i}] must be a list", source=source)
        prow = []
        for j, cell in enumerate(row):
            if not isinstance(cell, list):
                raise ParseError(f"table[{i}][{j}] must be a list", source=source)
            prow.append([_rational(c, f"table[{i}][{j}]", source) for c in cell])
        parsed.append(prow)
    weights = doc.get("weights")
    if weights is not None:
        if not isinstance(weights, list):
            raise ParseError("'weights' must be a list", source=source)
        weights = [_rational(w, "weights", source) for w in weights]
    return make_algebra(dim, doc.get("labels"), parsed, weights)


def dumps_algebra(a: FiniteAlgebra) -> str:
    """Stable layout with one table row per line."""
    doc = algebra_to_dict(a)
    rows = ",\n  ".join(json.dumps(r) for r in doc["table"])
    table = f"[\n  {rows}\n ]" if doc["table"] else "[]"
    return (
        "{\n"
        f' "dim": {doc["dim"]},\n'
        f' "labels": {json.dumps(doc["labels"])},\n'
        f' "table": {table},\n'
        f' "weights": {json.dumps(doc["weights"])}\n'
        "}\n"
    )


def loads_algebra(text: str, source=None) -> FiniteAlgebra:
    return algebra_from_dict(_load_json(text, source), source)


def load_algebra(path) -> FiniteAlgebra:
    doc, p = _read(path)
    return algebra_from_dict(doc, str(p))


def save_algebra(a: FiniteAlgebra, path) -> None:
    Path(path).write_text(dumps_algebra(a), encoding="utf-8")


# ---------------------------------------------------------------------------
# maps, vectors, bimodules


def _matrix(rows, nrows: int, ncols: int, where: str, source=None) -> Matrix:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise ParseError(f"{where} must have {nrows} rows", source=source)
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != ncols:
            raise ParseError(f"{where}[{r}] must have {ncols} entries", source=source)
        out.append(tuple(_rational(x, f"{where}[{r}]", source) for x in row))
    return Matrix(tuple(out), ncols)


def _vectors(items, n: int, where: str, source=None) -> list:
    if not isinstance(items, list):
        raise ParseError(f"{where} must be a list of vectors", source=source)
    out = []
    for k, v in enumerate(items):
        if not isinstance(v, list) or len(v) != n:
            raise ParseError(f"{where}[{k}] must have {n} entries", source=source)
        out.append(tuple(_rational(x, f"{where}[{k}]", source) for x in v))
    return out


def map_to_dict(m: AlgebraMap, domain_file: str = "", codomain_file: str = "") -> dict:
    doc = {
        "kind": "map",
        "domain_dim": m.domain.dim,
        "codomain_dim": m.codomain.dim,
        "matrix": [[fmt(x) for x in row] for row in m.matrix.rows],
        "multiplicative": bool(m.multiplicative),
    }
    if domain_file:
        doc["domain"] = domain_file
    if codomain_file:
        doc["codomain"] = codomain_file
    return doc


def map_from_dict(doc, domain: FiniteAlgebra, codomain: FiniteAlgebra, source=None) -> AlgebraMap:
    rows = _require(doc, "matrix", source) if isinstance(doc, dict) else doc
    return make_map(domain, codomain, _matrix(rows, codomain.dim, domain.dim, "matrix", source))


def bimodule_from_dict(doc, a: FiniteAlgebra, source=None) -> Bimodule:
    dim = _require(doc, "dim", source)
    left = _require(doc, "left", source)
    right = _require(doc, "right", source)
    try:
        left = [[[_rational(x, "left", source) for x in cell] for cell in row] for row in left]
        right = [[[_rational(x, "right", source) for x in cell] for cell in row] for row in right]
    except TypeError:
        raise ParseError("bimodule actions must be nested lists", source=source) from None
    weights = doc.get("weights")
    if weights is not None:
        weights = [_rational(w, "weights", source) for w in weights]
    try:
        return make_bimodule(a, dim, left, right, doc.get("labels"), weights)
    except (IndexError, TypeError):
        raise ParseError("bimodule action tensors have the wrong shape", source=source) from None


def bimodule_to_dict(x: Bimodule) -> dict:
    return {
        "dim": x.dim,
        "labels": list(x.labels),
        "left": [[[fmt(c) for c in cell] for cell in row] for row in x.left],
        "right": [[[fmt(c) for c in cell] for cell in row] for row in x.right],
        "weights": [fmt(w) for w in x.weights],
    }


# ---------------------------------------------------------------------------
# construction descriptors


def _algebra_ref(doc: dict, key: str, base: Path, source) -> FiniteAlgebra:
    ref = _require(doc, key, source)
    if isinstance(ref, str):
        return load_algebra(base / ref)
    if isinstance(ref, dict):
        return algebra_from_dict(ref, source)
    raise ParseError(f"{key!r} must be a file path or an inline algebra", source=source)


def build_from_descriptor(doc: dict, base: Path = Path("."), source=None) -> AmalgamResult:
    """Evaluate a construction descriptor; relative file references resolve against ``base``."""
    kind = _require(doc, "kind", source)
    if kind not in DESCRIPTOR_KINDS:
        raise ParseError(f"unknown construction kind {kind!r}", source=source)
    if kind == "unitize":
        return unitize(_algebra_ref(doc, "A", base, source))
    if kind == "id":
        return id_amalgam(_algebra_ref(doc, "A", base, source))
    if kind == "cartesian":
        return cartesian(_algebra_ref(doc, "A", base, source), _algebra_ref(doc, "B", base, source))
    if kind == "lau":
        A = _algebra_ref(doc, "A", base, source)
        B = _algebra_ref(doc, "B", base, source)
        phi = _vectors([_require(doc, "phi", source)], A.dim, "phi", source)[0]
        return lau_product(A, B, phi)
    if kind == "module-ext":
        A = _algebra_ref(doc, "A", base, source)
        ref = _require(doc, "bimodule", source)
        if isinstance(ref, str):
            ref, p = _read(base / ref)
            source = str(p)
        return module_extension(A, bimodule_from_dict(ref, A, source))
    if kind == "semidirect":
        B = _algebra_ref(doc, "B", base, source)
        sub = Subspace.span(_vectors(_require(doc, "subalgebra", source), B.dim, "subalgebra", source), B.dim)
        ideal = make_ideal(B, _vectors(_require(doc, "ideal", source), B.dim, "ideal", source))
        return semidirect_product(B, sub, ideal)
    A = _algebra_ref(doc, "A", base, source)
    B = _algebra_ref(doc, "B", base, source)
    theta = _require(doc, "theta", source)
    if isinstance(theta, str):
        theta, _ = _read(base / theta)
    theta = map_from_dict(theta, A, B, source)
    ideal = make_ideal(B, _vectors(_require(doc, "ideal", source), B.dim, "ideal", source))
    return amalgamate(A, B, theta, ideal)


def load_descriptor(path) -> AmalgamResult:
    doc, p = _read(path)
    return build_from_descriptor(doc, p.parent, str(p))


def load_instance(path):
    """An algebra file or a construction descriptor; returns FiniteAlgebra or AmalgamResult."""
    doc, p = _read(path)
    if isinstance(doc, dict) and "kind" in doc:
        return build_from_descriptor(doc, p.parent, str(p))
    return algebra_from_dict(doc, str(p))


def write_construction(r: AmalgamResult, out) -> list:
    """Write the amalgam and its embeddings/projection; returns the written paths."""
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    stem = out.name[: -len(".json")] if out.name.endswith(".json") else out.name
    save_algebra(r.algebra, out)
    written = [out]
    parts = {
        "A": r.A,
        "I": r.I_algebra,
    }
    for name, alg in parts.items():
        p = out.with_name(f"{stem}.{name}.json")
        save_algebra(alg, p)
        written.append(p)
    maps = {
        "embed_A": (r.embed_A, f"{stem}.A.json", out.name),
        "embed_I": (r.embed_I, f"{stem}.I.json", out.name),
        "project_A": (r.project_A, out.name, f"{stem}.A.json"),
    }
    for name, (m, dom, cod) in maps.items():
        p = out.with_name(f"{stem}.{name}.json")
        p.write_text(json.dumps(map_to_dict(m, dom, cod), indent=1) + "\n", encoding="utf-8")
        written.append(p)
    return written
