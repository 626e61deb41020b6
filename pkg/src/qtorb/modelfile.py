"""JSON model files.

Example::

    {
      "name": "P(1,1,2)",
      "dimension": 2,
      "facets": 3,
      "vertices": [[0, 1], [0, 2], [1, 2]],
      "lambda": [[1, 1], [1, -1], [-1, 0]],
      "realization": [[0, 0], [1, 0], [0, 1]],
      "functional": [1, 2],
      "orientation": 1
    }

``lambda`` lists the characteristic vector of each facet (columns of the
characteristic matrix).  Facet indices are 0-based.  Rational entries are
integers or strings ``"p/q"`` in lowest terms with ``q > 0``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from .model import CombinatorialModel, ModelError, build_model
from .polytope import PolytopeError, Realization, build_polytope
from .zlattice import IntegerMatrix


class ModelFileError(ValueError):
    """Base class for problems with a model file."""

    kind = "error"


class ModelSyntaxError(ModelFileError):
    kind = "syntax"


class ModelSchemaError(ModelFileError):
    kind = "schema"


class ModelValidationError(ModelFileError):
    kind = "validation"


_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(x, where: str = "value") -> Fraction:
    if isinstance(x, bool):
        raise ModelSchemaError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if m:
            p = int(m.group(1))
            q = int(m.group(2)) if m.group(2) is not None else 1
            if q == 0:
                raise ModelSchemaError(f"{where}: zero denominator in {x!r}")
            if gcd(abs(p), q) != 1:
                raise ModelSchemaError(f"{where}: {x!r} is not in lowest terms")
            return Fraction(p, q)
    raise ModelSchemaError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class ModelFile:
    name: str
    dimension: int
    facet_labels: list
    vertices: list
    lambda_: list
    realization: list | None = None
    functional: list | None = None
    orientation: int = 1

    @property
    def facet_count(self) -> int:
        return len(self.facet_labels)


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ModelSchemaError(f"{where}: expected an integer, got {x!r}")
    return x


def _list(x, where):
    if not isinstance(x, list):
        raise ModelSchemaError(f"{where}: expected a list, got {type(x).__name__}")
    return x


def read_model_file(data: dict) -> ModelFile:
    if not isinstance(data, dict):
        raise ModelSchemaError("top level: expected a JSON object")
    for key in ("dimension", "vertices", "lambda"):
        if key not in data:
            raise ModelSchemaError(f"missing required field {key!r}")
    n = _int(data["dimension"], "dimension")
    if n < 1:
        raise ModelSchemaError("dimension: must be at least 1")
    lam = [[_int(x, f"lambda[{i}][{j}]") for j, x in enumerate(_list(v, f"lambda[{i}]"))]
           for i, v in enumerate(_list(data["lambda"], "lambda"))]
    for i, v in enumerate(lam):
        if len(v) != n:
            raise ModelSchemaError(f"lambda[{i}]: has length {len(v)}, expected {n}")
    facets = data.get("facets", len(lam))
    if isinstance(facets, list):
        labels = [str(f) for f in facets]
    else:
        labels = [f"F{i + 1}" for i in range(_int(facets, "facets"))]
    m = len(labels)
    if len(lam) != m:
        raise ModelSchemaError(f"lambda: {len(lam)} vectors for {m} facets")
    verts = []
    for v, fs in enumerate(_list(data["vertices"], "vertices")):
        idx = [_int(i, f"vertices[{v}]") for i in _list(fs, f"vertices[{v}]")]
        for i in idx:
            if not 0 <= i < m:
                raise ModelSchemaError(f"vertices[{v}]: facet index {i} outside [0, {m})")
        verts.append(idx)
    real = None
    if data.get("realization") is not None:
        pts = _list(data["realization"], "realization")
        if len(pts) != len(verts):
            raise ModelSchemaError(
                f"realization: {len(pts)} points for {len(verts)} vertices")
        real = []
        for v, p in enumerate(pts):
            p = _list(p, f"realization[{v}]")
            if len(p) != n:
                raise ModelSchemaError(f"realization[{v}]: has length {len(p)}, expected {n}")
            real.append([parse_rational(x, f"realization[{v}][{j}]") for j, x in enumerate(p)])
    phi = None
    if data.get("functional") is not None:
        phi = [parse_rational(x, f"functional[{j}]")
               for j, x in enumerate(_list(data["functional"], "functional"))]
        if len(phi) != n:
            raise ModelSchemaError(f"functional: has length {len(phi)}, expected {n}")
    orientation = data.get("orientation", 1)
    if orientation not in (1, -1) or isinstance(orientation, bool):
        raise ModelSchemaError(f"orientation: must be 1 or -1, got {orientation!r}")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ModelSchemaError("name: expected a string")
    return ModelFile(name, n, labels, verts, lam, real, phi, orientation)


def load_model_file(source) -> ModelFile:
    """Read from a path, a JSON string, or an already-decoded dict."""
    if isinstance(source, dict):
        return read_model_file(source)
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        try:
            text = path.read_text()
        except FileNotFoundError:
            raise ModelSyntaxError(f"{path}: no such file") from None
        label = str(path)
    else:
        text, label = source, "<text>"
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(f"{label}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return read_model_file(data)


def build_from_file(mf: ModelFile) -> tuple[CombinatorialModel, Realization | None, int]:
    try:
        P = build_polytope(mf.dimension, mf.facet_count, mf.vertices)
        model = build_model(P, mf.dimension,
                            IntegerMatrix.from_columns(mf.lambda_, rows=mf.dimension))
    except (PolytopeError, ModelError) as exc:
        raise ModelValidationError(str(exc)) from exc
    R = None
    if mf.realization is not None or mf.functional is not None:
        R = Realization(
            tuple(tuple(p) for p in mf.realization) if mf.realization is not None else None,
            tuple(mf.functional) if mf.functional is not None else None,
        )
    return model, R, mf.orientation


def parse_model(source):
    """Parse and fully validate; returns ``(model, realization or None, orientation)``."""
    return build_from_file(load_model_file(source))


def model_to_dict(model: CombinatorialModel, name: str = "", realization: Realization = None,
                  orientation: int = 1) -> dict:
    out = {
        "name": name,
        "dimension": model.rank,
        "facets": model.polytope.facet_count,
        "vertices": [sorted(fs) for fs in model.polytope.vertex_facets],
        "lambda": [list(v) for v in model.vectors],
    }
    if realization is not None:
        if realization.coordinates is not None:
            out["realization"] = [[format_rational(x) for x in p] for p in realization.coordinates]
        if realization.functional is not None:
            out["functional"] = [format_rational(x) for x in realization.functional]
    out["orientation"] = orientation
    return out
