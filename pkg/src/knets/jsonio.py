"""JSON exchange format.

Rationals are strings "p/q" (or "p"); elements of an extension are
``{"coeffs": [...]}`` against the field declared once per document as
``{"field": {"poly": ["c0", ..., "1"]}}``.  A missing field means Q.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .errors import FormatError, KNetError, NotANet
from .field import QQ, NumberField, Scalar, make_cyclotomic_field, make_quadratic_field
from .geometry import ProjLine, ProjPoint, _Homogeneous
from .latin import LatinSquare
from .net import KNetConfig
from .pencil import DegreeForm


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_frac(obj) -> Fraction:
    if isinstance(obj, bool):
        raise FormatError(f"expected a rational, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational {obj!r}") from exc
    raise FormatError(f"expected a rational string, got {obj!r}")


def field_to_json(K: NumberField) -> dict:
    return {"poly": [_frac_str(c) for c in K.poly]}


def field_from_json(obj) -> NumberField:
    if obj is None:
        return QQ
    if not isinstance(obj, dict) or not isinstance(obj.get("poly"), list):
        raise FormatError("field must be an object with a 'poly' list")
    try:
        K = NumberField(tuple(_parse_frac(c) for c in obj["poly"]))
    except KNetError as exc:
        raise FormatError(f"bad field: {exc}") from exc
    return _named(K)


def _named(K: NumberField) -> NumberField:
    """Swap in the library's named copy of a cyclotomic or quadratic field."""
    if K.is_rational:
        return QQ
    for n in range(3, 7):
        C = make_cyclotomic_field(n)
        if C == K:
            return C
    if K.degree == 2 and K.poly[1] == 0:
        try:
            return make_quadratic_field(-K.poly[0])
        except KNetError:
            return K
    return K


def scalar_to_json(x: Scalar):
    if x.is_rational():
        return _frac_str(x.to_fraction())
    return {"coeffs": [_frac_str(c) for c in x.coeffs]}


def scalar_from_json(obj, K: NumberField) -> Scalar:
    if isinstance(obj, dict):
        coeffs = obj.get("coeffs")
        if not isinstance(coeffs, list) or len(coeffs) > K.degree or not coeffs:
            raise FormatError(f"bad scalar {obj!r} for field {K.name}")
        return K([_parse_frac(c) for c in coeffs])
    return K(_parse_frac(obj))


def coords_to_json(p: _Homogeneous) -> list:
    return [scalar_to_json(c) for c in p.coords]


def _coords(obj, K: NumberField, n: int = 3) -> list[Scalar]:
    if not isinstance(obj, list) or len(obj) != n:
        raise FormatError(f"expected {n} homogeneous coordinates, got {obj!r}")
    return [scalar_from_json(c, K) for c in obj]


def point_from_json(obj, K: NumberField) -> ProjPoint:
    try:
        return ProjPoint(_coords(obj, K), K)
    except FormatError:
        raise
    except (KNetError, ValueError) as exc:
        raise FormatError(f"bad point {obj!r}: {exc}") from exc


def line_from_json(obj, K: NumberField) -> ProjLine:
    try:
        return ProjLine(_coords(obj, K), K)
    except FormatError:
        raise
    except (KNetError, ValueError) as exc:
        raise FormatError(f"bad line {obj!r}: {exc}") from exc


def _doc_field(doc: dict, override: NumberField | None) -> NumberField:
    if override is not None:
        return override
    return field_from_json(doc.get("field"))


def net_to_json(config: KNetConfig) -> dict:
    return {
        "field": field_to_json(config.field),
        "classes": [{"lines": [coords_to_json(l) for l in c]} for c in config.classes],
        "points": [coords_to_json(p) for p in config.points],
    }


def net_from_json(doc, field: NumberField | None = None) -> KNetConfig:
    """Load a net; when "points" is absent the cross-class meets are used."""
    if not isinstance(doc, dict) or not isinstance(doc.get("classes"), list):
        raise FormatError("net document needs a 'classes' list")
    K = _doc_field(doc, field)
    classes = []
    for c in doc["classes"]:
        lines = c.get("lines") if isinstance(c, dict) else c
        if not isinstance(lines, list):
            raise FormatError("each class needs a 'lines' list")
        classes.append([line_from_json(l, K) for l in lines])
    for i, c in enumerate(classes):
        if len(set(c)) != len(c):
            # well-formed input, but not a net: a mathematical failure
            raise NotANet(f"class {i + 1} repeats a line")
    points = None
    if doc.get("points") is not None:
        if not isinstance(doc["points"], list):
            raise FormatError("'points' must be a list")
        points = [point_from_json(p, K) for p in doc["points"]]
    try:
        return KNetConfig.from_lines(classes, points=points)
    except (KNetError, ValueError) as exc:
        raise FormatError(f"cannot assemble net: {exc}") from exc


def points_from_json(doc, field: NumberField | None = None) -> list[ProjPoint]:
    """Accepts {"points": [...]}, a bare list, or a net document."""
    if isinstance(doc, list):
        doc = {"points": doc}
    if not isinstance(doc, dict):
        raise FormatError("expected a points document")
    K = _doc_field(doc, field)
    if "points" not in doc and "classes" in doc:
        return list(net_from_json(doc, field).points)
    if not isinstance(doc.get("points"), list):
        raise FormatError("points document needs a 'points' list")
    return [point_from_json(p, K) for p in doc["points"]]


def lines_from_json(doc, field: NumberField | None = None) -> list[ProjLine]:
    """Accepts {"lines": [...]} or a bare list of lines."""
    if isinstance(doc, list):
        doc = {"lines": doc}
    if not isinstance(doc, dict) or not isinstance(doc.get("lines"), list):
        raise FormatError("expected a document with a 'lines' list")
    K = _doc_field(doc, field)
    return [line_from_json(l, K) for l in doc["lines"]]


def latin_from_json(doc) -> LatinSquare:
    if not isinstance(doc, dict) or not isinstance(doc.get("cells"), list):
        raise FormatError("Latin square document needs 'cells'")
    try:
        cells = tuple(tuple(int(x) for x in row) for row in doc["cells"])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad Latin square cells: {exc}") from exc
    L = LatinSquare(cells)  # NotLatin is a property failure, not a format error
    if "order" in doc and doc["order"] != L.order:
        raise FormatError(f"declared order {doc['order']} but cells have order {L.order}")
    return L


def latin_list_from_json(doc) -> list[LatinSquare]:
    """One square, a list of squares, or {"squares": [...]}."""
    if isinstance(doc, dict) and "squares" in doc:
        doc = doc["squares"]
    if isinstance(doc, list):
        return [latin_from_json(d) for d in doc]
    return [latin_from_json(doc)]


def form_from_json(doc, field: NumberField | None = None) -> DegreeForm:
    if not isinstance(doc, dict) or "degree" not in doc or not isinstance(doc.get("coeffs"), list):
        raise FormatError("form document needs 'degree' and 'coeffs'")
    K = _doc_field(doc, field)
    try:
        return DegreeForm(int(doc["degree"]), tuple(scalar_from_json(c, K) for c in doc["coeffs"]))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _default(obj):
    if isinstance(obj, Scalar):
        return scalar_to_json(obj)
    if isinstance(obj, _Homogeneous):
        return coords_to_json(obj)
    if isinstance(obj, Fraction):
        return _frac_str(obj)
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


def dumps(obj: Any) -> str:
    """Deterministic JSON text; knets objects are serialized on the fly."""
    return json.dumps(obj, default=_default, indent=2, sort_keys=False) + "\n"


def load_path(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc


def write_path(path: str | Path, obj: Any) -> None:
    try:
        Path(path).write_text(dumps(obj))
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc}") from exc
