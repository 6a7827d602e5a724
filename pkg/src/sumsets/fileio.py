"""Reading and writing sets and reports.

Sets travel as JSON objects ``{"dim": n, "kind": ..., "data": ...}``:

* ``"points"``: ``data`` is a list of coordinate lists;
* ``"boxes"``: ``data`` is a list of ``{"lo": [...], "hi": [...]}`` objects
  (a pair ``[lo, hi]`` is accepted too).

Coordinates are written as ``"p/q"`` strings so nothing is lost to binary
floats.  On input, integers, ``"p/q"`` strings and decimal strings are all
read exactly; JSON floats are read as the exact value of the binary float.
CSV input holds one point per line, with an optional header line and ``#``
comments.

A :class:`Report` records one command run.  ``to_json``/``from_json`` round
trip exactly: Fractions become ``"p/q"`` strings, and an ordinary string that
happens to look like a fraction is protected with a leading apostrophe.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .rational import format_fraction, to_fraction
from .sets import BoxUnion, PointSet

SCHEMA_VERSION = 1
_RATIONAL = re.compile(r"^-?\d+/\d+$")


class InputError(ValueError):
    """Malformed input, with enough context to find the mistake."""

    def __init__(self, message: str, source: str = "<input>", line: Optional[int] = None, where: Optional[str] = None):
        place = source
        if line is not None:
            place += f":{line}"
        if where:
            place += f" ({where})"
        super().__init__(f"{place}: {message}")
        self.source = source
        self.line = line
        self.where = where


# -- sets ----------------------------------------------------------------------


def _coordinate(value, source: str, where: str, line: Optional[int] = None) -> Fraction:
    if isinstance(value, bool) or value is None or isinstance(value, (list, dict)):
        raise InputError(f"expected a number or 'p/q' string, got {json.dumps(value)}", source, line, where)
    try:
        return to_fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad coordinate {value!r}: {exc}", source, line, where) from None


def _vector(raw, dim: Optional[int], source: str, where: str, line: Optional[int] = None) -> tuple:
    if not isinstance(raw, list):
        raise InputError("expected a list of coordinates", source, line, where)
    if dim is not None and len(raw) != dim:
        raise InputError(f"expected {dim} coordinates, found {len(raw)}", source, line, where)
    return tuple(_coordinate(v, source, f"{where}[{j}]", line) for j, v in enumerate(raw))


def _line_of(text: str, needle_index: int) -> Optional[int]:
    """Line of the start of the ``needle_index``-th item in the data array, best effort."""
    match = re.search(r'"data"\s*:\s*\[', text)
    if match is None:
        return None
    depth, count, pos = 0, -1, match.end()
    while pos < len(text):
        ch = text[pos]
        if ch in "[{":
            if depth == 0:
                count += 1
                if count == needle_index:
                    return text.count("\n", 0, pos) + 1
            depth += 1
        elif ch in "]}":
            if depth == 0:
                return None
            depth -= 1
        elif depth == 0 and ch not in " \t\r\n,":
            count += 1
            if count == needle_index:
                return text.count("\n", 0, pos) + 1
            while pos + 1 < len(text) and text[pos + 1] not in ",]":
                pos += 1
        pos += 1
    return None


def set_from_dict(obj: Any, source: str = "<input>", text: Optional[str] = None) -> Union[PointSet, BoxUnion]:
    """Build a set from the decoded JSON object."""
    if not isinstance(obj, dict):
        raise InputError("the top level must be an object with keys dim, kind, data", source)
    missing = [k for k in ("kind", "data") if k not in obj]
    if missing:
        raise InputError(f"missing key(s) {missing}", source)
    kind, data = obj["kind"], obj["data"]
    if kind not in ("points", "boxes"):
        raise InputError(f"unknown kind {json.dumps(kind)} (expected 'points' or 'boxes')", source, where="kind")
    dim = obj.get("dim")
    if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool) or dim < 1):
        raise InputError(f"dim must be a positive integer, got {json.dumps(dim)}", source, where="dim")
    if not isinstance(data, list) or not data:
        raise InputError("data must be a non-empty list", source, where="data")

    def line(i):
        return _line_of(text, i) if text is not None else None

    if kind == "points":
        if dim is None:
            dim = len(data[0]) if isinstance(data[0], list) else None
        pts = [_vector(p, dim, source, f"data[{i}]", line(i)) for i, p in enumerate(data)]
        return PointSet(pts)
    else:
        boxes = []
        for i, b in enumerate(data):
            where = f"data[{i}]"
            if isinstance(b, dict):
                if set(b) != {"lo", "hi"}:
                    raise InputError("a box needs exactly the keys lo and hi", source, line(i), where)
                lo_raw, hi_raw = b["lo"], b["hi"]
            elif isinstance(b, list) and len(b) == 2:
                lo_raw, hi_raw = b
            else:
                raise InputError("a box is {lo: [...], hi: [...]} or [lo, hi]", source, line(i), where)
            if dim is None and isinstance(lo_raw, list):
                dim = len(lo_raw)
            lo = _vector(lo_raw, dim, source, where + ".lo", line(i))
            hi = _vector(hi_raw, dim, source, where + ".hi", line(i))
            bad = [j for j in range(len(lo)) if lo[j] > hi[j]]
            if bad:
                raise InputError(f"lo exceeds hi on axis {bad[0]}", source, line(i), where)
            boxes.append((lo, hi))
        return BoxUnion(boxes)


def parse_set_json(text: str, source: str = "<input>") -> Union[PointSet, BoxUnion]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} (column {exc.colno})", source, exc.lineno) from None
    return set_from_dict(obj, source, text)


def parse_points_csv(text: str, source: str = "<input>") -> PointSet:
    """One point per row; a first row without any numbers is taken as a header."""
    pts: List[tuple] = []
    dim = None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        if not cells or all(not c for c in cells) or cells[0].startswith("#"):
            continue
        if not pts and dim is None and all(not _looks_numeric(c) for c in cells):
            continue  # header
        if dim is None:
            dim = len(cells)
        elif len(cells) != dim:
            raise InputError(f"expected {dim} fields, found {len(cells)}", source, lineno)
        pts.append(tuple(_coordinate(c, source, f"field {j + 1}", lineno) for j, c in enumerate(cells)))
    if not pts:
        raise InputError("no points found", source)
    return PointSet(pts)


def _looks_numeric(cell: str) -> bool:
    try:
        Fraction(cell)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def load_set(path: Union[str, Path]) -> Union[PointSet, BoxUnion]:
    """Read a set from a ``.json`` or ``.csv`` file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(path)) from None
    if path.suffix.lower() == ".csv":
        return parse_points_csv(text, str(path))
    return parse_set_json(text, str(path))


def load_vectors(path: Union[str, Path]) -> List[tuple]:
    """Read a list of vectors in the points format, keeping repeats and order
    (a PointSet would merge equal vectors)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(path)) from None
    if path.suffix.lower() == ".csv":
        rows = []
        for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
            cells = [c.strip() for c in row]
            if not cells or all(not c for c in cells) or cells[0].startswith("#"):
                continue
            if not rows and all(not _looks_numeric(c) for c in cells):
                continue
            if rows and len(cells) != len(rows[0]):
                raise InputError(f"expected {len(rows[0])} fields, found {len(cells)}", str(path), lineno)
            rows.append(tuple(_coordinate(c, str(path), f"field {j + 1}", lineno) for j, c in enumerate(cells)))
        if not rows:
            raise InputError("no vectors found", str(path))
        return rows
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} (column {exc.colno})", str(path), exc.lineno) from None
    if not isinstance(obj, dict) or obj.get("kind") != "points" or not isinstance(obj.get("data"), list) or not obj["data"]:
        raise InputError("expected an object with kind 'points' and a non-empty data list", str(path))
    first = obj["data"][0]
    dim = obj.get("dim") or (len(first) if isinstance(first, list) else None)
    return [_vector(v, dim, str(path), f"data[{i}]", _line_of(text, i)) for i, v in enumerate(obj["data"])]


def set_to_dict(obj: Union[PointSet, BoxUnion]) -> Dict[str, Any]:
    if isinstance(obj, PointSet):
        return {
            "dim": obj.dim,
            "kind": "points",
            "data": [[format_fraction(c) for c in p] for p in obj.points],
        }
    if isinstance(obj, BoxUnion):
        return {
            "dim": obj.dim,
            "kind": "boxes",
            "data": [
                {"lo": [format_fraction(c) for c in lo], "hi": [format_fraction(c) for c in hi]} for lo, hi in obj.boxes
            ],
        }
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dump_set(obj: Union[PointSet, BoxUnion]) -> str:
    return json.dumps(set_to_dict(obj), indent=1) + "\n"


def save_set(obj, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_set(obj), encoding="utf-8")


# -- plain values ------------------------------------------------------------------


def normalize(value: Any) -> Any:
    """Reduce a value to the JSON-compatible shapes a Report keeps.

    Tuples become lists, dict keys become strings, numpy scalars become
    Python numbers, and objects the encoder does not know are replaced by
    their ``to_dict()`` (when they have one) or by their ``str``."""
    if value is None or isinstance(value, (bool, str, Fraction)):
        return value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, float):
        return value
    if isinstance(value, np.generic):
        return normalize(value.item())
    if isinstance(value, np.ndarray):
        return [normalize(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [normalize(v) for v in items]
    if hasattr(value, "to_dict"):
        return normalize(value.to_dict())
    if type(value).__name__ == "mpq":
        return Fraction(int(value.numerator), int(value.denominator))
    return str(value)


def encode(value: Any) -> Any:
    """Normalised value to plain JSON types."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, str):
        return "'" + value if (_RATIONAL.match(value) or value.startswith("'")) else value
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return {"float": repr(value)}
        return value
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [encode(v) for v in value]
    return value


def decode(value: Any) -> Any:
    if isinstance(value, str):
        if value.startswith("'"):
            return value[1:]
        if _RATIONAL.match(value):
            return Fraction(value)
        return value
    if isinstance(value, dict):
        if set(value) == {"float"} and value["float"] in ("nan", "inf", "-inf"):
            return float(value["float"])
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode(v) for v in value]
    return value


# -- reports -----------------------------------------------------------------------


def measure_to_dict(res) -> Dict[str, Any]:
    """A MeasureResult (or an error entry) as a plain dict."""
    if isinstance(res, dict):
        return normalize(res)
    return normalize(
        {
            "value": res.value,
            "lower": res.lower,
            "upper": res.upper,
            "exact": res.exact,
            "exact_squared": res.exact_squared,
            "flags": list(res.flags),
            "certificate": res.certificate,
        }
    )


def verifier_to_dict(rep) -> Dict[str, Any]:
    return normalize(
        {
            "name": rep.name,
            "verdict": rep.verdict,
            "lhs": rep.lhs,
            "rhs": rep.rhs,
            "relation": rep.relation,
            "exact": rep.exact,
            "instance": rep.instance,
            "details": rep.details,
            "trials": [verifier_to_dict(t) for t in rep.trials],
            "runtime": rep.runtime,
            "seed": rep.seed,
        }
    )


@dataclass
class Report:
    """Persistent record of one command run.

    ``rows`` carries tabular output (one dict per row, e.g. one per k);
    ``results`` carries verifier outcomes.  Timings are kept apart from the
    payload so that two runs can be compared with ``content()``."""

    command: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    results: List[Dict[str, Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        self.command = [str(c) for c in self.command]
        self.rows = normalize(self.rows)
        self.results = normalize(self.results)
        self.meta = normalize(self.meta)
        self.timings = {str(k): float(v) for k, v in self.timings.items()}

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        out = {
            "schema_version": self.schema_version,
            "command": self.command,
            "meta": encode(self.meta),
            "rows": encode(self.rows),
            "results": encode(self.results),
        }
        if timings:
            out["timings"] = self.timings
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=1, sort_keys=True) + "\n"

    def content(self) -> str:
        """The JSON without timings: identical for identical runs."""
        return self.to_json(timings=False)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise InputError(f"unsupported report schema version {version!r}", where="schema_version")
        return cls(
            command=list(data.get("command", [])),
            rows=decode(data.get("rows", [])),
            results=decode(data.get("results", [])),
            meta=decode(data.get("meta", {})),
            timings=dict(data.get("timings", {})),
            schema_version=version,
        )

    @classmethod
    def from_json(cls, text: str, source: str = "<report>") -> "Report":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg} (column {exc.colno})", source, exc.lineno) from None
        if not isinstance(data, dict):
            raise InputError("a report is a JSON object", source)
        return cls.from_dict(data)

    def columns(self) -> List[str]:
        seen: Dict[str, None] = {}
        for row in self.rows:
            for key in row:
                seen.setdefault(key, None)
        return list(seen)

    def to_csv(self, columns: Optional[Sequence[str]] = None) -> str:
        """Rows as CSV; rationals stay ``p/q`` and nested values are JSON."""
        cols = list(columns) if columns is not None else self.columns()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in self.rows:
            out = []
            for c in cols:
                v = row.get(c)
                if v is None:
                    out.append("")
                elif isinstance(v, Fraction):
                    out.append(format_fraction(v))
                elif isinstance(v, (dict, list)):
                    out.append(json.dumps(encode(v), sort_keys=True))
                else:
                    out.append(str(v))
            writer.writerow(out)
        return buf.getvalue()

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Report":
        path = Path(path)
        return cls.from_json(path.read_text(encoding="utf-8"), str(path))
