"""Frame files and deterministic JSON output.

Frame file schema::

    {"field": "real" | "complex",
     "d": <int>,
     "vectors": [[...], ...],       # n vectors of d entries
     "labels": ["...", ...]}        # optional

Real entries are JSON numbers; complex entries are ``[re, im]`` pairs
(a bare number is read as a complex value with zero imaginary part).
"""

from __future__ import annotations

import json
import math
from numbers import Real
from pathlib import Path

import numpy as np

from .frames import Frame
from .hermitian import ScalarField

SIG_DIGITS = 12


class FrameFileError(ValueError):
    """A frame file could not be parsed; the message names the offending field."""


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise FrameFileError(f"{where}: expected a number, got {json.dumps(value)}")
    x = float(value)
    if not math.isfinite(x):
        raise FrameFileError(f"{where}: non-finite value")
    return x


def _entry(value, field: ScalarField, where: str):
    if field is ScalarField.REAL:
        return _number(value, where)
    if isinstance(value, list):
        if len(value) != 2:
            raise FrameFileError(f"{where}: complex entry must be [re, im], got {len(value)} items")
        return complex(_number(value[0], where + "[0]"), _number(value[1], where + "[1]"))
    return complex(_number(value, where), 0.0)


def frame_from_dict(doc) -> Frame:
    if not isinstance(doc, dict):
        raise FrameFileError("top level: expected a JSON object")
    for key in ("field", "d", "vectors"):
        if key not in doc:
            raise FrameFileError(f"missing required key {key!r}")
    try:
        field = ScalarField.parse(doc["field"])
    except ValueError as exc:
        raise FrameFileError(f"field: {exc}") from None
    d = doc["d"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise FrameFileError(f"d: expected a positive integer, got {json.dumps(d)}")
    vectors = doc["vectors"]
    if not isinstance(vectors, list) or not vectors:
        raise FrameFileError("vectors: expected a nonempty list of vectors")
    rows = []
    for i, vec in enumerate(vectors):
        where = f"vectors[{i}]"
        if not isinstance(vec, list):
            raise FrameFileError(f"{where}: expected a list of {d} entries")
        if len(vec) != d:
            raise FrameFileError(f"{where}: expected {d} entries, got {len(vec)}")
        rows.append([_entry(x, field, f"{where}[{j}]") for j, x in enumerate(vec)])
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise FrameFileError("labels: expected a list of strings")
        if len(labels) != len(rows):
            raise FrameFileError(f"labels: expected {len(rows)} labels, got {len(labels)}")
    try:
        return Frame(np.array(rows, dtype=field.dtype), field, labels)
    except ValueError as exc:
        raise FrameFileError(f"vectors: {exc}") from None


def parse_frame(text: str) -> Frame:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameFileError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return frame_from_dict(doc)


def load_frame(path) -> Frame:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FrameFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_frame(text)


def frame_to_dict(f: Frame) -> dict:
    if f.field is ScalarField.REAL:
        vectors = [[float(x) for x in row] for row in f.vectors]
    else:
        vectors = [[[float(z.real), float(z.imag)] for z in row] for row in f.vectors]
    doc = {"field": f.field.value, "d": f.d, "vectors": vectors}
    if f.labels is not None:
        doc["labels"] = list(f.labels)
    return doc


def dump_frame(f: Frame) -> str:
    return json.dumps(frame_to_dict(f), indent=2) + "\n"


def round_sig(x: float, digits: int = SIG_DIGITS) -> float:
    """Round to ``digits`` significant digits; -0.0 becomes 0.0."""
    y = float(format(float(x), f".{digits}g"))
    return 0.0 if y == 0 else y


def canonical(obj):
    """Recursively round floats and convert numpy scalars/arrays for JSON."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(obj)
    return obj


def dumps_report(report: dict) -> str:
    return json.dumps(canonical(report), indent=2, ensure_ascii=False) + "\n"


def format_text(report: dict, indent: str = "") -> str:
    """Plain ``key: value`` rendering using the same rounded numbers as JSON."""
    lines = []
    for key, value in canonical(report).items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(format_text(value, indent + "  ").rstrip("\n"))
        else:
            lines.append(f"{indent}{key}: {json.dumps(value)}")
    return "\n".join(lines) + "\n"
