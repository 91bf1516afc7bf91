"""JSON-lines family files.

One hyperplane per line::

    {"a": [1, 1, -2], "b": "0/1"}

``b`` is an exact fraction string. Writers always emit ``"p/q"``; readers
also accept a bare integer string such as ``"3"``. Decimal forms like
``"0.5"`` are rejected.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable

from .errors import InputError
from .family import Family
from .geometry import Hyperplane, Vertex, canonicalize

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


def format_fraction(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text) -> Fraction:
    if not isinstance(text, str) or not _FRACTION_RE.match(text):
        raise InputError(f"expected an exact fraction string 'p/q', got {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def plane_to_record(h: Hyperplane) -> dict:
    return {"a": list(h.normal), "b": format_fraction(h.offset)}


def record_to_plane(rec) -> Hyperplane:
    if not isinstance(rec, dict) or set(rec) != {"a", "b"}:
        raise InputError('record must be an object with exactly the keys "a" and "b"')
    a = rec["a"]
    if not isinstance(a, list) or not a:
        raise InputError('"a" must be a non-empty list of integers')
    if any(isinstance(x, bool) or not isinstance(x, int) for x in a):
        raise InputError('"a" must contain only integers')
    return canonicalize(a, parse_fraction(rec["b"]))


def vertex_to_list(v: Vertex) -> list[int]:
    return list(v.coords)


def parse_family(lines: Iterable[str], dim: int | None = None) -> Family:
    """Parse JSON-lines text. Errors name the offending 1-based line."""
    planes = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        try:
            h = record_to_plane(rec)
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
        if dim is None:
            dim = h.dim
        elif h.dim != dim:
            raise InputError(f"line {lineno}: dimension {h.dim} differs from {dim}")
        planes.append(h)
    if dim is None:
        raise InputError("empty family file and no dimension given")
    return Family(dim, planes)


def read_family(path, dim: int | None = None) -> Family:
    with open(path, encoding="utf-8") as fh:
        return parse_family(fh, dim)


def dump_family(family: Family) -> str:
    return "".join(json.dumps(plane_to_record(h)) + "\n" for h in family)


def write_family(family: Family, dest) -> None:
    """Write to an open text stream or to a path."""
    if hasattr(dest, "write"):
        dest.write(dump_family(family))
        return
    with open(dest, "w", encoding="utf-8") as fh:
        fh.write(dump_family(family))
