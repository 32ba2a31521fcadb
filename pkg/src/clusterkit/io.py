"""Reading and writing families in the text and JSON formats.

Text format::

    FAMILY n=<n> k=<k>
    # comment
    1,3,4
    ...

One set per nonempty line, ascending, comma separated; duplicates are an
error. JSON: ``{"n": .., "k": .., "members": [[..], ..]}`` with an optional
``"ground"`` list for restricted families.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .families import ParameterError, SetFamily, from_mask, full_mask, to_mask

_HEADER = re.compile(r"^FAMILY\s+n=(\d+)\s+k=(\d+)\s*$")
_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


class FamilyParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {msg}" if where else msg)


def parse_family_text(text: str, source: str | None = None) -> SetFamily:
    lines = text.splitlines()
    header_idx = None
    for i, raw in enumerate(lines):
        if raw.strip() and not raw.lstrip().startswith("#"):
            header_idx = i
            break
    if header_idx is None:
        raise FamilyParseError("missing FAMILY header", None, source)
    m = _HEADER.match(lines[header_idx].strip())
    if not m:
        raise FamilyParseError(f"bad header {lines[header_idx]!r}", header_idx + 1, source)
    n, k = int(m.group(1)), int(m.group(2))
    seen: dict[int, int] = {}
    for i in range(header_idx + 1, len(lines)):
        line = lines[i].strip()
        if not line or line.startswith("#"):
            continue
        try:
            els = [int(x) for x in line.split(",")] if line else []
        except ValueError:
            raise FamilyParseError(f"not a comma-separated integer list: {line!r}", i + 1, source)
        if any(a >= b for a, b in zip(els, els[1:])):
            raise FamilyParseError(f"set not strictly ascending: {line!r}", i + 1, source)
        if len(els) != k:
            raise FamilyParseError(f"set has {len(els)} elements, expected k={k}", i + 1, source)
        if els and (els[0] < 1 or els[-1] > n):
            raise FamilyParseError(f"element outside [1, {n}]: {line!r}", i + 1, source)
        mask = to_mask(els)
        if mask in seen:
            raise FamilyParseError(f"duplicate set (first on line {seen[mask]})", i + 1, source)
        seen[mask] = i + 1
    return SetFamily(n, k, frozenset(seen))


def format_family_text(F: SetFamily) -> str:
    out = [f"FAMILY n={F.n} k={F.k}"]
    if F.ground != full_mask(F.n):
        out.append("# ground: " + ",".join(map(str, from_mask(F.ground))))
    out.extend(",".join(map(str, s)) for s in F.sets())
    return "\n".join(out) + "\n"


def family_to_json(F: SetFamily) -> dict:
    d = {"n": F.n, "k": F.k, "members": [list(s) for s in F.sets()]}
    if F.ground != full_mask(F.n):
        d["ground"] = list(from_mask(F.ground))
    return d


def family_from_json(obj, source: str | None = None) -> SetFamily:
    try:
        n, k, members = int(obj["n"]), int(obj["k"]), obj["members"]
        ground = obj.get("ground")
        masks = []
        for s in members:
            masks.append(to_mask(int(x) for x in s))
            if len(set(s)) != k:
                raise FamilyParseError(f"member {s} does not have k={k} distinct elements",
                                       None, source)
        if len(set(masks)) != len(masks):
            raise FamilyParseError("duplicate members", None, source)
        return SetFamily(n, k, frozenset(masks), -1 if ground is None else to_mask(ground))
    except FamilyParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FamilyParseError(f"invalid family JSON: {e}", None, source) from e


def parse_family(text: str, source: str | None = None) -> SetFamily:
    """Parse either format, chosen by the first non-blank character."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise FamilyParseError(f"invalid JSON: {e.msg}", e.lineno, source) from e
        return family_from_json(obj, source)
    return parse_family_text(text, source)


def read_family(path) -> SetFamily:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise FamilyParseError(f"cannot read file: {e.strerror}", None, str(p)) from e
    return parse_family(text, str(p))


def write_family(F: SetFamily, path, fmt: str = "text") -> None:
    p = Path(path)
    if fmt == "json":
        p.write_text(json.dumps(family_to_json(F)) + "\n")
    else:
        p.write_text(format_family_text(F))


def parse_rational(s: str) -> Fraction:
    """Parse "a/b" or an integer; decimals are rejected on purpose."""
    m = _RATIONAL.match(str(s))
    if not m:
        raise ParameterError(f"expected a rational like 1/3, got {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParameterError(f"zero denominator in {s!r}")
    return Fraction(num, den)
