"""Catalog of named groups, generator fixtures and group-source resolution."""
from __future__ import annotations

import re
from pathlib import Path

from ..core.group import PermGroup
from ..errors import ValidationError
from .constructors import (
    make_g96_70,
    make_m11,
    make_psl2,
    make_psl3_4,
    make_sl2,
    make_standard,
    make_sz8,
)
from .fields import GF, FieldElement, field
from .fixture import FIXTURE_NAMES, fixture_dir, load_fixture

_PATTERNS = [
    (r"(?:P?SL|L)2\((\d+)\)", lambda m: make_psl2(int(m[1])) if not m[0].startswith("SL") else make_sl2(int(m[1]))),
    (r"P?SL3\(4\)|L3\(4\)", lambda m: make_psl3_4()),
    (r"Sz\(8\)", lambda m: make_sz8()),
    (r"M11", lambda m: make_m11()),
    (r"A(\d+)", lambda m: make_standard("alternating", int(m[1]))),
    (r"S(\d+)", lambda m: make_standard("symmetric", int(m[1]))),
    (r"C(\d+)", lambda m: make_standard("cyclic", int(m[1]))),
    (r"D(\d+)", lambda m: make_standard("dihedral", int(m[1]))),
    (r"Q(\d+)", lambda m: make_standard("quaternion", int(m[1]))),
    (r"SD(\d+)", lambda m: make_standard("semidihedral", int(m[1]))),
    (r"V4", lambda m: make_standard("klein")),
]


def catalog_group(name: str) -> PermGroup | None:
    """Construct a catalog group from its name, or None when the name is not a catalog name."""
    for pat, make in _PATTERNS:
        m = re.fullmatch(pat, name)
        if m:
            try:
                G = make(m)
            except (ValueError, KeyError) as exc:
                raise ValidationError(f"catalog group {name!r}: {exc}") from None
            G.name = name
            return G
    return None


def is_catalog_name(name: str) -> bool:
    return any(re.fullmatch(pat, name) for pat, _ in _PATTERNS)


def source_kind(source: str) -> str:
    """"catalog", "fixture" or "file"; raises ValidationError when ambiguous or unknown."""
    kinds = []
    if is_catalog_name(source):
        kinds.append("catalog")
    if source in FIXTURE_NAMES:
        kinds.append("fixture")
    if Path(source).is_file():
        kinds.append("file")
    if len(kinds) > 1:
        raise ValidationError(f"group source {source!r} is ambiguous: matches {', '.join(kinds)}")
    if not kinds:
        raise ValidationError(f"unknown group source {source!r}")
    return kinds[0]


def resolve_group(source: str) -> PermGroup:
    """Catalog name, then fixture name, then interchange file path."""
    kind = source_kind(source)
    if kind == "catalog":
        return catalog_group(source)
    if kind == "fixture":
        return load_fixture(source)
    from ..interchange import read_group

    return read_group(source)


__all__ = [
    "GF", "FieldElement", "field", "make_psl2", "make_sl2", "make_psl3_4", "make_sz8", "make_m11",
    "make_g96_70", "make_standard", "load_fixture", "fixture_dir", "FIXTURE_NAMES", "catalog_group",
    "resolve_group", "source_kind",
]
