"""Group interchange format: {"degree": n, "generators": [[images...], ...], "name": optional}.

Points are 0-based. Writing then reading a group reproduces the same
degree, generator list and name exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

from .core.group import PermGroup, build_group
from .core.permutation import Permutation, PermutationError
from .errors import ValidationError


def group_to_dict(G: PermGroup) -> dict:
    d = {"degree": G.degree, "generators": [list(g.images) for g in G.generators]}
    if G.name:
        d["name"] = G.name
    return d


def group_from_dict(d: dict) -> PermGroup:
    if not isinstance(d, dict):
        raise ValidationError("group document must be a JSON object")
    try:
        degree = d["degree"]
        raw = d["generators"]
    except KeyError as exc:
        raise ValidationError(f"group document lacks {exc.args[0]!r}") from None
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise ValidationError(f"degree must be a positive integer, got {degree!r}")
    if not isinstance(raw, list) or not raw:
        raise ValidationError("generators must be a nonempty list")
    gens = []
    for j, imgs in enumerate(raw):
        if not isinstance(imgs, list) or len(imgs) != degree:
            raise ValidationError(f"generator {j} must list {degree} images")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in imgs):
            raise ValidationError(f"generator {j} has non-integer images")
        try:
            gens.append(Permutation(imgs))
        except PermutationError as exc:
            raise ValidationError(f"generator {j}: {exc}") from None
    name = d.get("name")
    if name is not None and not isinstance(name, str):
        raise ValidationError("name must be a string")
    return build_group(degree, gens, name=name)


def dumps_group(G: PermGroup) -> str:
    return json.dumps(group_to_dict(G))


def loads_group(text: str) -> PermGroup:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from None
    return group_from_dict(d)


def read_group(path) -> PermGroup:
    return loads_group(Path(path).read_text())


def write_group(G: PermGroup, path) -> None:
    Path(path).write_text(dumps_group(G) + "\n")
