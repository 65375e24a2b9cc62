"""Generator fixtures shipped as JSON, validated on every load.

A fixture file holds the interchange fields plus ``expected_order``, a
``properties`` block, a ``checksum`` (sha256 of the canonical degree and
generator list) and a provenance note. ``FIXITY_FIXTURE_DIR`` overrides the
directory the files are read from.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from ..core.group import PermGroup
from ..errors import FixtureIntegrityError, ValidationError
from ..interchange import group_from_dict

FIXTURE_NAMES = ("m11", "psl3_4", "sz8", "g96_70")
PACKAGE_DIR = Path(__file__).with_name("fixtures")


def fixture_dir() -> Path:
    env = os.environ.get("FIXITY_FIXTURE_DIR")
    return Path(env) if env else PACKAGE_DIR


def checksum(degree: int, generators) -> str:
    canon = json.dumps({"degree": degree, "generators": [list(g) for g in generators]}, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _o2_order(G: PermGroup) -> int:
    from ..structure import core_mask, sylow_mask

    T = G.table
    return int(core_mask(T, sylow_mask(T, 2)).sum()) if G.order % 2 == 0 else 1


def _center_order(G: PermGroup) -> int:
    from ..structure import center_mask

    return int(center_mask(G.table).sum())


def _fitting_index2_elementary_abelian(G: PermGroup) -> int:
    """How many subgroups of index at most 2 in F(G) are elementary abelian."""
    from ..structure import fitting_subgroup, is_elementary_abelian, subgroups_of_index_at_most_2

    return sum(is_elementary_abelian(H) for H in subgroups_of_index_at_most_2(fitting_subgroup(G)))


PROPERTY_CHECKS = {
    "transitive": lambda G: G.is_transitive(),
    "k_transitive": lambda G: max(k for k in range(1, 6) if G.is_k_transitive(k)),
    "center_order": _center_order,
    "o2_order": _o2_order,
    "fitting_index2_elementary_abelian": _fitting_index2_elementary_abelian,
}


def verify_properties(G: PermGroup, props: dict) -> None:
    for key, expected in props.items():
        if key not in PROPERTY_CHECKS:
            raise FixtureIntegrityError(f"unknown fixture property {key!r}")
        got = PROPERTY_CHECKS[key](G)
        if got != expected:
            raise FixtureIntegrityError(f"property {key}: expected {expected!r}, found {got!r}")


def fixture_document(name: str, G: PermGroup, properties: dict, provenance: str) -> dict:
    gens = [list(g.images) for g in G.generators]
    return {
        "name": name,
        "degree": G.degree,
        "generators": gens,
        "expected_order": G.order,
        "properties": properties,
        "checksum": checksum(G.degree, gens),
        "provenance": provenance,
    }


def load_fixture_document(d: dict, verify: bool = True) -> PermGroup:
    for key in ("degree", "generators", "expected_order", "checksum"):
        if key not in d:
            raise FixtureIntegrityError(f"fixture lacks {key!r}")
    if checksum(d["degree"], d["generators"]) != d["checksum"]:
        raise FixtureIntegrityError("checksum mismatch")
    try:
        G = group_from_dict({"degree": d["degree"], "generators": d["generators"], "name": d.get("name")})
    except ValidationError as exc:
        raise FixtureIntegrityError(str(exc)) from None
    if G.order != d["expected_order"]:
        raise FixtureIntegrityError(f"order {G.order} != expected {d['expected_order']}")
    if verify:
        verify_properties(G, d.get("properties", {}))
    return G


def fixture_path(name: str) -> Path:
    return fixture_dir() / f"{name}.json"


def load_fixture(name: str, verify: bool = True) -> PermGroup:
    """Build a fixture group after checking checksum, order and the properties block."""
    path = fixture_path(name)
    if not path.is_file():
        raise FixtureIntegrityError(f"fixture {name!r} not found at {path}")
    try:
        d = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FixtureIntegrityError(f"fixture {name!r} is not valid JSON: {exc}") from None
    return load_fixture_document(d, verify=verify)


def build_fixture_documents() -> dict[str, dict]:
    """Regenerate every fixture document from the constructors."""
    from .constructors import make_g96_70, make_m11, make_psl3_4, make_sz8

    docs = {
        "m11": fixture_document("m11", make_m11(), {"transitive": True, "k_transitive": 4},
                                "11-cycle plus a permutation of order 4; order 7920 and sharp 4-transitivity "
                                "identify the small Mathieu group"),
        "psl3_4": fixture_document("psl3_4", make_psl3_4(), {"transitive": True, "k_transitive": 2},
                                   "elementary transvections over the 4-element field acting on the 21 points "
                                   "of the projective plane"),
        "sz8": fixture_document("sz8", make_sz8(), {"transitive": True, "k_transitive": 2},
                                "unipotent, torus and swap matrices preserving the Tits ovoid "
                                "(1, x, y, xy + x^6 + y^4) in PG(3, 8), acting on its 65 points"),
        "g96_70": fixture_document("g96_70", make_g96_70(),
                                   {"transitive": True, "center_order": 1, "o2_order": 32,
                                    "fitting_index2_elementary_abelian": 1},
                                   "affine maps v -> vA + b on the 4-element field squared, A in <scalar w> x "
                                   "<[[1,1],[0,1]]>, acting on the 32 cosets of the scalar C3"),
    }
    return docs


def _format_document(doc: dict) -> str:
    """Pretty JSON with one generator per line."""
    lines = ["{"]
    items = list(doc.items())
    for j, (key, value) in enumerate(items):
        comma = "," if j < len(items) - 1 else ""
        if key == "generators":
            gens = ",\n".join("  " + json.dumps(g, separators=(",", ":")) for g in value)
            lines.append(f' "generators": [\n{gens}\n ]{comma}')
        else:
            lines.append(f" {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_fixtures(directory: Path | None = None) -> list[Path]:
    directory = Path(directory) if directory else PACKAGE_DIR
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, doc in build_fixture_documents().items():
        p = directory / f"{name}.json"
        p.write_text(_format_document(doc))
        out.append(p)
    return out
