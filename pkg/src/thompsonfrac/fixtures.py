"""Named triples used by the checks, the tests and the CLI.

Each fixture is also shipped as JSON under ``fixtures/``; ``load`` accepts
either a fixture name or a path to a triple file.
"""

from __future__ import annotations

import json
import os
from importlib import resources

from .groups import (
    GroupMap,
    Triple,
    aut_group,
    conjugation_map,
    cyclic,
    cyclic_mult,
    direct_product,
    inversion,
    load_triple,
    symmetric,
)


def _untwisted(g, name):
    i = GroupMap.identity(g)
    return Triple(g, i, i, name)


def _build(name: str) -> Triple:
    z2, z3, z4, z5, s3 = cyclic(2), cyclic(3), cyclic(4), cyclic(5), symmetric(3)
    if name == "z2":
        return _untwisted(z2, name)
    if name == "z3":
        return _untwisted(z3, name)
    if name == "z3inv":
        return Triple(z3, GroupMap.identity(z3), inversion(z3), name)
    if name == "z3inv_swap":
        return Triple(z3, inversion(z3), GroupMap.identity(z3), name)
    if name == "z3inv0":
        return Triple(z3, inversion(z3), inversion(z3), name)
    if name == "z4":
        return _untwisted(z4, name)
    if name == "z4inv":
        return Triple(z4, GroupMap.identity(z4), inversion(z4), name)
    if name == "z4dbl":
        # x ↦ 2x and the trivial map; both kill everything after two letters
        return Triple(z4, GroupMap(z4, z4, [0, 2, 0, 2]), GroupMap.trivial(z4), name)
    if name in ("z5_2", "z5_3", "z5_4"):
        k = int(name[-1])
        return Triple(z5, GroupMap.identity(z5), cyclic_mult(z5, k), name)
    if name == "s3":
        return _untwisted(s3, name)
    if name == "s3_inner":
        return Triple(s3, conjugation_map(s3, 1), conjugation_map(s3, 3), name)
    if name == "s3_inner2":
        return Triple(s3, conjugation_map(s3, 2), conjugation_map(s3, 5), name)
    if name == "v4_swap":
        v4 = direct_product(z2, z2)
        swap = [a for a in aut_group(v4) if a.image == (0, 2, 1, 3)][0]
        return Triple(v4, GroupMap.identity(v4), swap, name)
    raise KeyError(name)


NAMES = (
    "z2", "z3", "z3inv", "z3inv_swap", "z3inv0", "z4", "z4inv", "z4dbl",
    "z5_2", "z5_3", "z5_4", "s3", "s3_inner", "s3_inner2", "v4_swap",
)

_cache: dict = {}


def get(name: str) -> Triple:
    if name not in _cache:
        _cache[name] = _build(name)
    return _cache[name]


def fixture_path(name: str) -> str:
    return str(resources.files("thompsonfrac") / "fixtures" / f"{name}.json")


def load(spec: str) -> Triple:
    """A fixture name (with or without ``.json``) or a path to a triple file."""
    if os.path.exists(spec):
        return load_triple(spec)
    base = spec[:-5] if spec.endswith(".json") else spec
    if base in NAMES:
        return get(base)
    raise FileNotFoundError(spec)


def write_all(directory: str):
    os.makedirs(directory, exist_ok=True)
    for name in NAMES:
        with open(os.path.join(directory, f"{name}.json"), "w") as fh:
            json.dump(get(name).to_json(), fh, sort_keys=True)
            fh.write("\n")
