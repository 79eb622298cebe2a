"""JSON file formats: group files and bundle files.

Group file:
    {"name": str, "degree": int, "generators": [[int, ...], ...],
     "normal_subgroup_generators": [int, ...]}   # indices into "generators"

Bundle file:
    {"group": str,                       # path relative to the bundle file
     "base": {"points": int, "action": [[int, ...], ...]},   # one row per element
     "fibers": [{"orbit_rep": int,       # any point; at least one per orbit
                 "character": {"irreducible_multiplicities": [int, ...]}
                           or [cyclotomic values]}]}

Fiber multiplicities are indexed by the rows of the character table of the
stabilizer of the given point.  Storing fibers at several points of one
orbit is allowed; the verification cross-checks the redundant data.
"""

from __future__ import annotations

import json
import os
from typing import Optional

from .bundles import EquivariantBundle, GSet
from .catalog import build_catalog_group, catalog_entry
from .characters import ClassFunction, cyclotomic_from_jsonable
from .errors import IsotypicError
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, Subgroup, group_from_generators


class FileFormatError(IsotypicError):
    """Malformed input file."""


def load_group_file(path: str, cap: int = DEFAULT_ORDER_CAP) -> tuple[FiniteGroup, Optional[Subgroup]]:
    """Build a group (and its named normal subgroup, if any) from a file.

    The pseudo-path "catalog:NAME" resolves to a built-in group.
    """
    if path.startswith("catalog:"):
        return build_catalog_group(path.split(":", 1)[1], cap=cap)
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError("cannot read group file %s: %s" % (path, exc))
    return group_from_jsonable(data, cap=cap)


def group_from_jsonable(data: dict, cap: int = DEFAULT_ORDER_CAP) -> tuple[FiniteGroup, Optional[Subgroup]]:
    try:
        name = str(data["name"])
        degree = int(data["degree"])
        gens = [list(map(int, p)) for p in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError("group file is missing fields: %s" % exc)
    G = group_from_generators(degree, gens, name=name, cap=cap)
    normal = None
    idxs = data.get("normal_subgroup_generators")
    if idxs is not None:
        try:
            elems = [G.perm_index(tuple(gens[int(i)])) for i in idxs]
        except (IndexError, ValueError, KeyError) as exc:
            raise FileFormatError("bad normal_subgroup_generators: %s" % exc)
        normal = G.subgroup(elems, name="%s-normal" % name)
    return G, normal


def group_to_jsonable(name: str, degree: int, generators, normal_indices=None) -> dict:
    data = {"name": name, "degree": degree,
            "generators": [list(p) for p in generators]}
    if normal_indices is not None:
        data["normal_subgroup_generators"] = list(normal_indices)
    return data


def catalog_group_file(name: str) -> dict:
    entry = catalog_entry(name)
    return group_to_jsonable(entry.name, entry.degree, entry.generators,
                             entry.normal_generator_indices or None)


def load_bundle_file(path: str) -> tuple[EquivariantBundle, FiniteGroup, Optional[Subgroup]]:
    """Load a bundle with its group; the group reference is resolved relative
    to the bundle file's directory."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError("cannot read bundle file %s: %s" % (path, exc))
    ref = data.get("group")
    if not isinstance(ref, str):
        raise FileFormatError("bundle file needs a 'group' file reference")
    if not ref.startswith("catalog:") and not os.path.isabs(ref):
        ref = os.path.join(os.path.dirname(os.path.abspath(path)), ref)
    G, A = load_group_file(ref)
    bundle = bundle_from_jsonable(data, G)
    return bundle, G, A


def bundle_from_jsonable(data: dict, G: FiniteGroup) -> EquivariantBundle:
    try:
        base_data = data["base"]
        points = int(base_data["points"])
        action = [list(map(int, row)) for row in base_data["action"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError("bundle base is malformed: %s" % exc)
    if len(action) != G.order or any(len(row) != points for row in action):
        raise FileFormatError("bundle action table must be |G| x points")
    try:
        base = GSet(G, action)
    except ValueError as exc:
        raise FileFormatError("bundle base: %s" % exc)

    fibers = {}
    mults = {}
    for fib in data.get("fibers", []):
        try:
            rep = int(fib["orbit_rep"])
            char = fib["character"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError("bundle fiber entry is malformed: %s" % exc)
        stab = base.stabilizer(rep)
        sgrp, _ = stab.as_group()
        if isinstance(char, dict) and "irreducible_multiplicities" in char:
            mults[rep] = [int(m) for m in char["irreducible_multiplicities"]]
        elif isinstance(char, list):
            values = [cyclotomic_from_jsonable(v) for v in char]
            if len(values) != len(sgrp.conjugacy_classes()):
                raise FileFormatError("fiber character has %d values, stabilizer has %d classes"
                                      % (len(values), len(sgrp.conjugacy_classes())))
            fibers[rep] = ClassFunction(sgrp, values)
        else:
            raise FileFormatError("fiber character must be multiplicities or a value list")
    if mults and fibers:
        raise FileFormatError("mix of multiplicity and value fibers is not supported")
    try:
        if mults:
            return EquivariantBundle.from_multiplicities(base, mults)
        return EquivariantBundle(base, fibers)
    except ValueError as exc:
        raise FileFormatError(str(exc))


def bundle_to_jsonable(bundle: EquivariantBundle, group_ref: str) -> dict:
    return {
        "group": group_ref,
        "base": {"points": bundle.base.size,
                 "action": [list(row) for row in bundle.base.action]},
        "fibers": [{"orbit_rep": rep,
                    "character": {"irreducible_multiplicities": list(ms)}}
                   for rep, ms in sorted(bundle.multiplicities.items())],
    }
