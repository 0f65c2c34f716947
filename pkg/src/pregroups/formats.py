"""Reading the JSON input files: groups, pregroups and construction data.

A group reference is either an inline group object, a path (relative to the
referring file) to a group file, or a built-in name such as ``C4``, ``D8``,
``S3``, ``A4``, ``V4`` or ``GL3``.  Elements are given by index or label.
"""

from __future__ import annotations

import json
import random
import re
from pathlib import Path
from typing import Any

from .constructions import AmalgamData, LSData, RobinsonData, RobinsonFactor
from .errors import FormatError
from .groups import (FiniteGroup, GroupHom, Subgroup, alternating_group, cyclic_group, dihedral_group,
                     gl3_f2, is_prime, klein_four, symmetric_group)
from .pregroup import Pregroup


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def builtin_group(name: str) -> FiniteGroup | None:
    m = re.fullmatch(r"([CDSA])(\d+)", name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            return None
        if kind == "C":
            return cyclic_group(n)
        if kind == "D" and n % 2 == 0 and n >= 4:
            return dihedral_group(n // 2)
        if kind == "S":
            return symmetric_group(n)
        if kind == "A":
            return alternating_group(n)
        return None
    return {"V4": klein_four, "GL3": gl3_f2}.get(name, lambda: None)()


def resolve_group(ref, base: Path | None = None) -> FiniteGroup:
    if isinstance(ref, dict):
        return FiniteGroup.from_json(ref)
    if isinstance(ref, str):
        path = (base or Path(".")) / ref
        if path.is_file():
            return FiniteGroup.from_json(load_json(path))
        G = builtin_group(ref)
        if G is not None:
            return G
        raise FormatError(f"group reference {ref!r} is neither a file nor a known group")
    raise FormatError(f"bad group reference {ref!r}")


def load_group(path: str | Path) -> FiniteGroup:
    return resolve_group(load_json(path), Path(path).parent)


def load_pregroup(path: str | Path) -> Pregroup:
    return Pregroup.from_json(load_json(path), name=Path(path).stem)


def _field(data: dict, key: str):
    if not isinstance(data, dict) or key not in data:
        raise FormatError(f"missing field {key!r}")
    return data[key]


def _members(G: FiniteGroup, refs) -> list[int]:
    if not isinstance(refs, list):
        raise FormatError("member lists must be JSON arrays")
    return [G.find(r) for r in refs]


def _subgroup(G: FiniteGroup, refs) -> Subgroup:
    ms = _members(G, refs)
    try:
        return G.subgroup(ms)
    except ValueError as exc:
        raise FormatError(f"{sorted(ms)} is not a subgroup") from exc


def _map(G: FiniteGroup, spec: dict, target: FiniteGroup | None = None) -> GroupHom:
    """``{"source": [...], "images": [...]}`` as a homomorphism onto its image."""
    target = target or G
    src = _members(G, _field(spec, "source"))
    img = _members(target, _field(spec, "images"))
    if len(src) != len(img):
        raise FormatError("source and images differ in length")
    S = _subgroup(G, src)
    if len(set(src)) != len(src) or set(src) != S.member_set:
        raise FormatError("source must list every member of a subgroup exactly once")
    try:
        T = target.subgroup(img)
    except ValueError as exc:
        raise FormatError("images do not form a subgroup") from exc
    hom = GroupHom(S, T, dict(zip(src, img)))
    if not hom.is_homomorphism():
        raise FormatError("map is not a homomorphism")
    return hom


def _prime(data: dict, default: int | None = None) -> int | None:
    p = data.get("p", default)
    if p is not None and (not isinstance(p, int) or not is_prime(p)):
        raise FormatError(f"p = {p!r} is not a prime")
    return p


def read_fusion_input(data: dict, base: Path | None = None) -> tuple[FiniteGroup, int | None, list[GroupHom]]:
    """Fusion generator file: the group S, the prime and the generating maps."""
    S = resolve_group(_field(data, "S"), base)
    gens = [_map(S, g) for g in _field(data, "generators")]
    for h in gens:
        if not h.is_injective():
            raise FormatError("fusion generators must be injective")
    return S, _prime(data), gens


def read_ls_input(data: dict, base: Path | None = None, seed: int | None = None) -> LSData:
    S, p, gens = read_fusion_input(data, base)
    try:
        if seed is not None:
            return LSData.with_random_transversals(S, gens, random.Random(seed), p)
        return LSData(S, gens, p=p)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_robinson_input(data: dict, base: Path | None = None, seed: int | None = None) -> RobinsonData:
    S = resolve_group(_field(data, "S"), base)
    factors = []
    for fac in _field(data, "factors"):
        G = resolve_group(_field(fac, "G"), base)
        Si = _subgroup(S, _field(fac, "S_i"))
        images = _members(G, _field(fac, "f"))
        if len(images) != Si.order:
            raise FormatError("f must give one image per member of S_i, in order")
        src = _members(S, _field(fac, "S_i"))
        f = GroupHom(Si, G.whole(), dict(zip(src, images)))
        factors.append(RobinsonFactor(G, Si, f))
    try:
        return RobinsonData(S, factors, _prime(data), random.Random(seed) if seed is not None else None)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_amalgam_input(data: dict, base: Path | None = None) -> AmalgamData:
    """``{"A", "B", "C", "phi_A", "phi_B"}`` with images of the elements of C in index order."""
    A, B, C = (resolve_group(_field(data, k), base) for k in ("A", "B", "C"))
    maps = []
    for key, X in (("phi_A", A), ("phi_B", B)):
        img = _members(X, _field(data, key))
        if len(img) != C.order:
            raise FormatError(f"{key} must list one image per element of C")
        maps.append(GroupHom(C.whole(), X.whole(), dict(enumerate(img))))
    try:
        return AmalgamData(A, B, C, *maps)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
