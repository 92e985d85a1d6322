"""Versioned JSON encoding of exact data, fans and certificates.

Integers are written as decimal strings and rationals as ``"p/q"`` so that
no value passes through a float.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .exact import Lattice, Vector, is_integral, primitive, vec
from .fan import Fan, FanError

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def enc_num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dec_num(s) -> Fraction | int:
    if not isinstance(s, str):
        raise FormatError(f"number must be a string, got {s!r}")
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad number {s!r}") from exc
    if "." in s or "e" in s.lower():
        raise FormatError(f"bad number {s!r}")
    return int(x) if x.denominator == 1 else x


def enc_vec(v: Sequence) -> list[str]:
    return [enc_num(x) for x in v]


def dec_vec(data) -> Vector:
    if not isinstance(data, list):
        raise FormatError(f"vector must be a list, got {data!r}")
    return vec(dec_num(x) for x in data)


def enc_mat(m) -> list[list[str]]:
    return [enc_vec(r) for r in m]


def dec_mat(data) -> tuple[Vector, ...]:
    if not isinstance(data, list):
        raise FormatError("matrix must be a list of rows")
    return tuple(dec_vec(r) for r in data)


def enc_lattice(lat: Lattice) -> dict:
    return {"ambient_dim": lat.ambient_dim, "generators": enc_mat(lat.vectors())}


def dec_lattice(data) -> Lattice:
    gens = dec_mat(data["generators"])
    return Lattice.from_generators(gens, int(data["ambient_dim"]))


# ---------------------------------------------------------------------------
# fans


def fan_to_json(fan: Fan) -> dict:
    return {
        "ambient_dim": fan.ambient_dim,
        "lattice_basis": enc_mat(fan.lattice.vectors()),
        "rays": enc_mat(fan.rays),
        "maximal_cones": [list(c) for c in fan.cones],
        "distinguished": list(fan.distinguished) if fan.distinguished is not None else None,
    }


def fan_from_json(data: dict, canonicalize: bool = True) -> Fan:
    """Decode a fan.

    With ``canonicalize`` the result is put in canonical form and
    non-primitive or non-integral rays are rejected; without it the raw
    arrays are kept so that a verifier can inspect them.
    """
    try:
        n = int(data["ambient_dim"])
        rays = dec_mat(data["rays"])
        cones = [tuple(int(i) for i in c) for c in data["maximal_cones"]]
        dist = data.get("distinguished")
        lattice = Lattice.from_generators(dec_mat(data["lattice_basis"]), n) if "lattice_basis" in data else None
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed fan: {exc}") from exc
    if lattice is not None and lattice != Lattice.standard(n):
        raise FormatError("only the standard dual lattice is supported")
    if any(len(r) != n for r in rays) or any(not 0 <= i < len(rays) for c in cones for i in c):
        raise FormatError("ray or cone index out of range")
    if dist is not None:
        if len(dist) != 2 or any(not 0 <= int(i) < len(cones) for i in dist):
            raise FormatError("bad distinguished pair")
        dist = [int(i) for i in dist]
    if not canonicalize:
        return Fan(n, rays, tuple(cones), None if dist is None else (dist[0], dist[1]))
    for r in rays:
        if not is_integral(r):
            raise FormatError(f"ray {list(r)} is not integral")
        if primitive(r) != r:
            raise FormatError(f"ray {list(r)} is not primitive")
    try:
        return Fan.from_indices(rays, cones, dist)
    except FanError as exc:
        raise FormatError(str(exc)) from exc


def export_fan(fan: Fan, path) -> None:
    data = {"schema_version": SCHEMA_VERSION, "fan": fan_to_json(fan)}
    Path(path).write_text(dumps(data))


def import_fan(path) -> Fan:
    data = load_json(path)
    check_schema(data)
    if "fan" not in data:
        raise FormatError("missing field 'fan'")
    return fan_from_json(data["fan"])


# ---------------------------------------------------------------------------
# files


def dumps(data: Any) -> str:
    return json.dumps(data, indent=1, ensure_ascii=False) + "\n"


def load_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"parse error in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    return data


def check_schema(data: dict) -> None:
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(f"schema version {version!r} is not supported (expected {SCHEMA_VERSION})")
