"""JSON reading and writing of knot complexes.

Schema (all keys required unless marked optional, no other keys allowed)::

    {
      "name": "trefoil",
      "generators": [{"name": "x0", "alexander": 1, "maslov": 0}, ...],
      "differential": [{"from": "x1", "to": "x0", "u_power": 1}, ...],
      "involution": {"x0": "x2", ...}            # optional
    }
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .cfk import Arrow, Generator, KnotComplex, validate
from .errors import ParseError, ValidationError

_TOP = {"name", "generators", "differential", "involution"}
_GEN = {"name", "alexander", "maslov"}
_ARROW = {"from", "to", "u_power"}


def _int(v: Any, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where} must be an integer, got {v!r}")
    return v


def _str(v: Any, where: str) -> str:
    if not isinstance(v, str) or not v:
        raise ParseError(f"{where} must be a non-empty string, got {v!r}")
    return v


def _keys(obj: Any, required: set, allowed: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"{where} has unknown keys {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"{where} is missing keys {sorted(missing)}")


def complex_from_dict(data: Any) -> KnotComplex:
    """Schema-check ``data`` and build a validated :class:`KnotComplex`."""
    _keys(data, _TOP - {"involution"}, _TOP, "complex")
    name = _str(data["name"], "name")
    if not isinstance(data["generators"], list):
        raise ParseError("generators must be an array")
    if not isinstance(data["differential"], list):
        raise ParseError("differential must be an array")
    gens = []
    for i, g in enumerate(data["generators"]):
        where = f"generators[{i}]"
        _keys(g, _GEN, _GEN, where)
        gens.append(Generator(_str(g["name"], where + ".name"),
                              _int(g["alexander"], where + ".alexander"),
                              _int(g["maslov"], where + ".maslov")))
    arrows = []
    for i, a in enumerate(data["differential"]):
        where = f"differential[{i}]"
        _keys(a, _ARROW, _ARROW, where)
        arrows.append(Arrow(_str(a["from"], where + ".from"), _str(a["to"], where + ".to"),
                            _int(a["u_power"], where + ".u_power")))
    invol = None
    if data.get("involution") is not None:
        inv = data["involution"]
        if not isinstance(inv, dict):
            raise ParseError("involution must be an object mapping labels to labels")
        invol = {_str(k, "involution key"): _str(v, f"involution[{k}]") for k, v in inv.items()}
    c = KnotComplex(name, tuple(gens), tuple(arrows), invol)
    diags = validate(c)
    if diags:
        raise ValidationError(diags)
    return c


def parse_complex(path: Union[str, Path]) -> KnotComplex:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: malformed JSON ({e.msg} at line {e.lineno})") from e
    return complex_from_dict(data)


def complex_to_dict(c: KnotComplex) -> dict:
    out = {
        "name": c.name,
        "generators": [{"name": g.name, "alexander": g.alexander, "maslov": g.maslov} for g in c.generators],
        "differential": [{"from": a.source, "to": a.target, "u_power": a.u_power} for a in c.arrows],
    }
    if c.involution is not None:
        out["involution"] = {g.name: c.involution[g.name] for g in c.generators}
    return out


def dump_complex(c: KnotComplex, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(complex_to_dict(c), indent=2) + "\n")
