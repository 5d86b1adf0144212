"""Packaged example complexes.

``build(name)`` constructs a fixture from the model constructors and
``load(name)`` reads the shipped JSON copy; the two agree (checked in tests).

The cable fixture is a surrogate: the T(2,5) staircase plus one acyclic box
at Alexander grading 0.  Its Alexander polynomial is ``t^2 - 1 + t^-2`` and
its mirror has ``H(A_s) = F, F^3, F^5`` for ``|s| >= 2, 1, 0`` with ``v_s``
onto exactly for ``s >= -1``.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Callable, Dict, List

from .. import cfk
from ..cfk import KnotComplex
from ..io import complex_from_dict

_BUILDERS: Dict[str, Callable[[], KnotComplex]] = {
    "unknot": lambda: cfk.unknot("unknot"),
    "trefoil": lambda: cfk.staircase([1, 1], name="trefoil"),
    "left_trefoil": lambda: cfk.mirror(cfk.staircase([1, 1]), name="left_trefoil"),
    "figure_eight": lambda: cfk.direct_sum([cfk.unknot(), cfk.box(0, 0)], name="figure_eight"),
    "t25": lambda: cfk.staircase([1, 1, 1, 1], name="t25"),
    "cable": lambda: cfk.direct_sum([cfk.staircase([1, 1, 1, 1]), cfk.box(0, -1)], name="cable"),
}

NAMES: List[str] = list(_BUILDERS)


def build(name: str) -> KnotComplex:
    return _BUILDERS[name]()


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.json")


def load(name: str) -> KnotComplex:
    return complex_from_dict(json.loads(path(name).read_text()))
