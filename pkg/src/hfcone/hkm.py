"""HKM-strong certification for chain-of-unknots lens space diagrams.

A paired generator is a vector ``u`` with ``0 <= u_j < c_j``; ``u = 0`` is the
canonical generator.  Its spin^c difference from the canonical generator is
``sum_j n_j x_j`` mod ``x_0`` with ``n_j = u_j - [u_{j-1} != 0]``.  The
diagram is strong when no nonzero ``u`` lands in class 0, which the sweep
certifies by checking ``0 < sum < x_0`` for every nonzero ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _accel
from .arithmetic import pos_cf
from .errors import BadCoefficient, BudgetExceeded

DEFAULT_BUDGET = 10 ** 7


def x_sequence(coeffs: Sequence[int]) -> Tuple[int, ...]:
    """``(x_0, ..., x_{n+1})`` with ``x_{n+1} = 0``, ``x_n = 1``, ``x_j = c_{j+1} x_{j+1} - x_{j+2}``."""
    cs = list(coeffs)
    if not cs:
        raise BadCoefficient("need at least one coefficient")
    for c in cs:
        if int(c) != c or c < 2:
            raise BadCoefficient(f"coefficients must be integers >= 2, got {c}")
    n = len(cs)
    xs = [0] * (n + 2)
    xs[n] = 1
    for j in range(n - 1, -1, -1):
        xs[j] = cs[j] * xs[j + 1] - xs[j + 2]
    if pos_cf(xs[0], xs[1]) != cs:
        raise BadCoefficient(f"x_0/x_1 = {xs[0]}/{xs[1]} does not expand to {cs}")  # pragma: no cover
    return tuple(xs)


@dataclass(frozen=True)
class LensDiagram:
    coefficients: Tuple[int, ...]
    x_sequence: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        object.__setattr__(self, "x_sequence", x_sequence(self.coefficients))

    @property
    def order(self) -> int:
        return self.x_sequence[0]

    def generator_count(self) -> int:
        return int(np.prod(self.coefficients, dtype=object))


def n_coefficients(u: Sequence[int]) -> List[int]:
    out = []
    prev = 0
    for uj in u:
        out.append(uj - (1 if prev != 0 else 0))
        prev = uj
    return out


def epsilon_class(d: LensDiagram, u: Sequence[int]) -> Tuple[int, int]:
    """``(sum mod x_0, sum)`` for the paired generator ``u``."""
    if len(u) != len(d.coefficients) or any(not 0 <= uj < c for uj, c in zip(u, d.coefficients)):
        raise BadCoefficient(f"u = {tuple(u)} is out of range for {d.coefficients}")
    s = sum(nj * xj for nj, xj in zip(n_coefficients(u), d.x_sequence[1:]))
    return s % d.order, s


def coefficient_bounds_hold(d: LensDiagram, u: Sequence[int]) -> bool:
    """Properties (a), (b), (c) of the coefficients ``n_j`` for one generator."""
    n = n_coefficients(u)
    c = d.coefficients
    if n[0] > c[0] - 1:
        return False
    last = 0
    for j in range(len(u)):
        if j > 0 and u[j - 1] != 0 and n[j] > c[j] - 2:
            return False
        if u[j] == 0 and n[j] not in (0, -1):
            return False
        if n[j] == -1 and last <= 0:
            return False
        if n[j]:
            last = n[j]
    return True


def decode(index: int, coeffs: Sequence[int]) -> Tuple[int, ...]:
    """Mixed-radix digits of ``index`` with ``u_1`` most significant."""
    out = []
    for c in reversed(coeffs):
        index, digit = divmod(index, c)
        out.append(digit)
    return tuple(reversed(out))


@dataclass(frozen=True)
class HkmVerdict:
    strong: bool
    x_sequence: Tuple[int, ...]
    checked: int
    counterexample: Optional[Tuple[int, ...]] = None
    bound_violation: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> dict:
        out = {"strong": self.strong, "x_sequence": list(self.x_sequence), "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = list(self.counterexample)
        if self.bound_violation is not None:
            out["bound_violation"] = list(self.bound_violation)
        return out


def verify_hkm_strong(coeffs: Sequence[int], budget: int = DEFAULT_BUDGET) -> HkmVerdict:
    d = LensDiagram(tuple(coeffs))
    total = d.generator_count()
    if total > budget:
        raise BudgetExceeded(f"{total} generators exceed the budget of {budget}")
    checked, bad, viol = _accel.hkm_sweep(np.array(d.coefficients), np.array(d.x_sequence))
    ce = decode(bad, d.coefficients) if bad >= 0 else None
    bv = decode(viol, d.coefficients) if viol >= 0 else None
    return HkmVerdict(ce is None, d.x_sequence, checked, ce, bv)
