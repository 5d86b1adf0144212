"""Exact integer arithmetic around rational surgeries.

Everything here works with Python integers or :class:`fractions.Fraction`;
no floating point is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from .contact import ContactCoefficient
from .errors import InconsistentInput, InvalidCoefficient, InvalidSlope, OutOfRange


def decompose_mq_r(p: int, q: int) -> Tuple[int, int]:
    """``(m, r)`` with ``p = m q - r`` and ``0 <= r < q``."""
    if q < 1:
        raise InvalidSlope(f"q must be positive, got {q}")
    m = -((-p) // q)
    return m, m * q - p


# ---------------------------------------------------------------------------
# continued fractions


def _normalize(n: int, d: int) -> Tuple[int, int]:
    if d < 0:
        n, d = -n, -d
    g = math.gcd(n, d)
    return n // g, d // g


def evaluate_cf(coeffs: Sequence[int]) -> Fraction:
    """Value of ``a1 - 1/(a2 - 1/(... - 1/an))``."""
    if not coeffs:
        raise ValueError("empty continued fraction has no value")
    n, d = int(coeffs[-1]), 1
    for a in reversed(coeffs[:-1]):
        n, d = a * n - d, n
    n, d = _normalize(n, d)
    return Fraction(n, d)


@dataclass(frozen=True)
class NegContinuedFraction:
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(a) for a in self.coefficients))
        if any(a > -2 for a in self.coefficients):
            raise OutOfRange(f"negative continued fraction entries must be <= -2: {self.coefficients}")

    def value(self) -> Fraction:
        return evaluate_cf(self.coefficients)

    def __len__(self):
        return len(self.coefficients)


def neg_cf(num: int, den: int) -> NegContinuedFraction:
    """Expansion of ``num/den < -1`` with every entry ``<= -2``."""
    num, den = _normalize(num, den)
    if den == 0 or num >= -den:
        raise OutOfRange(f"{num}/{den} is not below -1")
    out = []
    while True:
        a = num // den
        out.append(a)
        rem = num - a * den
        if rem == 0:
            break
        num, den = -den, rem
    return NegContinuedFraction(tuple(out))


def pos_cf(num: int, den: int) -> List[int]:
    """Expansion of ``num/den > 1`` as ``c1 - 1/(c2 - ...)`` with every ``c_j >= 2``."""
    if den < 1 or num <= den or math.gcd(num, den) != 1:
        raise OutOfRange(f"{num}/{den} must be a reduced fraction above 1")
    out = []
    while True:
        c = -((-num) // den)
        out.append(c)
        rem = c * den - num
        if rem == 0:
            break
        num, den = den, rem
    return out


# ---------------------------------------------------------------------------
# DGS stabilization plan


@dataclass(frozen=True)
class SurgeryComponent:
    index: int
    contact_coefficient: int  # +1 or -1
    stabilizations: int
    rotation: int


@dataclass(frozen=True)
class DgsPlan:
    cf: NegContinuedFraction
    surgery_link: Tuple[SurgeryComponent, ...]
    chern_on_S: int
    linking_matrix: Tuple[Tuple[int, ...], ...]
    kernel: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "continued_fraction": list(self.cf.coefficients),
            "surgery_link": [
                {
                    "index": s.index,
                    "contact_coefficient": s.contact_coefficient,
                    "stabilizations": s.stabilizations,
                    "rotation": s.rotation,
                }
                for s in self.surgery_link
            ],
            "chern_on_S": self.chern_on_S,
            "linking_matrix": [list(r) for r in self.linking_matrix],
            "kernel_vector": list(self.kernel),
        }


def dgs_cf(c: ContactCoefficient) -> NegContinuedFraction:
    """Continued fraction of ``x/(y - x)``; empty when ``x = y``."""
    if c.x == c.y:
        return NegContinuedFraction(())
    return neg_cf(c.x, c.y - c.x)


def linking_matrix(tb: int, cf: NegContinuedFraction) -> np.ndarray:
    a = cf.coefficients
    n = len(a)
    Q = np.zeros((n + 1, n + 1), dtype=np.int64)
    Q[0, 0] = tb + 1
    if n:
        Q[0, 1] = Q[1, 0] = -1
        Q[1, 1] = a[0] + 1
        for j in range(2, n + 1):
            Q[j, j] = a[j - 1]
            Q[j - 1, j] = Q[j, j - 1] = 1
    return Q


def chern_on_l(rot: int, cf: NegContinuedFraction) -> List[int]:
    """Chern class on the handle basis: ``rot, a1 + 1, a2 + 2, ..., an + 2``."""
    a = cf.coefficients
    return [rot] + [a[0] + 1] * bool(a) + [aj + 2 for aj in a[1:]]


def dgs_plan(L, c: ContactCoefficient) -> DgsPlan:
    """Stabilization plan for contact ``x/y`` surgery; ``L`` needs ``tb`` and ``rot``."""
    if Fraction(c.x, c.y) < 1:
        raise InvalidCoefficient(f"contact coefficient {c.x}/{c.y} is below 1")
    tb, rot = L.tb, L.rot
    cf = dgs_cf(c)
    a = cf.coefficients
    comps = [SurgeryComponent(0, 1, 0, rot)]
    partial = 0
    for j, aj in enumerate(a, start=1):
        partial += aj
        stab = abs(aj + 1) if j == 1 else abs(aj + 2)
        comps.append(SurgeryComponent(j, -1, stab, rot + partial + 2 * j - 1))
    chern = rot * c.y + c.x - 1
    kern: Tuple[int, ...] = ()
    if a:
        kern = kernel_vector(cf, c.x, c.y)
        pairing = sum(ci * yi for ci, yi in zip(chern_on_l(rot, cf), kern))
        if pairing != -chern:
            raise InconsistentInput(f"Chern pairing {pairing} != -{chern}")
    Q = linking_matrix(tb, cf)
    return DgsPlan(cf, tuple(comps), chern, tuple(tuple(int(v) for v in r) for r in Q), kern)


def chern_identity_check(tb: int, rot: int, c: ContactCoefficient) -> bool:
    p, q = c.x + c.y * tb, c.y
    return rot * c.y + c.x - 1 == p + (rot - tb) * q - 1


def neg_matrix(cf: NegContinuedFraction) -> np.ndarray:
    """The n x (n+1) matrix M^-(a1 + 1, a2, ..., an), as object integers."""
    a = cf.coefficients
    n = len(a)
    M = np.zeros((n, n + 1), dtype=object)
    for i in range(n):
        M[i, i] = 1
        M[i, i + 1] = a[i] + (1 if i == 0 else 0)
        if i + 2 <= n:
            M[i, i + 2] = 1
    if n:
        M[0, 0] = -1
    return M


def kernel_vector(cf: NegContinuedFraction, x: int, y: int) -> Tuple[int, ...]:
    """Kernel generator ``(y0, ..., yn)`` of ``M^-(a1 + 1, a2, ..., an)`` with ``yn = 1``."""
    a = cf.coefficients
    n = len(a)
    if n == 0:
        raise InconsistentInput("x = y gives an empty continued fraction and no kernel vector")
    ys = [0] * (n + 2)  # ys[n + 1] = 0 pads the recursion
    ys[n] = 1
    for i in range(n, 1, -1):
        ys[i - 1] = -a[i - 1] * ys[i] - ys[i + 1]
    ys[0] = (a[0] + 1) * ys[1] + ys[2]
    v = tuple(ys[: n + 1])
    # row i: v[i] + a'_i v[i+1] + v[i+2] = 0, with a'_1 = a1 + 1 and sign flip on v[0]
    for i in range(n):
        first = -v[0] if i == 0 else v[i]
        coef = a[i] + 1 if i == 0 else a[i]
        nxt = v[i + 2] if i + 2 <= n else 0
        if first + coef * v[i + 1] + nxt != 0:
            raise InconsistentInput(f"row {i} of M^- does not annihilate {v}")  # pragma: no cover
    if v[0] != -y or v[1] != x - y:
        raise InconsistentInput(f"kernel vector {v} does not match x/y = {x}/{y}")
    return v


# ---------------------------------------------------------------------------
# lens spaces


@dataclass(frozen=True)
class LensSpace:
    q: int
    r: int

    def __post_init__(self):
        if self.q < 1 or not (0 <= self.r < self.q) or math.gcd(self.q, self.r) != 1:
            raise OutOfRange(f"L({self.q},{self.r}) needs q >= 1, 0 <= r < q and gcd(q, r) = 1")


@lru_cache(maxsize=None)
def _d(q: int, r: int, i: int) -> Fraction:
    if q == 1:
        return Fraction(0)
    head = Fraction(q * r - (2 * i + 1 - q - r) ** 2, 4 * q * r)
    return head - _d(r, q % r, i % r)


def lens_d(L: LensSpace, i: int) -> Fraction:
    return _d(L.q, L.r, i % L.q)


def lens_d_invariants(L: LensSpace) -> List[Fraction]:
    return [_d(L.q, L.r, i) for i in range(L.q)]


def d_shift_check(L: LensSpace) -> bool:
    if L.r < 1:
        raise OutOfRange("the shift identity needs r >= 1")
    return lens_d(L, L.r) - lens_d(L, 0) == 1 - Fraction(1, L.q)


def conjugate_index(L: LensSpace, i: int) -> int:
    return (L.q + L.r - 1 - i) % L.q


def generator_square(m: int, q: int, c: int, r: int) -> int:
    return q * (m * q - c * r)
