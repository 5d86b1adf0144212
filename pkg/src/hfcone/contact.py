"""Contact x/y surgery on Legendrian knots in the standard 3-sphere.

Two independent routes decide whether the contact invariant of the surgery
with all-negative stabilizations vanishes:

* :func:`decide_contact_invariant` uses only tau and epsilon of the knot;
* :func:`compute_contact_invariant` builds the cone of the mirror at slope
  ``-p/q`` and pushes the generator of ``(k, B)`` into its homology.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import cfk, invariants
from .cfk import KnotComplex
from .cone import HomologyClass, SurgerySlope, inclusion_image
from .errors import BennequinViolation, DecisionMismatch, InvalidCoefficient, ParityError


class Reason(str, enum.Enum):
    SlopeAboveThreshold = "SlopeAboveThreshold"
    SlopeAtOrAboveTwoTau = "SlopeAtOrAboveTwoTau"
    BelowMaximalTbRot = "BelowMaximalTbRot"
    EpsilonNegative = "EpsilonNegative"
    SlopeTooSmall = "SlopeTooSmall"


@dataclass(frozen=True)
class LegendrianData:
    tb: int
    rot: int
    complex: Optional[KnotComplex] = None  # only the cone-based routes need it

    def check_parity(self) -> None:
        if (self.tb + self.rot) % 2 == 0:
            raise ParityError(f"tb + rot = {self.tb + self.rot} must be odd")


@dataclass(frozen=True)
class ContactCoefficient:
    x: int
    y: int = 1

    def __post_init__(self):
        if self.y < 1:
            raise InvalidCoefficient(f"denominator must be positive, got {self.y}")
        if math.gcd(abs(self.x), self.y) != 1:
            raise InvalidCoefficient(f"{self.x}/{self.y} is not in lowest terms")
        if self.x < self.y:
            raise InvalidCoefficient(f"contact coefficient {self.x}/{self.y} is below 1")

    @property
    def value(self) -> Fraction:
        return Fraction(self.x, self.y)


@dataclass(frozen=True)
class ContactVerdict:
    nonzero: bool
    reason: Reason
    k: int
    slope: SurgerySlope
    tau: int
    epsilon: int


def smooth_slope(L: LegendrianData, c: ContactCoefficient) -> SurgerySlope:
    return SurgerySlope(c.x + c.y * L.tb, c.y)


def cone_k_index(L: LegendrianData, c: ContactCoefficient) -> int:
    L.check_parity()
    q = c.y
    twice = (L.rot - L.tb + 1) * q - 2
    k = twice // 2
    alt = Fraction(-(L.tb - L.rot + 1) * q, 2) + q - 1
    assert alt == k, (alt, k)
    return k


def _check_bennequin(L: LegendrianData, tau: int) -> None:
    if L.tb + abs(L.rot) > 2 * tau - 1:
        raise BennequinViolation(
            f"tb + |rot| = {L.tb + abs(L.rot)} exceeds 2 tau - 1 = {2 * tau - 1}"
        )


def decide_contact_invariant(L: LegendrianData, c: ContactCoefficient,
                             tau: Optional[int] = None, eps: Optional[int] = None) -> ContactVerdict:
    L.check_parity()
    if tau is None:
        tau = invariants.tau(L.complex)
    if eps is None:
        eps = invariants.epsilon(L.complex, tau)
    _check_bennequin(L, tau)
    slope = smooth_slope(L, c)
    k = cone_k_index(L, c)
    r = Fraction(slope.p, slope.q)

    if L.tb - L.rot < 2 * tau - 1:
        nonzero, reason = False, Reason.BelowMaximalTbRot
    elif eps == 1:
        nonzero = r > 2 * tau - 1
        reason = Reason.SlopeAboveThreshold if nonzero else Reason.SlopeTooSmall
    elif eps == 0:
        nonzero = r >= 2 * tau
        reason = Reason.SlopeAtOrAboveTwoTau if nonzero else Reason.SlopeTooSmall
    else:
        nonzero, reason = False, Reason.EpsilonNegative
    return ContactVerdict(nonzero, reason, k, slope, tau, eps)


def compute_contact_invariant(L: LegendrianData, c: ContactCoefficient,
                              mirrored: Optional[KnotComplex] = None) -> HomologyClass:
    L.check_parity()
    _check_bennequin(L, invariants.tau(L.complex))
    slope = smooth_slope(L, c)
    k = cone_k_index(L, c)
    mK = mirrored if mirrored is not None else cfk.mirror(L.complex)
    return inclusion_image(mK, SurgerySlope(-slope.p, slope.q), k)


def contact_report(L: LegendrianData, c: ContactCoefficient) -> Tuple[dict, ContactVerdict, HomologyClass]:
    """Run both routes; raise :class:`DecisionMismatch` when they disagree."""
    verdict = decide_contact_invariant(L, c)
    cls = compute_contact_invariant(L, c)
    if verdict.nonzero == cls.is_zero:
        raise DecisionMismatch(
            f"decision says nonzero={verdict.nonzero} ({verdict.reason.value}) "
            f"but the cone class is_zero={cls.is_zero} (tb={L.tb}, rot={L.rot}, x/y={c.x}/{c.y})"
        )
    report = {
        "nonzero": verdict.nonzero,
        "reason": verdict.reason.value,
        "tau": verdict.tau,
        "epsilon": verdict.epsilon,
        "tb": L.tb,
        "rot": L.rot,
        "x": c.x,
        "y": c.y,
        "p": verdict.slope.p,
        "q": verdict.slope.q,
        "k": verdict.k,
        "residue": cls.residue,
    }
    return report, verdict, cls
