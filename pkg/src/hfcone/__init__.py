"""Knot Floer surgery data: concordance invariants, rational surgery mapping
cones over F2, contact invariants of rational contact surgery, and the
supporting integer arithmetic."""

from ._accel import backend
from .cfk import KnotComplex, box, direct_sum, mirror, staircase, tensor, unknot, validate
from .cone import SurgerySlope, build_cone, cone_homology, inclusion_image
from .contact import (
    ContactCoefficient,
    LegendrianData,
    compute_contact_invariant,
    decide_contact_invariant,
)
from .invariants import epsilon, invariant_report, nu, tau

__version__ = "0.1.0"
