"""Concordance invariants tau, nu and epsilon by elimination over F2."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Tuple

from . import cfk
from .cfk import KnotComplex
from .errors import EpsilonUndetermined, InvalidComplex, NotKnotLike
from .gf2 import ChainMapF2, homology, induced_map_on_homology, rank


@dataclass(frozen=True)
class InvariantReport:
    tau: int
    nu: int
    epsilon: int
    width: int

    def to_dict(self) -> dict:
        return asdict(self)


def _rank_and_target(f: ChainMapF2) -> Tuple[int, int]:
    m = induced_map_on_homology(f)[0]
    return rank(m), m.rows


def _require_knot_like(c: KnotComplex) -> None:
    cfk.check(c)
    d = homology(cfk.complex_B(c).base)[0].dim
    if d != 1:
        raise NotKnotLike(f"vertical homology of {c.name!r} has dimension {d}, expected 1")


def is_surjective(f: ChainMapF2) -> bool:
    r, t = _rank_and_target(f)
    return r == t


def is_trivial(f: ChainMapF2) -> bool:
    return _rank_and_target(f)[0] == 0


def tau(c: KnotComplex) -> int:
    """Least s such that H(C{i = 0, j <= s}) -> H(B) is onto."""
    _require_knot_like(c)
    w = cfk.width(c)
    B = cfk.complex_B(c)
    for s in range(-w, w + 1):
        f = cfk.inclusion_map(cfk.complex_B_filtered(c, s), B)
        if is_surjective(f):
            return s
    raise NotKnotLike("filtration never reaches the vertical homology")  # pragma: no cover


def _v_surjective(c: KnotComplex, s: int) -> bool:
    return is_surjective(cfk.v_map(c, s))


def nu(c: KnotComplex) -> int:
    """Least s such that v_s is onto in homology; checks monotonicity on the window."""
    _require_knot_like(c)
    w = cfk.width(c)
    pattern = [(s, _v_surjective(c, s)) for s in range(-w - 1, w + 2)]
    onto = [s for s, ok in pattern if ok]
    if not onto:
        raise NotKnotLike("v_s is never onto in homology")
    result = onto[0]
    for s, ok in pattern:
        if ok != (s >= result):
            raise InvalidComplex(f"v_s surjectivity is not monotone in s (fails at s = {s})")
    return result


def epsilon(c: KnotComplex, t: int = None) -> int:
    """Read epsilon off the pair (v_tau, v'_tau).

    ``H(B)`` is one-dimensional, so ``v'_tau`` is either zero or injective;
    the target ``H(A'_tau)`` can be larger than F (figure-eight: dimension 3),
    so "surjective" for ``v'_tau`` is read as "nonzero".
    """
    if t is None:
        t = tau(c)
    v = cfk.v_map(c, t)
    v_onto, v_zero = is_surjective(v), is_trivial(v)
    vp_zero = is_trivial(cfk.v_prime_map(c, t))
    if v_onto and vp_zero:
        return 1
    if v_onto and not vp_zero:
        return 0
    if v_zero and not vp_zero:
        return -1
    raise EpsilonUndetermined(f"v_tau onto={v_onto} trivial={v_zero}, v'_tau trivial={vp_zero}")


def invariant_report(c: KnotComplex) -> InvariantReport:
    t = tau(c)
    n = nu(c)
    e = epsilon(c, t)
    if n not in (t, t + 1):
        raise InvalidComplex(f"nu = {n} is neither tau = {t} nor tau + 1")
    if e == 0 and t != 0:
        raise InvalidComplex(f"epsilon = 0 but tau = {t}")
    return InvariantReport(t, n, e, cfk.width(c))
