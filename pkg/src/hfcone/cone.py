"""Truncated rational surgery mapping cone X_{p/q}(K).

The cone has summands ``(k, A_{floor(k/q)})`` and ``(k, B)`` for every integer
``k``, and ``D(k, x) = (k, v(x)) + (k + p, h(x))``.  Two families of summands
are discarded, both acyclic once the window ``b`` is at least the width:

* ``A_k`` with ``floor(k/q) > b`` together with ``B_k`` (``v`` is the identity
  there);
* ``A_k`` with ``floor(k/q) < -b`` together with ``B_{k+p}`` (``h`` is an
  isomorphism there).

For ``p > 0`` the first family is a subcomplex and the second a subcomplex of
the quotient; for ``p < 0`` both are quotient complexes.  Either way the
remaining summands are

    A_k  with  -b <= floor(k/q) <= b
    B_j  with  floor(j/q) <= b  and  floor((j-p)/q) >= -b

which is a finite complex with the same homology.  For ``p > 0`` the two
families must not share a ``B`` summand, which needs ``(2b+1) q >= p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import cfk
from .cfk import KnotComplex, Subquotient
from .errors import (
    IndexOutsideTruncation,
    InvalidSlope,
    MissingInvolution,
    NotKnotLike,
    ParityError,
    WindowTooSmall,
)
from .gf2 import ChainComplexF2, ChainMapF2, HomologyGroup, MatrixF2, homology, mapping_cone


@dataclass(frozen=True)
class SurgerySlope:
    p: int
    q: int = 1

    def __post_init__(self):
        if self.q < 1:
            raise InvalidSlope(f"q must be positive, got {self.q}")
        if math.gcd(abs(self.p), self.q) != 1:
            raise InvalidSlope(f"{self.p}/{self.q} is not in lowest terms")

    def residue(self, k: int) -> int:
        return k % abs(self.p) if self.p else k

    def __str__(self):
        return f"{self.p}/{self.q}"


def spinc_chern_from_k(slope: SurgerySlope, k: int) -> int:
    return 2 * k - slope.p - slope.q + 1


def k_from_chern(slope: SurgerySlope, c1: int) -> int:
    twice = c1 + slope.p + slope.q - 1
    if twice % 2:
        raise ParityError(f"c1 + p + q - 1 = {twice} is odd")
    return twice // 2


# ---------------------------------------------------------------------------
# truncation


def _a_range(slope: SurgerySlope, b: int) -> range:
    q = slope.q
    return range(-b * q, (b + 1) * q)


def _b_range(slope: SurgerySlope, b: int) -> range:
    p, q = slope.p, slope.q
    lo = -b * q + p  # floor((j - p)/q) >= -b
    hi = (b + 1) * q - 1  # floor(j/q) <= b
    return range(lo, hi + 1)


def b_retained(slope: SurgerySlope, b: int, k: int) -> bool:
    return k // slope.q <= b and (k - slope.p) // slope.q >= -b


def minimal_window(c: KnotComplex, slope: SurgerySlope, k: Optional[int] = None) -> int:
    """Smallest admissible window, enlarged so that ``(k, B)`` survives when given."""
    b = cfk.width(c) + 1
    if slope.p > 0:
        b = max(b, -(-(slope.p - slope.q) // (2 * slope.q)))
    if k is not None:
        b = max(b, k // slope.q, -((k - slope.p) // slope.q))
    return b


@dataclass
class ConeComplex:
    knot: KnotComplex
    slope: SurgerySlope
    window: int
    a_summands: Dict[int, Subquotient]
    b_summands: Dict[int, Subquotient]
    d_blocks: Dict[Tuple[int, int], MatrixF2]  # (source A index, target B index)
    _cache: dict = field(default_factory=dict, repr=False)

    def residues(self) -> List[int]:
        rs = {self.slope.residue(k) for k in self.a_summands}
        rs |= {self.slope.residue(k) for k in self.b_summands}
        return sorted(rs)

    def _members(self, residue: int):
        ks_a = [k for k in sorted(self.a_summands) if self.slope.residue(k) == residue]
        ks_b = [k for k in sorted(self.b_summands) if self.slope.residue(k) == residue]
        return ks_a, ks_b

    def d_map(self, residue: int) -> ChainMapF2:
        """D restricted to one residue class, as a map from the A part to the B part."""
        return self._assemble(residue)[0]

    def _assemble(self, residue: int):
        key = ("d", residue)
        if key in self._cache:
            return self._cache[key]
        ks_a, ks_b = self._members(residue)
        a_off, b_off = {}, {}
        na = nb = 0
        for k in ks_a:
            a_off[k] = na
            na += self.a_summands[k].dim
        for k in ks_b:
            b_off[k] = nb
            nb += self.b_summands[k].dim
        dA = np.zeros((na, na), dtype=np.uint8)
        dB = np.zeros((nb, nb), dtype=np.uint8)
        D = np.zeros((nb, na), dtype=np.uint8)
        for k in ks_a:
            o, n = a_off[k], self.a_summands[k].dim
            dA[o:o + n, o:o + n] = self.a_summands[k].base.boundary(0).to_dense()
        for k in ks_b:
            o, n = b_off[k], self.b_summands[k].dim
            dB[o:o + n, o:o + n] = self.b_summands[k].base.boundary(0).to_dense()
        for (ka, kb), m in self.d_blocks.items():
            if ka in a_off and kb in b_off:
                oa, ob = a_off[ka], b_off[kb]
                D[ob:ob + m.rows, oa:oa + m.cols] ^= m.to_dense()
        a_labels = [("A", k, lab) for k in ks_a for lab in self.a_summands[k].base.labels[0]]
        b_labels = [("B", k, lab) for k in ks_b for lab in self.b_summands[k].base.labels[0]]
        src = ChainComplexF2.ungraded(MatrixF2.from_dense(dA), a_labels)
        tgt = ChainComplexF2.ungraded(MatrixF2.from_dense(dB), b_labels)
        f = ChainMapF2(src, tgt, {0: MatrixF2.from_dense(D)})
        self._cache[key] = (f, a_off, b_off, na)
        return self._cache[key]

    def block(self, residue: int) -> ChainComplexF2:
        return mapping_cone(self.d_map(residue))

    def block_homology(self, residue: int) -> HomologyGroup:
        key = ("h", residue)
        if key not in self._cache:
            self._cache[key] = homology(self.block(residue))[0]
        return self._cache[key]

    def total_dim(self) -> int:
        return sum(s.dim for s in self.a_summands.values()) + sum(s.dim for s in self.b_summands.values())


def build_cone(c: KnotComplex, slope: SurgerySlope, window: Optional[int] = None) -> ConeComplex:
    cfk.check(c)
    if c.involution is None:
        raise MissingInvolution(f"complex {c.name!r} has no flip involution; the cone needs h_s")
    w = cfk.width(c)
    b = minimal_window(c, slope) if window is None else int(window)
    if b < w + 1:
        raise WindowTooSmall(f"window {b} is below width + 1 = {w + 1}")
    if slope.p > 0 and (2 * b + 1) * slope.q < slope.p:
        raise WindowTooSmall(f"window {b} too small for p/q = {slope}: need (2b+1)q >= p")

    B = cfk.complex_B(c)
    subs: Dict[int, Subquotient] = {}
    vmats: Dict[int, MatrixF2] = {}
    hmats: Dict[int, MatrixF2] = {}
    for s in range(-b, b + 1):
        A = cfk.complex_A(c, s)
        subs[s] = A
        vmats[s] = cfk.v_map(c, s, A, B).block(0)
        hmats[s] = cfk.h_map(c, s, A, B).block(0)

    q, p = slope.q, slope.p
    a_summands = {k: subs[k // q] for k in _a_range(slope, b)}
    b_summands = {k: B for k in _b_range(slope, b)}
    d_blocks: Dict[Tuple[int, int], MatrixF2] = {}
    for k in a_summands:
        s = k // q
        for target, m in ((k, vmats[s]), (k + p, hmats[s])):
            if target in b_summands and not m.is_zero():
                prev = d_blocks.get((k, target))
                d_blocks[(k, target)] = m if prev is None else prev + m
    return ConeComplex(c, slope, b, a_summands, b_summands, d_blocks)


def cone_homology(c: KnotComplex, slope: SurgerySlope, window: Optional[int] = None) -> Dict[int, int]:
    """Homology dimension of each residue block (``k mod |p|``, or ``k`` when ``p = 0``)."""
    X = build_cone(c, slope, window)
    return {r: X.block_homology(r).dim for r in X.residues()}


@dataclass(frozen=True)
class HomologyClass:
    residue: int
    coordinates: Tuple[int, ...]
    is_zero: bool
    block_dim: int
    k: int


def inclusion_image(c: KnotComplex, slope: SurgerySlope, k: int,
                    window: Optional[int] = None, cone: Optional[ConeComplex] = None) -> HomologyClass:
    """Image in cone homology of the generator of H((k, B))."""
    X = cone if cone is not None else build_cone(c, slope, minimal_window(c, slope, k) if window is None else window)
    if k not in X.b_summands:
        raise IndexOutsideTruncation(f"(k={k}, B) is not retained by window {X.window} for p/q = {slope}")
    hb = homology(X.b_summands[k].base)[0]
    if hb.dim != 1:
        raise NotKnotLike(f"vertical homology has dimension {hb.dim}, expected 1")
    r = slope.residue(k)
    f, _, b_off, na = X._assemble(r)
    vec = np.zeros(na + f.target.dim(0), dtype=np.uint8)
    o = na + b_off[k]
    vec[o:o + hb.representatives.shape[1]] = hb.representatives[0]
    H = X.block_homology(r)
    coords = tuple(int(v) for v in H.coordinates(vec)[0]) if H.dim else ()
    return HomologyClass(r, coords, not any(coords), H.dim, k)
