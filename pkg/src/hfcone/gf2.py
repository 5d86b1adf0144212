"""Linear algebra and homology over the two-element field.

Matrices are stored sparsely as sets of ``(row, col)`` pairs; every
elimination goes through the packed row-reduction kernel in
:mod:`hfcone._accel`.  Chain complexes are either graded by integers (the
boundary ``d`` maps degree ``d`` to ``d - 1``) or ungraded, in which case a
single bucket ``0`` carries a square boundary matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import _accel
from .errors import InvalidComplex, NotChainMap


# ---------------------------------------------------------------------------
# dense helpers (uint8 0/1 arrays)


def _as_bits(a) -> np.ndarray:
    return np.asarray(a, dtype=np.uint8) & 1


def rref_dense(a: np.ndarray, pivot_cols: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of a dense 0/1 matrix and its pivot columns."""
    a = _as_bits(a)
    nrows, ncols = a.shape
    if pivot_cols is None:
        pivot_cols = ncols
    if nrows == 0 or ncols == 0:
        return a.copy(), np.zeros(0, dtype=np.int64)
    packed = _accel.pack(a)
    pivots = _accel.rref_packed(packed, pivot_cols)
    return _accel.unpack(packed, ncols), pivots


def matmul_f2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return ((a @ b) & 1).astype(np.uint8)


def nullspace_dense(a: np.ndarray) -> np.ndarray:
    """Rows form a basis of ``{v : a v = 0}``, one per free column, in column order."""
    a = _as_bits(a)
    ncols = a.shape[1]
    R, pivots = rref_dense(a)
    pivset = set(int(p) for p in pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(pivots):
            basis[k, p] = R[i, f]
    return basis


def independent_rows(rows: np.ndarray) -> List[int]:
    """Indices of rows not in the span of the rows before them (greedy basis)."""
    rows = _as_bits(rows)
    if rows.shape[0] == 0:
        return []
    _, pivots = rref_dense(rows.T)
    return [int(p) for p in pivots]


def solve_rows(basis: np.ndarray, targets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Express each target row as a combination of independent ``basis`` rows.

    Returns ``(coeffs, ok)``: ``coeffs[t]`` holds the coefficients for target
    ``t`` and ``ok[t]`` is False when the target is outside the span.
    """
    basis = _as_bits(basis)
    targets = _as_bits(np.atleast_2d(targets))
    m, n = basis.shape
    t = targets.shape[0]
    if m == 0:
        return np.zeros((t, 0), dtype=np.uint8), ~targets.any(axis=1)
    aug = np.concatenate([basis.T, targets.T], axis=1)
    R, pivots = rref_dense(aug, pivot_cols=m)
    if len(pivots) != m:
        raise ValueError("basis rows are not independent")
    coeffs = R[:m, m:].T.copy()
    ok = ~R[m:, m:].any(axis=0)
    return coeffs, ok


# ---------------------------------------------------------------------------
# sparse matrix type


@dataclass(frozen=True)
class MatrixF2:
    rows: int
    cols: int
    entries: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        ent = frozenset((int(i), int(j)) for i, j in self.entries)
        for i, j in ent:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixF2":
        return cls(rows, cols, frozenset())

    @classmethod
    def identity(cls, n: int) -> "MatrixF2":
        return cls(n, n, frozenset((i, i) for i in range(n)))

    @classmethod
    def from_dense(cls, a) -> "MatrixF2":
        a = _as_bits(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        ii, jj = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], frozenset(zip(ii.tolist(), jj.tolist())))

    @classmethod
    def from_pairs(cls, rows: int, cols: int, pairs: Iterable[Tuple[int, int]]) -> "MatrixF2":
        """Build from possibly repeated pairs; repeats cancel mod 2."""
        acc = set()
        for p in pairs:
            acc ^= {p}
        return cls(rows, cols, frozenset(acc))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.uint8)
        if self.entries:
            ii, jj = zip(*self.entries)
            a[list(ii), list(jj)] = 1
        return a

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "MatrixF2":
        return MatrixF2(self.cols, self.rows, frozenset((j, i) for i, j in self.entries))

    def __matmul__(self, other: "MatrixF2") -> "MatrixF2":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, List[int]] = {}
        for k, j in other.entries:
            by_row.setdefault(k, []).append(j)
        acc = set()
        for i, k in self.entries:
            for j in by_row.get(k, ()):
                acc ^= {(i, j)}
        return MatrixF2(self.rows, other.cols, frozenset(acc))

    def __add__(self, other: "MatrixF2") -> "MatrixF2":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return MatrixF2(self.rows, self.cols, self.entries ^ other.entries)


def rank(m: MatrixF2) -> int:
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    _, pivots = rref_dense(m.to_dense())
    return len(pivots)


def kernel_basis(m: MatrixF2) -> List[np.ndarray]:
    """Basis of the null space, as 0/1 vectors of length ``m.cols``."""
    return list(nullspace_dense(m.to_dense()))


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class ChainComplexF2:
    """Finite chain complex of F2 vector spaces.

    ``boundaries[d]`` maps degree ``d`` to degree ``d - 1`` when ``graded``;
    ungraded complexes have ``dims == {0: n}`` and a square ``boundaries[0]``.
    ``labels`` optionally names the basis vectors of each degree.
    """

    dims: Mapping[int, int]
    boundaries: Mapping[int, MatrixF2]
    labels: Optional[Mapping[int, Sequence]] = None
    graded: bool = True

    @classmethod
    def ungraded(cls, boundary, labels: Optional[Sequence] = None) -> "ChainComplexF2":
        if not isinstance(boundary, MatrixF2):
            boundary = MatrixF2.from_dense(boundary)
        n = boundary.rows
        return cls({0: n}, {0: boundary}, None if labels is None else {0: list(labels)}, graded=False)

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def gradings(self) -> List[int]:
        return sorted(self.dims)

    def target_degree(self, d: int) -> int:
        return d - 1 if self.graded else d

    def boundary(self, d: int) -> MatrixF2:
        m = self.boundaries.get(d)
        if m is None:
            return MatrixF2.zeros(self.dim(self.target_degree(d)), self.dim(d))
        return m

    def check(self) -> None:
        """Raise :class:`InvalidComplex` unless shapes match and the boundary squares to zero."""
        if not self.graded and set(self.dims) - {0}:
            raise InvalidComplex("ungraded complexes use the single degree 0")
        for d, m in self.boundaries.items():
            want = (self.dim(self.target_degree(d)), self.dim(d))
            if m.shape != want:
                raise InvalidComplex(f"boundary in degree {d} has shape {m.shape}, expected {want}")
        for d in self.dims:
            first = self.boundary(d)
            second = self.boundary(self.target_degree(d))
            if not (second @ first).is_zero():
                raise InvalidComplex(f"boundary squared is nonzero starting in degree {d}")


@dataclass(frozen=True)
class HomologyGroup:
    """Homology in one degree with a fixed basis of representative cycles."""

    dim: int
    representatives: np.ndarray  # dim x n, rows are cycles
    boundary_basis: np.ndarray  # rref rows spanning the boundaries

    def coordinates(self, cycles) -> np.ndarray:
        """Coordinates of cycles (rows) in the representative basis."""
        cycles = np.atleast_2d(_as_bits(cycles))
        basis = np.concatenate([self.boundary_basis, self.representatives], axis=0)
        if basis.shape[0] == 0:
            if cycles.any():
                raise ValueError("vector is not a cycle of this complex")
            return np.zeros((cycles.shape[0], 0), dtype=np.uint8)
        coeffs, ok = solve_rows(basis, cycles)
        if not ok.all():
            raise ValueError("vector is not a cycle of this complex")
        return coeffs[:, self.boundary_basis.shape[0]:]


def _homology_block(outgoing: np.ndarray, incoming: np.ndarray) -> HomologyGroup:
    n = outgoing.shape[1]
    cycles = nullspace_dense(outgoing) if n else np.zeros((0, 0), dtype=np.uint8)
    bvecs = _as_bits(incoming).T  # one row per boundary
    if bvecs.shape[0]:
        R, piv = rref_dense(bvecs)
        bbasis = R[: len(piv)]
    else:
        bbasis = np.zeros((0, n), dtype=np.uint8)
    stacked = np.concatenate([bbasis, cycles], axis=0)
    chosen = [i - bbasis.shape[0] for i in independent_rows(stacked) if i >= bbasis.shape[0]]
    reps = cycles[chosen]
    # normal form of each representative modulo boundaries
    if bbasis.shape[0] and reps.shape[0]:
        piv_cols = [int(np.flatnonzero(row)[0]) for row in bbasis]
        reps = reps.copy()
        for row, c in zip(bbasis, piv_cols):
            hit = reps[:, c] == 1
            reps[hit] ^= row
    return HomologyGroup(len(chosen), reps, bbasis)


def homology(c: ChainComplexF2, check: bool = True) -> Dict[int, HomologyGroup]:
    """Homology in every degree with representative cycles.

    ``dim H_d = dim ker d_d - rank d_{d+1}``.  Representatives are chosen
    greedily from the null-space basis in column order and then reduced
    against the reduced echelon basis of the boundaries, so they depend only
    on the basis ordering.
    """
    if check:
        c.check()
    out = {}
    for d in c.gradings():
        outgoing = c.boundary(d).to_dense()
        if c.graded:
            incoming = c.boundary(d + 1).to_dense()
        else:
            incoming = outgoing
        out[d] = _homology_block(outgoing, incoming)
    return out


def homology_dims(c: ChainComplexF2) -> Dict[int, int]:
    return {d: h.dim for d, h in homology(c).items()}


# ---------------------------------------------------------------------------
# chain maps


@dataclass(frozen=True)
class ChainMapF2:
    """Degree ``degree_shift`` map: ``blocks[d]`` sends source degree d to target degree d + shift."""

    source: ChainComplexF2
    target: ChainComplexF2
    blocks: Mapping[int, MatrixF2]
    degree_shift: int = 0

    def block(self, d: int) -> MatrixF2:
        m = self.blocks.get(d)
        if m is None:
            return MatrixF2.zeros(self.target.dim(d + self.degree_shift), self.source.dim(d))
        return m

    def check(self) -> None:
        """Raise :class:`NotChainMap` unless ``f d = d f`` in every degree."""
        for d, m in self.blocks.items():
            want = (self.target.dim(d + self.degree_shift), self.source.dim(d))
            if m.shape != want:
                raise NotChainMap(f"block {d} has shape {m.shape}, expected {want}")
        for d in self.source.gradings():
            lhs = self.block(self.source.target_degree(d)) @ self.source.boundary(d)
            rhs = self.target.boundary(d + self.degree_shift) @ self.block(d)
            if lhs != rhs:
                raise NotChainMap(f"map does not commute with the boundary in degree {d}")


def induced_map_on_homology(
    f: ChainMapF2,
    source_h: Optional[Dict[int, HomologyGroup]] = None,
    target_h: Optional[Dict[int, HomologyGroup]] = None,
) -> Dict[int, MatrixF2]:
    """Matrix of ``f_*`` in the representative bases returned by :func:`homology`.

    Column ``j`` of the degree-``d`` matrix holds the coordinates of
    ``f(rep_j)``.
    """
    f.check()
    if source_h is None:
        source_h = homology(f.source)
    if target_h is None:
        target_h = homology(f.target)
    out = {}
    for d, hs in source_h.items():
        td = d + f.degree_shift
        ht = target_h.get(td)
        tdim = 0 if ht is None else ht.dim
        if hs.dim == 0 or tdim == 0:
            out[d] = MatrixF2.zeros(tdim, hs.dim)
            continue
        images = matmul_f2(f.block(d).to_dense(), hs.representatives.T).T
        coords = ht.coordinates(images)
        out[d] = MatrixF2.from_dense(coords.T)
    return out


def mapping_cone(f: ChainMapF2) -> ChainComplexF2:
    """Cone of ``f``: degree d is ``source[d-1-shift] + target[d]``, boundary ``[[d, 0], [f, d]]``.

    Ungraded maps produce an ungraded cone on ``source + target``.
    """
    f.check()
    S, T = f.source, f.target
    if not S.graded or not T.graded:
        if S.graded or T.graded:
            raise NotChainMap("cannot cone a graded complex against an ungraded one")
        ns, nt = S.dim(0), T.dim(0)
        D = np.zeros((ns + nt, ns + nt), dtype=np.uint8)
        D[:ns, :ns] = S.boundary(0).to_dense()
        D[ns:, :ns] = f.block(0).to_dense()
        D[ns:, ns:] = T.boundary(0).to_dense()
        labels = None
        if S.labels and T.labels:
            labels = [("src", x) for x in S.labels[0]] + [("tgt", x) for x in T.labels[0]]
        return ChainComplexF2.ungraded(MatrixF2.from_dense(D), labels)

    shift = f.degree_shift
    degrees = set(T.dims) | {d + 1 + shift for d in S.dims}
    dims = {d: S.dim(d - 1 - shift) + T.dim(d) for d in degrees}
    bnd = {}
    for d in degrees:
        sd, td = d - 1 - shift, d
        ns, nt = S.dim(sd), T.dim(td)
        ns1, nt1 = S.dim(sd - 1), T.dim(td - 1)
        M = np.zeros((ns1 + nt1, ns + nt), dtype=np.uint8)
        if ns and ns1:
            M[:ns1, :ns] = S.boundary(sd).to_dense()
        if ns and nt1:
            M[ns1:, :ns] = f.block(sd).to_dense()
        if nt and nt1:
            M[ns1:, ns:] = T.boundary(td).to_dense()
        bnd[d] = MatrixF2.from_dense(M)
    return ChainComplexF2({d: n for d, n in dims.items() if n}, {d: m for d, m in bnd.items() if dims[d]})
