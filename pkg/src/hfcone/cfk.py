"""Finitely generated models of the full knot Floer complex.

A generator ``x`` sits at filtration level ``(0, A(x))``; ``U^n x`` sits at
``(-n, A(x) - n)`` with Maslov grading ``M(x) - 2n``.  An arrow
``x -> U^n y`` records that ``U^n y`` appears in the differential of ``x``.

The subquotients used by the surgery formula all contain exactly one
``U``-translate of each generator, so each is described by a map from
generator labels to the chosen ``U`` power.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import EmptySteps, InvalidComplex, MissingInvolution
from .gf2 import ChainComplexF2, ChainMapF2, MatrixF2


@dataclass(frozen=True)
class Generator:
    name: str
    alexander: int
    maslov: int


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    u_power: int


@dataclass(frozen=True, eq=True)
class KnotComplex:
    name: str
    generators: Tuple[Generator, ...]
    arrows: Tuple[Arrow, ...]
    involution: Optional[Mapping[str, str]] = field(default=None, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.involution is not None:
            object.__setattr__(self, "involution", dict(self.involution))

    @property
    def labels(self) -> List[str]:
        return [g.name for g in self.generators]

    def generator(self, label: str) -> Generator:
        return self._by_name()[label]

    def alexander(self, label: str) -> int:
        return self._by_name()[label].alexander

    def _by_name(self) -> Dict[str, Generator]:
        cache = self.__dict__.get("_name_cache")
        if cache is None:
            cache = {g.name: g for g in self.generators}
            object.__setattr__(self, "_name_cache", cache)
        return cache

    def outgoing(self) -> Dict[str, List[Arrow]]:
        out: Dict[str, List[Arrow]] = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a)
        return out

    def __len__(self) -> int:
        return len(self.generators)

    def renamed(self, name: str) -> "KnotComplex":
        return KnotComplex(name, self.generators, self.arrows, self.involution)


# ---------------------------------------------------------------------------
# validation


def _arrow_str(a: Arrow) -> str:
    return f"{a.source} -> U^{a.u_power} {a.target}"


def validate(c: KnotComplex) -> List[str]:
    """Check the filtration, grading, d^2 = 0 and flip-symmetry axioms.

    Returns a list of human-readable diagnostics; an empty list means the
    complex is valid.
    """
    diags: List[str] = []
    names = [g.name for g in c.generators]
    dup = [n for n, k in Counter(names).items() if k > 1]
    if dup:
        diags.append(f"duplicate generator labels: {sorted(dup)}")
    if not names:
        diags.append("complex has no generators")
    gens = {g.name: g for g in c.generators}

    seen = set()
    for a in c.arrows:
        if a.source not in gens or a.target not in gens:
            diags.append(f"arrow {_arrow_str(a)} refers to an unknown generator")
            continue
        if (a.source, a.target, a.u_power) in seen:
            diags.append(f"arrow {_arrow_str(a)} is listed twice")
        seen.add((a.source, a.target, a.u_power))
        x, y = gens[a.source], gens[a.target]
        if a.u_power < 0:
            diags.append(f"arrow {_arrow_str(a)} has a negative U power")
        if a.u_power < y.alexander - x.alexander:
            diags.append(
                f"arrow {_arrow_str(a)} raises the j filtration "
                f"(A({y.name}) - n = {y.alexander - a.u_power} > A({x.name}) = {x.alexander})"
            )
        if y.maslov - 2 * a.u_power != x.maslov - 1:
            diags.append(
                f"arrow {_arrow_str(a)} breaks the Maslov grading "
                f"(M({y.name}) - 2n = {y.maslov - 2 * a.u_power}, M({x.name}) - 1 = {x.maslov - 1})"
            )
    if diags:
        return diags

    out = c.outgoing()
    for x in names:
        terms: Counter = Counter()
        for a in out.get(x, ()):
            for b in out.get(a.target, ()):
                terms[(b.target, a.u_power + b.u_power)] += 1
        bad = sorted((z, n) for (z, n), k in terms.items() if k % 2)
        if bad:
            z, n = bad[0]
            diags.append(f"d^2 != 0: d(d({x})) contains U^{n} {z}")

    if c.involution is not None:
        diags.extend(_validate_involution(c, gens))
    return diags


def _validate_involution(c: KnotComplex, gens: Mapping[str, Generator]) -> List[str]:
    diags = []
    iota = c.involution
    if set(iota) != set(gens) or set(iota.values()) != set(gens):
        return ["involution is not a permutation of the generator labels"]
    for x, y in iota.items():
        if iota[y] != x:
            diags.append(f"involution does not square to the identity at {x}")
        if gens[y].alexander != -gens[x].alexander:
            diags.append(f"involution sends A({x}) = {gens[x].alexander} to A({y}) = {gens[y].alexander}")
    if diags:
        return diags
    arrows = {(a.source, a.target, a.u_power) for a in c.arrows}
    for a in c.arrows:
        n = a.u_power + gens[a.source].alexander - gens[a.target].alexander
        image = (iota[a.source], iota[a.target], n)
        if image not in arrows:
            diags.append(
                f"involution image of arrow {_arrow_str(a)} "
                f"({image[0]} -> U^{image[2]} {image[1]}) is missing"
            )
    return diags


def check(c: KnotComplex) -> KnotComplex:
    diags = validate(c)
    if diags:
        raise InvalidComplex("; ".join(diags))
    return c


# ---------------------------------------------------------------------------
# constructors


def unknot(name: str = "unknot") -> KnotComplex:
    return KnotComplex(name, (Generator("x", 0, 0),), (), {"x": "x"})


def staircase(steps: Sequence[int], name: Optional[str] = None, prefix: str = "x") -> KnotComplex:
    """Staircase complex with alternating horizontal/vertical step lengths.

    ``steps = [h1, v1, h2, v2, ...]``: generator ``x(2i+1)`` has a horizontal
    arrow of length ``h`` to ``x(2i)`` and a vertical arrow of length ``v`` to
    ``x(2i+2)``.  The top generator sits in Alexander grading ``sum(steps)/2``
    and Maslov grading 0.  Palindromic step lists get the flip involution.
    """
    steps = [int(s) for s in steps]
    if not steps:
        raise EmptySteps("a staircase needs at least one pair of steps")
    if len(steps) % 2:
        raise InvalidComplex("staircase steps come in horizontal/vertical pairs")
    if any(s <= 0 for s in steps):
        raise InvalidComplex("staircase steps must be positive")
    if sum(steps) % 2:
        raise InvalidComplex("staircase step lengths must have an even total")
    ngen = len(steps) + 1
    labels = [f"{prefix}{i}" for i in range(ngen)]
    alex = [sum(steps) // 2]
    mas = [0]
    arrows = []
    for i in range(0, len(steps), 2):
        h, v = steps[i], steps[i + 1]
        alex.append(alex[-1] - h)
        mas.append(mas[-1] - 2 * h + 1)
        alex.append(alex[-1] - v)
        mas.append(mas[-1] - 1)
        arrows.append(Arrow(labels[i + 1], labels[i], h))
        arrows.append(Arrow(labels[i + 1], labels[i + 2], 0))
    gens = tuple(Generator(l, a, m) for l, a, m in zip(labels, alex, mas))
    invol = None
    if steps == steps[::-1]:
        invol = {labels[i]: labels[ngen - 1 - i] for i in range(ngen)}
    return check(KnotComplex(name or f"staircase{steps}", gens, tuple(arrows), invol))


def box(s: int, m: int, prefix: str = "e") -> KnotComplex:
    """Acyclic square: e1 -> e2 + U e3, e2 -> U e4, e3 -> e4, with e1 at (0, s).

    Only ``box(0, m)`` is flip-symmetric on its own; see :func:`box_pair`.
    """
    e1, e2, e3, e4 = (f"{prefix}{i}" for i in range(1, 5))
    gens = (
        Generator(e1, s, m),
        Generator(e2, s - 1, m - 1),
        Generator(e3, s + 1, m + 1),
        Generator(e4, s, m),
    )
    arrows = (Arrow(e1, e2, 0), Arrow(e1, e3, 1), Arrow(e2, e4, 1), Arrow(e3, e4, 0))
    invol = {e1: e1, e2: e3, e3: e2, e4: e4} if s == 0 else None
    return check(KnotComplex(f"box({s},{m})", gens, arrows, invol))


def box_pair(s: int, m: int, prefix: str = "e") -> KnotComplex:
    """``box(s, m)`` together with its flip partner ``box(-s, m - 2s)``."""
    if s == 0:
        return box(0, m, prefix)
    a = box(s, m, prefix + "a")
    b = box(-s, m - 2 * s, prefix + "b")
    iota = {}
    for k, kk in ((1, 1), (2, 3), (3, 2), (4, 4)):
        iota[f"{prefix}a{k}"] = f"{prefix}b{kk}"
        iota[f"{prefix}b{kk}"] = f"{prefix}a{k}"
    joined = direct_sum([a, b], name=f"boxpair({s},{m})")
    return check(KnotComplex(joined.name, joined.generators, joined.arrows, iota))


def direct_sum(parts: Sequence[KnotComplex], name: Optional[str] = None) -> KnotComplex:
    gens: List[Generator] = []
    arrows: List[Arrow] = []
    invol: Optional[Dict[str, str]] = {}
    for p in parts:
        gens.extend(p.generators)
        arrows.extend(p.arrows)
        if p.involution is None or invol is None:
            invol = None
        else:
            invol.update(p.involution)
    labels = [g.name for g in gens]
    if len(set(labels)) != len(labels):
        raise InvalidComplex("direct summands share generator labels")
    return check(KnotComplex(name or "+".join(p.name for p in parts), tuple(gens), tuple(arrows), invol))


def mirror(c: KnotComplex, name: Optional[str] = None) -> KnotComplex:
    """Dual complex: negate both gradings and reverse every arrow."""
    check(c)
    gens = tuple(Generator(g.name, -g.alexander, -g.maslov) for g in c.generators)
    arrows = tuple(Arrow(a.target, a.source, a.u_power) for a in c.arrows)
    return check(KnotComplex(name or f"mirror({c.name})", gens, arrows, c.involution))


def tensor(c1: KnotComplex, c2: KnotComplex, name: Optional[str] = None) -> KnotComplex:
    """Connected-sum model: pairs of generators with the Leibniz differential."""
    check(c1)
    check(c2)

    def lab(x, y):
        return f"{x}*{y}"

    gens = []
    for g in c1.generators:
        for h in c2.generators:
            gens.append(Generator(lab(g.name, h.name), g.alexander + h.alexander, g.maslov + h.maslov))
    arrows = []
    for a in c1.arrows:
        for h in c2.generators:
            arrows.append(Arrow(lab(a.source, h.name), lab(a.target, h.name), a.u_power))
    for g in c1.generators:
        for b in c2.arrows:
            arrows.append(Arrow(lab(g.name, b.source), lab(g.name, b.target), b.u_power))
    invol = None
    if c1.involution is not None and c2.involution is not None:
        invol = {
            lab(g.name, h.name): lab(c1.involution[g.name], c2.involution[h.name])
            for g in c1.generators
            for h in c2.generators
        }
    return check(KnotComplex(name or f"{c1.name}#{c2.name}", tuple(gens), tuple(arrows), invol))


def width(c: KnotComplex) -> int:
    return max(abs(g.alexander) for g in c.generators)


# ---------------------------------------------------------------------------
# subquotient complexes


@dataclass(frozen=True)
class Subquotient:
    """A subquotient complex holding one ``U``-translate per retained generator.

    ``generator_map[i] = (label, n)`` says basis vector ``i`` of ``base`` is
    ``U^n label``.
    """

    base: ChainComplexF2
    origin: str
    generator_map: Tuple[Tuple[str, int], ...]

    @property
    def dim(self) -> int:
        return len(self.generator_map)

    def index(self) -> Dict[str, int]:
        return {lab: i for i, (lab, _) in enumerate(self.generator_map)}


def _region(c: KnotComplex, origin: str, powers: Mapping[str, int]) -> Subquotient:
    """Induced complex on the translates ``U^powers[x] x`` (in generator order)."""
    order = [(g.name, powers[g.name]) for g in c.generators if g.name in powers]
    idx = {lab: i for i, (lab, _) in enumerate(order)}
    pairs = []
    for a in c.arrows:
        if a.source in idx and a.target in idx:
            if powers[a.source] + a.u_power == powers[a.target]:
                pairs.append((idx[a.target], idx[a.source]))
    n = len(order)
    labels = [f"U^{p} {lab}" if p else lab for lab, p in order]
    base = ChainComplexF2.ungraded(MatrixF2.from_pairs(n, n, pairs), labels)
    return Subquotient(base, origin, tuple(order))


def complex_B(c: KnotComplex) -> Subquotient:
    """Vertical complex C{i = 0}."""
    return _region(c, "B", {g.name: 0 for g in c.generators})


def complex_B_filtered(c: KnotComplex, s: int) -> Subquotient:
    """Subcomplex C{i = 0, j <= s} of the vertical complex."""
    return _region(c, f"VerticalFiltered({s})", {g.name: 0 for g in c.generators if g.alexander <= s})


def complex_horizontal(c: KnotComplex, s: int) -> Subquotient:
    """Horizontal complex C{j = s}."""
    return _region(c, f"Horizontal({s})", {g.name: g.alexander - s for g in c.generators})


def complex_A(c: KnotComplex, s: int) -> Subquotient:
    """C{max(i, j - s) = 0}: one translate ``U^max(0, A(x) - s) x`` per generator."""
    return _region(c, f"A({s})", {g.name: max(0, g.alexander - s) for g in c.generators})


def complex_A_prime(c: KnotComplex, s: int) -> Subquotient:
    """C{min(i, j - s) = 0}: one translate ``U^min(0, A(x) - s) x`` per generator."""
    return _region(c, f"A'({s})", {g.name: min(0, g.alexander - s) for g in c.generators})


def _map_between(
    source: Subquotient, target: Subquotient, rule: Callable[[str, int], Optional[str]]
) -> ChainMapF2:
    tidx = target.index()
    pairs = []
    for j, (lab, n) in enumerate(source.generator_map):
        img = rule(lab, n)
        if img is not None:
            pairs.append((tidx[img], j))
    m = MatrixF2.from_pairs(target.dim, source.dim, pairs)
    return ChainMapF2(source.base, target.base, {0: m})


def v_map(c: KnotComplex, s: int, source: Optional[Subquotient] = None,
          target: Optional[Subquotient] = None) -> ChainMapF2:
    """A_s -> B: ``U^n x`` goes to ``x`` when ``n = 0`` (that is ``A(x) <= s``)."""
    source = source or complex_A(c, s)
    target = target or complex_B(c)
    return _map_between(source, target, lambda lab, n: lab if n == 0 else None)


def h_map(c: KnotComplex, s: int, source: Optional[Subquotient] = None,
          target: Optional[Subquotient] = None) -> ChainMapF2:
    """A_s -> B: quotient onto C{j = s}, shift down to C{j = 0}, then flip.

    ``U^n x`` goes to ``iota(x)`` when ``A(x) >= s`` and to zero otherwise.
    """
    if c.involution is None:
        raise MissingInvolution(f"complex {c.name!r} has no flip involution; h_s is undefined at chain level")
    iota = c.involution
    alex = {g.name: g.alexander for g in c.generators}
    source = source or complex_A(c, s)
    target = target or complex_B(c)
    return _map_between(source, target, lambda lab, n: iota[lab] if alex[lab] >= s else None)


def v_prime_map(c: KnotComplex, s: int, source: Optional[Subquotient] = None,
                target: Optional[Subquotient] = None) -> ChainMapF2:
    """B -> A'_s: quotient onto C{i = 0, j >= s} followed by inclusion."""
    alex = {g.name: g.alexander for g in c.generators}
    source = source or complex_B(c)
    target = target or complex_A_prime(c, s)
    return _map_between(source, target, lambda lab, n: lab if alex[lab] >= s else None)


def inclusion_map(sub: Subquotient, ambient: Subquotient) -> ChainMapF2:
    """Inclusion of a sub-region that uses the same translates as ``ambient``."""
    amb = dict(ambient.generator_map)
    return _map_between(sub, ambient, lambda lab, n: lab if amb.get(lab) == n else None)
