"""
Permutation Groups
Stabilizer chains, exact factored orders, block systems and transitivity tests.

Permutations compose left to right: (p * q)[x] == q[p[x]], i.e. apply p then q.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from sympy import factorint, isprime, primerange

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    DegreeMismatchError,
    DihedrantError,
    IntransitiveGroupError,
    NonInvariantPartitionError,
    ResourceLimitError,
)
from .graph_metrics import Graph, distance_matrix_row, distance_partition

logger = logging.getLogger(__name__)

Images = Tuple[int, ...]


def _mul(p: Images, q: Images) -> Images:
    return tuple([q[x] for x in p])


def _inv(p: Images) -> Images:
    result = [0] * len(p)
    for i, x in enumerate(p):
        result[x] = i
    return tuple(result)


class Permutation:
    """A bijection on [0, d) stored as its image array"""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        self.images: Images = tuple(images)
        if check and sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def transposition(cls, degree: int, x: int, y: int) -> "Permutation":
        images = list(range(degree))
        images[x], images[y] = y, x
        return cls(images, check=False)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, x: int) -> int:
        return self.images[x]

    def __iter__(self):
        return iter(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DegreeMismatchError(self.degree, other.degree)
        return Permutation(_mul(self.images, other.images), check=False)

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images), check=False)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g"""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def support(self) -> List[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point"""
        seen = set()
        result = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = result * len(cycle) // gcd(result, len(cycle))
        return result

    def to_json(self) -> List[int]:
        return list(self.images)

    def __eq__(self, other) -> bool:
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return f"Permutation(identity, degree={self.degree})"
        body = "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)
        return f"Permutation({body}, degree={self.degree})"


PermLike = Union[Permutation, Sequence[int]]


def _images(p: PermLike) -> Images:
    return p.images if isinstance(p, Permutation) else tuple(p)


@dataclass(frozen=True)
class FactoredInteger:
    """Positive integer kept as sorted (prime, exponent) pairs"""
    factors: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def one(cls) -> "FactoredInteger":
        return cls(())

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        if n < 1:
            raise ValueError(f"cannot factor {n}")
        return cls(tuple(sorted(factorint(n).items())))

    @classmethod
    def from_dict(cls, exponents: Dict[Union[int, str], int]) -> "FactoredInteger":
        items = []
        for p, e in exponents.items():
            p = int(p)
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            if e < 0:
                raise ValueError(f"negative exponent for {p}")
            if e:
                items.append((p, int(e)))
        return cls(tuple(sorted(items)))

    @classmethod
    def factorial(cls, m: int) -> "FactoredInteger":
        """m! via Legendre's formula"""
        items = []
        for p in primerange(2, m + 1):
            e, q = 0, p
            while q <= m:
                e += m // q
                q *= p
            items.append((p, e))
        return cls(tuple(items))

    @classmethod
    def product(cls, values: Iterable[Union[int, "FactoredInteger"]]) -> "FactoredInteger":
        result = cls.one()
        for v in values:
            result = result * (v if isinstance(v, FactoredInteger) else cls.from_int(v))
        return result

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: Union[int, "FactoredInteger"]) -> "FactoredInteger":
        if isinstance(other, int):
            other = FactoredInteger.from_int(other)
        merged = self.as_dict()
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return FactoredInteger(tuple(sorted(merged.items())))

    __rmul__ = __mul__

    def divides(self, other: "FactoredInteger") -> bool:
        theirs = other.as_dict()
        return all(theirs.get(p, 0) >= e for p, e in self.factors)

    def __truediv__(self, other: Union[int, "FactoredInteger"]) -> "FactoredInteger":
        """Exact division"""
        if isinstance(other, int):
            other = FactoredInteger.from_int(other)
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        merged = self.as_dict()
        for p, e in other.factors:
            merged[p] -= e
        return FactoredInteger(tuple(sorted((p, e) for p, e in merged.items() if e)))

    def __int__(self) -> int:
        return prod(p ** e for p, e in self.factors)

    @property
    def value(self) -> int:
        return int(self)

    def to_json(self) -> Dict[str, int]:
        return {str(p): e for p, e in self.factors}

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def orbit(gens: Iterable[PermLike], point: int) -> FrozenSet[int]:
    """Smallest set containing point that every generator maps into itself"""
    gens = [_images(g) for g in gens]
    seen = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def orbit_of_tuple(gens: Iterable[PermLike], seed: Sequence[int], cap: Optional[int] = None) -> Set[Tuple[int, ...]]:
    """Orbit of a point tuple under the componentwise action"""
    gens = [_images(g) for g in gens]
    start = tuple(seed)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in gens:
            image = tuple([g[x] for x in current])
            if image not in seen:
                seen.add(image)
                if cap is not None and len(seen) > cap:
                    raise ResourceLimitError("tuple orbit", len(seen), cap)
                queue.append(image)
    return seen


def _orbit_transversal(gens: Sequence[Images], point: int, identity: Images) -> Dict[int, Images]:
    """Map orbit point x to u with point^u = x"""
    transversal = {point: identity}
    queue = [point]
    for x in queue:
        u = transversal[x]
        for g in gens:
            y = g[x]
            if y not in transversal:
                transversal[y] = _mul(u, g)
                queue.append(y)
    return transversal


@dataclass
class StabilizerChain:
    """Base, per-level strong generators and transversals"""
    degree: int
    base: List[int]
    strong: List[List[Images]]
    transversals: List[Dict[int, Images]]
    inverses: List[Dict[int, Images]] = field(default_factory=list)

    def __post_init__(self):
        if not self.inverses:
            self.inverses = [{x: _inv(u) for x, u in t.items()} for t in self.transversals]

    @property
    def basic_orbit_sizes(self) -> List[int]:
        return [len(t) for t in self.transversals]

    def sift(self, g: Images, start: int = 0) -> Tuple[Images, int]:
        for level in range(start, len(self.base)):
            x = g[self.base[level]]
            inverse = self.inverses[level].get(x)
            if inverse is None:
                return g, level
            g = _mul(g, inverse)
        return g, len(self.base)

    def tail(self, start: int) -> "StabilizerChain":
        return StabilizerChain(
            self.degree, self.base[start:], self.strong[start:],
            self.transversals[start:], self.inverses[start:],
        )

    def conjugated(self, u: Images) -> "StabilizerChain":
        """Chain of u^-1 G u"""
        ui = _inv(u)
        conj = lambda g: _mul(_mul(ui, g), u)
        return StabilizerChain(
            self.degree,
            [u[b] for b in self.base],
            [[conj(g) for g in level] for level in self.strong],
            [{u[x]: conj(t) for x, t in level.items()} for level in self.transversals],
        )


def _fixes_all(g: Images, points: Sequence[int]) -> bool:
    return all(g[b] == b for b in points)


def _build_chain(
    gens: Sequence[Images],
    degree: int,
    base_prefix: Sequence[int] = (),
    known_order: Optional[int] = None,
) -> StabilizerChain:
    """
    Deterministic Schreier-Sims.

    Args:
        gens: Generator image tuples
        degree: Number of points
        base_prefix: Points that must start the base
        known_order: Stop as soon as the basic orbit product reaches it

    Returns:
        A stabilizer chain whose basic orbit product is the group order
    """
    identity = tuple(range(degree))
    unique = list(dict.fromkeys(g for g in gens if g != identity))
    base = list(dict.fromkeys(base_prefix))
    for g in unique:
        if _fixes_all(g, base):
            base.append(next(x for x in range(degree) if g[x] != x))

    strong = [[g for g in unique if _fixes_all(g, base[:i])] for i in range(len(base))]
    transversals = [_orbit_transversal(strong[i], base[i], identity) for i in range(len(base))]
    chain = StabilizerChain(degree, base, strong, transversals)

    def finished() -> bool:
        return known_order is not None and prod(chain.basic_orbit_sizes) == known_order

    def rebuild(level: int):
        chain.transversals[level] = _orbit_transversal(chain.strong[level], chain.base[level], identity)
        chain.inverses[level] = {x: _inv(u) for x, u in chain.transversals[level].items()}

    if finished():
        return chain

    i = len(base) - 1
    while i >= 0:
        extended = False
        for x, u in list(chain.transversals[i].items()):
            for s in chain.strong[i]:
                y = s[x]
                schreier = _mul(_mul(u, s), chain.inverses[i][y])
                if schreier == identity:
                    continue
                h, j = chain.sift(schreier, i + 1)
                if j == len(chain.base) and h == identity:
                    continue
                if j == len(chain.base):
                    chain.base.append(next(pt for pt in range(degree) if h[pt] != pt))
                    chain.strong.append([])
                    chain.transversals.append({})
                    chain.inverses.append({})
                for level in range(i + 1, j + 1):
                    chain.strong[level].append(h)
                    rebuild(level)
                if finished():
                    return chain
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1
    return chain


class PermutationGroup:
    """
    Group generated by permutations of a common degree.
    The stabilizer chain is built lazily on first use.
    """

    def __init__(self, generators: Iterable[PermLike], degree: Optional[int] = None):
        gens = [_images(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatchError(degree, len(g))
        identity = tuple(range(degree))
        self._degree = degree
        self._gens: List[Images] = list(dict.fromkeys(g for g in gens if g != identity))
        self._chain: Optional[StabilizerChain] = None

    @classmethod
    def from_bsgs(cls, degree: int, strong_generators: Iterable[PermLike], base: Sequence[int]) -> "PermutationGroup":
        """Trusted base and strong generating set; transversals are recomputed, nothing is sifted"""
        gens = [_images(g) for g in strong_generators]
        identity = tuple(range(degree))
        base = list(base)
        strong = [[g for g in gens if _fixes_all(g, base[:i])] for i in range(len(base))]
        transversals = [_orbit_transversal(strong[i], base[i], identity) for i in range(len(base))]
        group = cls(gens, degree=degree)
        group._chain = StabilizerChain(degree, base, strong, transversals)
        return group

    @classmethod
    def symmetric(cls, degree: int) -> "PermutationGroup":
        if degree < 2:
            return cls([], degree=degree)
        cycle = tuple(list(range(1, degree)) + [0])
        swap = Permutation.transposition(degree, 0, 1)
        return cls([cycle, swap], degree=degree)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> List[Permutation]:
        return [Permutation(g, check=False) for g in self._gens]

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = _build_chain(self._gens, self._degree)
        return self._chain

    @property
    def base(self) -> List[int]:
        return list(self.chain.base)

    def order(self) -> FactoredInteger:
        return FactoredInteger.product(self.chain.basic_orbit_sizes)

    def order_int(self) -> int:
        return prod(self.chain.basic_orbit_sizes)

    def contains(self, perm: PermLike) -> bool:
        g = _images(perm)
        if len(g) != self._degree:
            raise DegreeMismatchError(self._degree, len(g))
        h, level = self.chain.sift(g)
        return level == len(self.chain.base) and h == tuple(range(self._degree))

    __contains__ = contains

    def orbit(self, point: int) -> FrozenSet[int]:
        return orbit(self._gens, point)

    def orbits(self) -> List[FrozenSet[int]]:
        seen: Set[int] = set()
        result = []
        for x in range(self._degree):
            if x not in seen:
                o = self.orbit(x)
                seen |= o
                result.append(o)
        return result

    def is_transitive(self, points: Optional[Iterable[int]] = None) -> bool:
        points = set(range(self._degree)) if points is None else set(points)
        if not points:
            return True
        return self.orbit(min(points)) == points

    def stabilizer(self, point: int) -> "PermutationGroup":
        """Pointwise stabilizer of one point"""
        chain = self.chain
        if not chain.base:
            return PermutationGroup([], degree=self._degree)
        if chain.base[0] == point:
            tail = chain.tail(1)
            return PermutationGroup._from_tail(tail, self._degree)
        u = chain.transversals[0].get(point)
        if u is not None:
            # G_point = u^-1 G_base0 u
            tail = chain.conjugated(u).tail(1)
            return PermutationGroup._from_tail(tail, self._degree)
        if all(g[point] == point for g in self._gens):
            return self
        sub = _build_chain(
            [g for level in chain.strong for g in level], self._degree,
            base_prefix=[point] + chain.base, known_order=self.order_int(),
        )
        return PermutationGroup._from_tail(sub.tail(1), self._degree)

    @classmethod
    def _from_tail(cls, tail: StabilizerChain, degree: int) -> "PermutationGroup":
        gens = list(dict.fromkeys(g for level in tail.strong for g in level))
        group = cls(gens, degree=degree)
        group._chain = tail
        return group

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self._degree}, generators={len(self._gens)})"


def schreier_sims(gens: Iterable[PermLike], degree: Optional[int] = None, base: Sequence[int] = ()) -> PermutationGroup:
    """Group with its stabilizer chain built eagerly"""
    group = PermutationGroup(gens, degree=degree)
    group._chain = _build_chain(group._gens, group.degree, base_prefix=base)
    return group


def point_stabilizer(group: PermutationGroup, v: int) -> PermutationGroup:
    return group.stabilizer(v)


def contains(group: PermutationGroup, perm: PermLike) -> bool:
    return group.contains(perm)


def is_normal(subgroup: Union[PermutationGroup, Iterable[PermLike]], group: PermutationGroup) -> bool:
    """True iff g^-1 h g lies in the subgroup for every pair of generators"""
    if not isinstance(subgroup, PermutationGroup):
        subgroup = PermutationGroup(subgroup, degree=group.degree)
    if subgroup.degree != group.degree:
        raise DegreeMismatchError(group.degree, subgroup.degree)
    for g in group._gens:
        gi = _inv(g)
        for h in subgroup._gens:
            if not subgroup.contains(_mul(_mul(gi, h), g)):
                return False
    return True


@dataclass(frozen=True)
class BlockSystem:
    """
    Partition of the points into cells of equal size.
    sides optionally splits the cell indices into two labelled halves.
    """
    cells: Tuple[FrozenSet[int], ...]
    sides: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    _cell_of: Dict[int, int] = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        sizes = {len(c) for c in self.cells}
        if any(not c for c in self.cells) or len(sizes) > 1:
            raise ValueError("cells must be nonempty and of equal size")
        for index, cell in enumerate(self.cells):
            for x in cell:
                if x in self._cell_of:
                    raise ValueError(f"point {x} appears in two cells")
                self._cell_of[x] = index
        if sorted(self._cell_of) != list(range(len(self._cell_of))):
            raise ValueError("cells do not cover [0, d)")

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]], sides=None) -> "BlockSystem":
        ordered = sorted((frozenset(c) for c in cells), key=min)
        return cls(tuple(ordered), sides)

    @property
    def degree(self) -> int:
        return len(self._cell_of)

    @property
    def cell_size(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def cell_of(self, x: int) -> int:
        return self._cell_of[x]

    def is_invariant(self, gens: Iterable[PermLike]) -> bool:
        for g in gens:
            g = _images(g)
            for cell in self.cells:
                targets = {self._cell_of[g[x]] for x in cell}
                if len(targets) != 1:
                    return False
        return True

    def is_trivial(self) -> bool:
        return len(self.cells) in (1, self.degree)

    def to_json(self):
        return {
            "cells": [sorted(c) for c in self.cells],
            "sides": None if self.sides is None else [list(s) for s in self.sides],
        }


def induced_action(group: PermutationGroup, blocks: BlockSystem) -> PermutationGroup:
    """Action of the group on the cells of an invariant partition"""
    if blocks.degree != group.degree:
        raise DegreeMismatchError(group.degree, blocks.degree)
    if not blocks.is_invariant(group._gens):
        raise NonInvariantPartitionError("partition is not preserved by the group")
    reps = [min(c) for c in blocks.cells]
    images = [tuple(blocks.cell_of(g[r]) for r in reps) for g in group._gens]
    return PermutationGroup(images, degree=len(blocks.cells))


def restriction(group: PermutationGroup, points: Sequence[int]) -> PermutationGroup:
    """Action on an invariant point set, relabelled to [0, len(points))"""
    points = list(points)
    index = {x: i for i, x in enumerate(points)}
    images = []
    for g in group._gens:
        try:
            images.append(tuple(index[g[x]] for x in points))
        except KeyError:
            raise NonInvariantPartitionError("point set is not invariant") from None
    return PermutationGroup(images, degree=len(points))


def sign_kernel(group: PermutationGroup, sign: Callable[[Images], int]) -> PermutationGroup:
    """
    Kernel of a homomorphism onto Z_2 given by its value on generators.
    Built from Schreier generators with coset representatives {1, s}.
    """
    signs = [sign(g) % 2 for g in group._gens]
    odd = [g for g, e in zip(group._gens, signs) if e]
    if not odd:
        return group
    s = odd[0]
    si = _inv(s)
    gens = []
    for g, e in zip(group._gens, signs):
        if e:
            gens.extend([_mul(g, si), _mul(s, g)])
        else:
            gens.extend([g, _mul(_mul(s, g), si)])
    return PermutationGroup(gens, degree=group.degree)


def minimal_block_systems(group: PermutationGroup) -> List[BlockSystem]:
    """
    All minimal nontrivial block systems, from pair-seeded union-find.

    Raises:
        IntransitiveGroupError: the group is not transitive
    """
    d = group.degree
    if not group.is_transitive():
        raise IntransitiveGroupError("block systems need a transitive group")
    gens = group._gens
    found: Dict[FrozenSet[FrozenSet[int]], BlockSystem] = {}

    for j in range(1, d):
        parent = list(range(d))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        parent[find(j)] = find(0)
        queue = deque([(0, j)])
        while queue:
            x, y = queue.popleft()
            for g in gens:
                rx, ry = find(g[x]), find(g[y])
                if rx != ry:
                    parent[ry] = rx
                    queue.append((rx, ry))

        classes: Dict[int, List[int]] = {}
        for x in range(d):
            classes.setdefault(find(x), []).append(x)
        if len(classes) == 1:
            continue
        key = frozenset(frozenset(c) for c in classes.values())
        if key not in found:
            found[key] = BlockSystem.from_cells(classes.values())

    systems = list(found.values())
    minimal = []
    for system in systems:
        finer = any(
            other is not system
            and other.cell_size < system.cell_size
            and all(len({system.cell_of(x) for x in cell}) == 1 for cell in other.cells)
            for other in systems
        )
        if not finer:
            minimal.append(system)
    return sorted(minimal, key=lambda b: (b.cell_size, [sorted(c) for c in b.cells]))


def is_primitive(group: PermutationGroup, points: Optional[Sequence[int]] = None) -> bool:
    if points is not None:
        group = restriction(group, points)
    if group.degree <= 2:
        return group.is_transitive()
    return not minimal_block_systems(group)


def is_regular_on(group: PermutationGroup, points: Optional[Sequence[int]] = None) -> bool:
    """Transitive with trivial point stabilizers on the given invariant set"""
    if points is not None:
        group = restriction(group, points)
    return group.is_transitive() and group.order_int() == group.degree


def _check_subgroup_of_aut(graph: Graph, group: PermutationGroup):
    if group.degree != graph.order:
        raise DegreeMismatchError(graph.order, group.degree)
    for g in group._gens:
        if not graph.is_automorphism(g):
            raise DihedrantError("group contains a permutation that is not a graph automorphism")


def count_s_arcs(graph: Graph, s: int) -> int:
    """Number of s-arcs (walks of length s without immediate backtracking)"""
    if s == 0:
        return graph.order
    arcs = [(u, v) for u in range(graph.order) for v in graph.neighbors(u)]
    ways = {arc: 1 for arc in arcs}
    for _ in range(s - 1):
        step: Dict[Tuple[int, int], int] = {}
        for (u, v), count in ways.items():
            for w in graph.neighbors(v):
                if w != u:
                    step[(v, w)] = step.get((v, w), 0) + count
        ways = step
    return sum(ways.values())


def _seed_s_arc(graph: Graph, s: int) -> Optional[Tuple[int, ...]]:
    arc = [0]
    for _ in range(s):
        previous = arc[-2] if len(arc) >= 2 else -1
        options = [w for w in graph.neighbors(arc[-1]) if w != previous]
        if not options:
            return None
        arc.append(options[0])
    return tuple(arc)


def _extension_signatures_agree(graph: Graph, seed: Tuple[int, ...]) -> bool:
    """
    Necessary condition: extensions of each prefix of the seed have equal
    distance profiles to the prefix vertices.
    """
    distances = {u: distance_matrix_row(graph, u) for u in set(seed)}
    for j in range(1, len(seed)):
        prefix = seed[:j]
        previous = prefix[-2] if len(prefix) >= 2 else -1
        signatures = {
            tuple(distances[x].get(w, -1) for x in prefix)
            for w in graph.neighbors(prefix[-1]) if w != previous
        }
        if len(signatures) > 1:
            return False
    return True


def is_s_arc_transitive(graph: Graph, group: PermutationGroup, s: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    """
    True iff the group is transitive on the s-arcs of the graph.

    Raises:
        ResourceLimitError: the s-arc count exceeds limits.arc_cap
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    _check_subgroup_of_aut(graph, group)
    total = count_s_arcs(graph, s)
    if total == 0:
        return True
    if total > limits.arc_cap:
        raise ResourceLimitError(f"{s}-arc count", total, limits.arc_cap)
    if group.order_int() % total:
        return False
    seed = _seed_s_arc(graph, s)
    if seed is None:
        return True
    if not _extension_signatures_agree(graph, seed):
        return False
    return len(orbit_of_tuple(group._gens, seed, cap=limits.arc_cap)) == total


def is_transitive_on_arcs(graph: Graph, group: PermutationGroup, limits: Limits = DEFAULT_LIMITS) -> bool:
    return is_s_arc_transitive(graph, group, 1, limits)


def is_2_distance_transitive(graph: Graph, group: PermutationGroup) -> bool:
    """Vertex stabilizer transitive on the first and second distance shells"""
    if not group.is_transitive():
        raise IntransitiveGroupError("2-distance-transitivity needs a vertex-transitive group")
    shells = distance_partition(graph, 0, require_connected=False)
    stabilizer = group.stabilizer(0)
    for i in (1, 2):
        shell = shells.shell(i)
        if shell and stabilizer.orbit(min(shell)) != shell:
            return False
    return True
