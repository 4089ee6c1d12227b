"""
Graph Metrics
Bitset graphs, BFS invariants and structural recognition of the closed-form families.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DegreeMismatchError, DisconnectedGraphError, RecognitionError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """
    Simple undirected graph stored as one adjacency bitset per vertex.
    Immutable after construction.
    """

    def __init__(self, rows: Sequence[int], labels: Optional[Sequence[str]] = None, check: bool = True):
        self._rows: Tuple[int, ...] = tuple(int(r) for r in rows)
        self._order = len(self._rows)
        self._labels = tuple(labels) if labels is not None else None
        if check:
            self._validate()

    def _validate(self):
        full = (1 << self._order) - 1
        for u, row in enumerate(self._rows):
            if row & ~full:
                raise ValueError(f"row {u} references vertices outside [0, {self._order})")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in iter_bits(row):
                if not self._rows[v] >> u & 1:
                    raise ValueError(f"edge {u}-{v} is not symmetric")

    # Constructors

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(rows, check=False)

    @classmethod
    def complete(cls, m: int) -> "Graph":
        full = (1 << m) - 1
        return cls([full & ~(1 << u) for u in range(m)], check=False)

    @classmethod
    def complete_bipartite(cls, m: int) -> "Graph":
        left = (1 << m) - 1
        right = left << m
        return cls([right] * m + [left] * m, check=False)

    @classmethod
    def complete_bipartite_minus_matching(cls, m: int) -> "Graph":
        """K_{m,m} with the matching u <-> u + m removed"""
        left = (1 << m) - 1
        right = left << m
        rows = [right & ~(1 << (u + m)) for u in range(m)]
        rows += [left & ~(1 << u) for u in range(m)]
        return cls(rows, check=False)

    @classmethod
    def complete_multipartite(cls, m: int, t: int) -> "Graph":
        """K_{m[t]}: m parts of size t, parts are consecutive index blocks"""
        order = m * t
        full = (1 << order) - 1
        rows = []
        for u in range(order):
            part = u // t
            rows.append(full & ~(((1 << t) - 1) << (part * t)))
        return cls(rows, check=False)

    @classmethod
    def cycle(cls, m: int) -> "Graph":
        return cls.from_edges(m, [(u, (u + 1) % m) for u in range(m)])

    @classmethod
    def path(cls, m: int) -> "Graph":
        return cls.from_edges(m, [(u, u + 1) for u in range(m - 1)])

    # Accessors

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    def neighbor_mask(self, v: int) -> int:
        return self._rows[v]

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    @property
    def valency(self) -> Optional[int]:
        """Common degree, or None for irregular graphs"""
        if not self._order:
            return 0
        k = self.degree(0)
        if all(row.bit_count() == k for row in self._rows):
            return k
        return None

    @property
    def is_regular(self) -> bool:
        return self.valency is not None

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self._rows) // 2

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u, row in enumerate(self._rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def label(self, v: int) -> str:
        if self._labels is not None:
            return self._labels[v]
        return str(v)

    def adjacency_matrix(self) -> np.ndarray:
        matrix = np.zeros((self._order, self._order), dtype=np.int64)
        for u, row in enumerate(self._rows):
            matrix[u, list(iter_bits(row))] = 1
        return matrix

    # Permutation actions

    def _map_mask(self, mask: int, perm: Sequence[int]) -> int:
        image = 0
        for v in iter_bits(mask):
            image |= 1 << perm[v]
        return image

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        """True iff perm maps edges to edges (and hence non-edges to non-edges)"""
        if len(perm) != self._order:
            raise DegreeMismatchError(self._order, len(perm))
        if len(set(perm)) != self._order:
            return False
        rows = self._rows
        for u in range(self._order):
            if self._map_mask(rows[u], perm) != rows[perm[u]]:
                return False
        return True

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which perm[u] ~ perm[v] iff u ~ v"""
        if len(perm) != self._order:
            raise DegreeMismatchError(self._order, len(perm))
        rows = [0] * self._order
        for u, row in enumerate(self._rows):
            rows[perm[u]] = self._map_mask(row, perm)
        return Graph(rows, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, edges={self.edge_count})"


def is_isomorphism(source: Graph, target: Graph, perm: Sequence[int]) -> bool:
    """True iff u ~ v in source exactly when perm[u] ~ perm[v] in target"""
    if source.order != target.order:
        return False
    return source.relabel(perm) == target


@dataclass(frozen=True)
class DistancePartition:
    """BFS shells Γ_0(u), Γ_1(u), ... around a source vertex"""
    source: int
    shells: Tuple[FrozenSet[int], ...]

    def shell(self, i: int) -> FrozenSet[int]:
        if 0 <= i < len(self.shells):
            return self.shells[i]
        return frozenset()

    @property
    def sizes(self) -> List[int]:
        return [len(shell) for shell in self.shells]

    @property
    def eccentricity(self) -> int:
        return len(self.shells) - 1

    def distance_to(self, v: int) -> Optional[int]:
        for i, shell in enumerate(self.shells):
            if v in shell:
                return i
        return None


def _bfs_masks(graph: Graph, source: int) -> Tuple[List[int], int]:
    rows = graph.rows
    visited = 1 << source
    frontier = visited
    shells = [frontier]
    while frontier:
        reach = 0
        for u in iter_bits(frontier):
            reach |= rows[u]
        frontier = reach & ~visited
        if frontier:
            visited |= frontier
            shells.append(frontier)
    return shells, visited


def distance_partition(graph: Graph, v: int, require_connected: bool = True) -> DistancePartition:
    """
    Exact BFS shells around v.

    Raises:
        DisconnectedGraphError: graph is disconnected and require_connected is set
    """
    shells, visited = _bfs_masks(graph, v)
    if require_connected and visited != (1 << graph.order) - 1:
        unreached = set(range(graph.order)) - set(iter_bits(visited))
        raise DisconnectedGraphError(unreached)
    return DistancePartition(v, tuple(frozenset(iter_bits(s)) for s in shells))


def distance_matrix_row(graph: Graph, v: int) -> Dict[int, int]:
    """Distances from v to every reachable vertex"""
    dist = {}
    shells, _ = _bfs_masks(graph, v)
    for i, shell in enumerate(shells):
        for u in iter_bits(shell):
            dist[u] = i
    return dist


def is_connected(graph: Graph) -> bool:
    if graph.order == 0:
        return True
    _, visited = _bfs_masks(graph, 0)
    return visited == (1 << graph.order) - 1


def girth(graph: Graph) -> Optional[int]:
    """Length of a shortest cycle, or None for a forest"""
    best: Optional[int] = None
    rows = graph.rows
    for s in range(graph.order):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            # Nothing shorter can close beyond this depth
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(rows[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def diameter(graph: Graph) -> int:
    """Maximum eccentricity; disconnected graphs are an error"""
    full = (1 << graph.order) - 1
    result = 0
    for v in range(graph.order):
        shells, visited = _bfs_masks(graph, v)
        if visited != full:
            raise DisconnectedGraphError(set(range(graph.order)) - set(iter_bits(visited)))
        result = max(result, len(shells) - 1)
    return result


def bipartition(graph: Graph) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """The 2-colouring classes (part containing vertex 0 first), or None if an odd cycle exists"""
    colour: Dict[int, int] = {}
    rows = graph.rows
    for start in range(graph.order):
        if start in colour:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in iter_bits(rows[u]):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    side0 = frozenset(v for v, c in colour.items() if c == 0)
    side1 = frozenset(v for v, c in colour.items() if c == 1)
    return side0, side1


class FamilyKind(Enum):
    """Closed-form graph families"""
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    COMPLETE_BIPARTITE_MINUS_MATCHING = "complete_bipartite_minus_matching"
    COMPLETE_MULTIPARTITE = "complete_multipartite"
    CYCLE = "cycle"
    OTHER = "other"


@dataclass(frozen=True)
class FamilyTag:
    kind: FamilyKind
    params: Tuple[int, ...] = ()

    def __str__(self) -> str:
        p = self.params
        if self.kind == FamilyKind.COMPLETE:
            return f"K_{p[0]}"
        if self.kind == FamilyKind.COMPLETE_BIPARTITE:
            return f"K_{{{p[0]},{p[0]}}}"
        if self.kind == FamilyKind.COMPLETE_BIPARTITE_MINUS_MATCHING:
            return f"K_{{{p[0]},{p[0]}}}-{p[0]}K_2"
        if self.kind == FamilyKind.COMPLETE_MULTIPARTITE:
            return f"K_{{{p[0]}[{p[1]}]}}"
        if self.kind == FamilyKind.CYCLE:
            return f"C_{p[0]}"
        return "other"

    def to_json(self):
        return {"kind": self.kind.value, "params": list(self.params), "name": str(self)}


def _structural_family(graph: Graph) -> FamilyTag:
    order = graph.order
    k = graph.valency
    if k is None or order < 2 or not is_connected(graph):
        return FamilyTag(FamilyKind.OTHER)

    if k == order - 1:
        return FamilyTag(FamilyKind.COMPLETE, (order,))

    parts = bipartition(graph)
    if parts is not None and order % 2 == 0 and len(parts[0]) == order // 2:
        half = order // 2
        if k == half:
            return FamilyTag(FamilyKind.COMPLETE_BIPARTITE, (half,))
        if k == half - 1:
            near, far = mask_of(parts[0]), mask_of(parts[1])
            # Exactly one non-neighbour on the far side
            if all(((far if near >> v & 1 else near) & ~graph.rows[v]).bit_count() == 1
                   for v in range(order)):
                return FamilyTag(FamilyKind.COMPLETE_BIPARTITE_MINUS_MATCHING, (half,))

    # Non-adjacency (with reflexivity) as an equivalence relation
    full = (1 << order) - 1
    closed = [(full & ~row) for row in graph.rows]
    if all(closed[u] == closed[v] for u in range(order) for v in iter_bits(closed[u])):
        classes = {c for c in closed}
        t = order - k
        if len(classes) >= 3 and t >= 2 and all(c.bit_count() == t for c in classes):
            return FamilyTag(FamilyKind.COMPLETE_MULTIPARTITE, (len(classes), t))

    if k == 2:
        return FamilyTag(FamilyKind.CYCLE, (order,))
    return FamilyTag(FamilyKind.OTHER)


def _expected_from_subgroup(order: int, subgroup: Optional[FrozenSet[int]]) -> Optional[FamilyTag]:
    """Family forced by S = G minus H, if the complement H is a subgroup"""
    if subgroup is None:
        return None
    t = len(subgroup)
    m = order // t
    if t == 1:
        return FamilyTag(FamilyKind.COMPLETE, (order,))
    if m == 2:
        return FamilyTag(FamilyKind.COMPLETE_BIPARTITE, (t,))
    return FamilyTag(FamilyKind.COMPLETE_MULTIPARTITE, (m, t))


def recognize(graph: Graph) -> FamilyTag:
    """
    Structural family recognition.

    Cayley graphs additionally carry the complement-subgroup criterion:
    K_{n,n}, K_{m[t]} and K_{2n} arise exactly when G minus S is a subgroup.
    The two must agree.
    """
    tag = _structural_family(graph)
    complement_subgroup = getattr(graph, "complement_subgroup", None)
    if complement_subgroup is None or not is_connected(graph):
        return tag

    expected = _expected_from_subgroup(graph.order, complement_subgroup())
    closed_forms = (FamilyKind.COMPLETE, FamilyKind.COMPLETE_BIPARTITE, FamilyKind.COMPLETE_MULTIPARTITE)
    if expected is None and tag.kind in closed_forms:
        raise RecognitionError(f"structure says {tag} but the complement of S is not a subgroup")
    if expected is not None and expected != tag:
        raise RecognitionError(f"structure says {tag} but the complement subgroup gives {expected}")
    return tag


def find_twins(graph: Graph) -> List[Tuple[int, int]]:
    """All unordered pairs of distinct vertices with identical open neighbourhoods"""
    groups: Dict[int, List[int]] = {}
    for v, row in enumerate(graph.rows):
        groups.setdefault(row, []).append(v)
    pairs = []
    for members in groups.values():
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                pairs.append((x, y))
    return sorted(pairs)


def twin_classes(graph: Graph) -> List[Tuple[int, ...]]:
    """Equivalence classes of the twin relation (singletons included)"""
    groups: Dict[int, List[int]] = {}
    for v, row in enumerate(graph.rows):
        groups.setdefault(row, []).append(v)
    return sorted(tuple(members) for members in groups.values())
