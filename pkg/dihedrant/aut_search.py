"""
Automorphism Search
Full automorphism groups by individualization-refinement backtracking.

The search follows one path to a discrete partition, then works from the
deepest level up: at each level it looks for an automorphism sending the
individualized vertex to each other vertex of its cell, skipping vertices
already in the orbit of the generators found so far. The generators and
the path form a base and strong generating set.
"""

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .config import DEFAULT_LIMITS, Limits
from .errors import DegreeMismatchError, ResourceLimitError
from .graph_metrics import Graph, mask_of
from .permgroup import FactoredInteger, Permutation, PermutationGroup, orbit

logger = logging.getLogger(__name__)

Cells = Tuple[Tuple[int, ...], ...]
Trace = Tuple[Tuple[int, Tuple[int, ...], Tuple[int, ...]], ...]


@dataclass(frozen=True)
class ColoredPartition:
    """Ordered partition of the vertices into cells"""
    cells: Cells

    @classmethod
    def unit(cls, order: int) -> "ColoredPartition":
        return cls((tuple(range(order)),) if order else ())

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]]) -> "ColoredPartition":
        return cls(tuple(tuple(c) for c in cells))

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    @property
    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    def cell_of(self) -> Dict[int, int]:
        return {v: i for i, cell in enumerate(self.cells) for v in cell}

    def as_sets(self) -> List[frozenset]:
        return [frozenset(c) for c in self.cells]

    def target_cell(self) -> Optional[int]:
        return _target_cell(self.cells)

    def is_equitable(self, graph: Graph) -> bool:
        masks = [mask_of(c) for c in self.cells]
        rows = graph.rows
        for cell in self.cells:
            for m in masks:
                if len({(rows[v] & m).bit_count() for v in cell}) > 1:
                    return False
        return True


def _target_cell(cells: Cells) -> Optional[int]:
    """Leftmost smallest non-singleton cell"""
    best, best_size = None, None
    for i, cell in enumerate(cells):
        size = len(cell)
        if size > 1 and (best_size is None or size < best_size):
            best, best_size = i, size
            if size == 2:
                break
    return best


def _refine(rows: Sequence[int], cells_in: Cells, splitters: Sequence[int]) -> Tuple[Cells, Trace]:
    """
    Split cells by neighbour counts into splitter cells until stable.
    Fragments are ordered by count and stay where their parent was.
    """
    cells: Dict[int, List[int]] = {i: list(c) for i, c in enumerate(cells_in)}
    order = list(range(len(cells_in)))
    next_id = len(cells_in)
    queue = deque(splitters)
    queued = set(queue)
    trace = []

    while queue:
        sid = queue.popleft()
        queued.discard(sid)
        smask = mask_of(cells[sid])
        new_order = []
        for cid in order:
            members = cells[cid]
            if len(members) == 1:
                new_order.append(cid)
                continue
            groups: Dict[int, List[int]] = {}
            for v in members:
                groups.setdefault((rows[v] & smask).bit_count(), []).append(v)
            if len(groups) == 1:
                new_order.append(cid)
                continue
            counts = sorted(groups)
            trace.append((len(new_order), tuple(counts), tuple(len(groups[c]) for c in counts)))
            fragments = [cid]
            cells[cid] = groups[counts[0]]
            for c in counts[1:]:
                cells[next_id] = groups[c]
                fragments.append(next_id)
                next_id += 1
            new_order.extend(fragments)
            for fid in fragments:
                if fid not in queued:
                    queue.append(fid)
                    queued.add(fid)
        order = new_order

    return tuple(tuple(cells[c]) for c in order), tuple(trace)


def refine(graph: Graph, partition: ColoredPartition) -> ColoredPartition:
    """Coarsest equitable refinement of the partition"""
    cells, _ = _refine(graph.rows, partition.cells, range(len(partition.cells)))
    return ColoredPartition(cells)


def _individualize(cells: Cells, index: int, v: int) -> Cells:
    rest = tuple(x for x in cells[index] if x != v)
    return cells[:index] + ((v,), rest) + cells[index + 1:]


@dataclass
class SearchResult:
    """Automorphism group with search statistics"""
    group: PermutationGroup
    base: List[int]
    orbit_sizes: List[int]
    nodes: int
    elapsed: float = 0.0
    generators: List[Permutation] = field(default_factory=list)

    @property
    def order(self) -> FactoredInteger:
        return FactoredInteger.product(self.orbit_sizes)


class AutomorphismSearch:
    """One search over one graph; not shared between threads"""

    def __init__(self, graph: Graph, limits: Limits = DEFAULT_LIMITS):
        self.graph = graph
        self.rows = graph.rows
        self.node_cap = limits.node_cap
        self.nodes = 0
        self.base: List[int] = []
        self.targets: List[int] = []
        self.traces: List[Trace] = []
        self.path: List[Cells] = []
        self.leaf: List[int] = []

    def _count_node(self):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise ResourceLimitError("search node", self.nodes, self.node_cap)

    def _descend(self, cells: Cells, index: int, v: int) -> Tuple[Cells, Trace]:
        self._count_node()
        return _refine(self.rows, _individualize(cells, index, v), [index])

    def _first_path(self):
        cells, _ = _refine(self.rows, ColoredPartition.unit(self.graph.order).cells, [0] if self.graph.order else [])
        self.path = [cells]
        while True:
            index = _target_cell(cells)
            if index is None:
                break
            v = cells[index][0]
            cells, trace = self._descend(cells, index, v)
            self.base.append(v)
            self.targets.append(index)
            self.traces.append(trace)
            self.path.append(cells)
        self.leaf = [cell[0] for cell in cells]

    def _leaf_map(self, cells: Cells) -> Optional[Tuple[int, ...]]:
        gamma = [0] * self.graph.order
        for position, cell in enumerate(cells):
            gamma[self.leaf[position]] = cell[0]
        if self.graph.is_automorphism(gamma):
            return tuple(gamma)
        return None

    def _matches(self, cells: Cells, trace: Trace, level: int) -> bool:
        return trace == self.traces[level] and len(cells) == len(self.path[level + 1])

    def _search_below(self, level: int, w: int) -> Optional[Tuple[int, ...]]:
        """An automorphism fixing base[:level] and sending base[level] to w, if any"""
        depth = len(self.base)
        cells, trace = self._descend(self.path[level], self.targets[level], w)
        if not self._matches(cells, trace, level):
            return None
        if level + 1 == depth:
            return self._leaf_map(cells)

        stack = [(cells, level + 1, iter(cells[self.targets[level + 1]]))]
        while stack:
            current, lvl, candidates = stack[-1]
            u = next(candidates, None)
            if u is None:
                stack.pop()
                continue
            child, trace = self._descend(current, self.targets[lvl], u)
            if not self._matches(child, trace, lvl):
                continue
            if lvl + 1 == depth:
                gamma = self._leaf_map(child)
                if gamma is not None:
                    return gamma
                continue
            stack.append((child, lvl + 1, iter(child[self.targets[lvl + 1]])))
        return None

    def run(self) -> SearchResult:
        started = time.perf_counter()
        self._first_path()
        gens: List[Tuple[int, ...]] = []
        orbit_sizes = [1] * len(self.base)

        for level in reversed(range(len(self.base))):
            cell = self.path[level][self.targets[level]]
            reached = set(orbit(gens, self.base[level]))
            failed = set()
            for w in cell:
                if w in reached or w in failed:
                    continue
                gamma = self._search_below(level, w)
                if gamma is not None:
                    gens.append(gamma)
                    reached = set(orbit(gens, self.base[level]))
                else:
                    failed |= orbit(gens, w)
            orbit_sizes[level] = len(reached)
            logger.debug("level %d: base point %d, orbit %d, nodes %d",
                         level, self.base[level], len(reached), self.nodes)

        group = PermutationGroup.from_bsgs(self.graph.order, gens, self.base)
        elapsed = time.perf_counter() - started
        logger.info("automorphism search: %d vertices, order %s, %d generators, %d nodes, %.2fs",
                    self.graph.order, FactoredInteger.product(orbit_sizes), len(gens), self.nodes, elapsed)
        return SearchResult(
            group=group,
            base=list(self.base),
            orbit_sizes=orbit_sizes,
            nodes=self.nodes,
            elapsed=elapsed,
            generators=[Permutation(g, check=False) for g in gens],
        )


def search_automorphisms(graph: Graph, limits: Optional[Limits] = None) -> SearchResult:
    return AutomorphismSearch(graph, limits or DEFAULT_LIMITS).run()


def automorphism_group(graph: Graph, limits: Optional[Limits] = None) -> PermutationGroup:
    """
    Full automorphism group of the graph.

    Raises:
        ResourceLimitError: search exceeded limits.node_cap nodes
    """
    return search_automorphisms(graph, limits).group


def verify_automorphism(graph: Graph, perm: Sequence[int]) -> bool:
    if len(perm) != graph.order:
        raise DegreeMismatchError(graph.order, len(perm))
    return graph.is_automorphism(perm)
