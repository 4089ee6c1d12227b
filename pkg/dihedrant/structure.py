"""
Structure
Classification of inner-automorphic dihedrants, case (v) checks and the central quotient machinery.
"""

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .aut_search import automorphism_group
from .cayley import (
    CayleyGraph,
    ConnectionSet,
    case_v_set,
    complement_subgroup,
    is_connected,
    is_inner_automorphic,
)
from .config import DEFAULT_LIMITS, Limits
from .dihedral_core import (
    DihedralElement,
    DihedralGroup,
    GroupAutomorphism,
    conjugacy_class,
    format_element,
    right_regular,
)
from .errors import (
    DihedrantError,
    NonInvariantPartitionError,
    ResourceLimitError,
    VerificationReport,
)
from .graph_metrics import FamilyTag, Graph, bipartition, diameter, distance_partition, girth, recognize
from .permgroup import (
    BlockSystem,
    FactoredInteger,
    Permutation,
    PermutationGroup,
    induced_action,
    is_normal,
    is_primitive,
    is_regular_on,
    is_transitive_on_arcs,
    restriction,
    schreier_sims,
    sign_kernel,
)

logger = logging.getLogger(__name__)


class OutcomeKind(Enum):
    DISCONNECTED = "Disconnected"
    NOT_INNER_AUTOMORPHIC = "NotInnerAutomorphic"
    CASE_I = "CaseI"
    CASE_II = "CaseII"
    CASE_III = "CaseIII"
    CASE_IV = "CaseIV"
    CASE_V = "CaseV"
    NOT_ARC_TRANSITIVE = "NotArcTransitive"
    UNCLASSIFIED_ARC_TRANSITIVE = "UnclassifiedArcTransitive"


CLOSED_FORM_CASES = frozenset({OutcomeKind.CASE_I, OutcomeKind.CASE_II, OutcomeKind.CASE_III, OutcomeKind.CASE_IV})
LISTED_CASES = CLOSED_FORM_CASES | {OutcomeKind.CASE_V}


@dataclass(frozen=True)
class ClassificationOutcome:
    kind: OutcomeKind
    variant: Optional[int] = None
    m: Optional[int] = None
    t: Optional[int] = None
    pi: Optional[int] = None
    delta: Tuple[DihedralElement, ...] = ()
    arc_transitive: Optional[bool] = None
    aut_order: Optional[FactoredInteger] = field(default=None, compare=False)

    @property
    def is_listed_case(self) -> bool:
        return self.kind in LISTED_CASES

    @property
    def is_closed_form(self) -> bool:
        return self.kind in CLOSED_FORM_CASES

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "variant": self.variant,
            "m": self.m,
            "t": self.t,
            "pi": self.pi,
            "delta": [format_element(x) for x in self.delta] if self.kind == OutcomeKind.CASE_V else None,
            "arc_transitive": self.arc_transitive,
        }

    def __str__(self) -> str:
        if self.kind == OutcomeKind.CASE_I:
            return f"CaseI{{variant={self.variant}}}"
        if self.kind == OutcomeKind.CASE_II:
            return f"CaseII{{variant={self.variant}}}"
        if self.kind == OutcomeKind.CASE_IV:
            return f"CaseIV{{m={self.m},t={self.t}}}"
        if self.kind == OutcomeKind.CASE_V:
            delta = ",".join(format_element(x) for x in self.delta)
            return f"CaseV{{pi={self.pi},delta={{{delta}}},arc_transitive={self.arc_transitive}}}"
        return self.kind.value


def case_v_shape(S: ConnectionSet) -> Optional[Tuple[int, Tuple[DihedralElement, ...]]]:
    """(pi, delta) when (a^pi b)^G <= S <= (a^pi b)^G + <a^2>a with 0 < |delta| <= k - 2"""
    n = S.n
    if n % 2:
        return None
    k = n // 2
    reflections = set(S.reflections())
    rotations = S.rotations()
    for pi in (0, 1):
        if reflections == set(conjugacy_class(DihedralElement(pi, 1), n).members):
            break
    else:
        return None
    if any(x.rot % 2 == 0 for x in rotations):
        return None
    if not 0 < len(rotations) <= k - 2:
        return None
    return pi, tuple(sorted(rotations))


def _case_ii_variant(S: ConnectionSet) -> Optional[int]:
    n = S.n
    k = n // 2
    if n % 2 or k < 3 or k % 2 == 0:
        return None
    central = DihedralElement(k, 0)
    if central in S:
        return None
    odd_rotations = {DihedralElement(i, 0) for i in range(1, n, 2)} - {central}
    if set(S.rotations()) != odd_rotations:
        return None
    for variant, parity in ((1, 0), (2, 1)):
        if set(S.reflections()) == set(conjugacy_class(DihedralElement(parity, 1), n).members):
            return variant
    return None


def classify(
    n: int,
    S: ConnectionSet,
    aut: Optional[PermutationGroup] = None,
    limits: Optional[Limits] = None,
) -> ClassificationOutcome:
    """
    Match S against the classification cases in a fixed order:
    connectivity, class closure, (iii), (i), (iv), (ii), (v), then an
    automorphism-based arc-transitivity test for anything left over.
    """
    if S.n != n:
        raise DihedrantError(f"connection set is over n={S.n}, expected n={n}")
    limits = limits or DEFAULT_LIMITS

    if not is_connected(S):
        return ClassificationOutcome(OutcomeKind.DISCONNECTED)
    if not is_inner_automorphic(S):
        return ClassificationOutcome(OutcomeKind.NOT_INNER_AUTOMORPHIC)

    H = complement_subgroup(S)
    if H is not None:
        t = len(H)
        if t == 1:
            return ClassificationOutcome(OutcomeKind.CASE_III)
        if 2 * n // t == 2:
            if all(not x.refl for x in H):
                variant = 1
            elif DihedralElement(0, 1) in S:
                variant = 2
            else:
                variant = 3
            return ClassificationOutcome(OutcomeKind.CASE_I, variant=variant)
        if all(not x.refl for x in H):
            return ClassificationOutcome(OutcomeKind.CASE_IV, m=2 * n // t, t=t)

    variant = _case_ii_variant(S)
    if variant is not None:
        return ClassificationOutcome(OutcomeKind.CASE_II, variant=variant)

    graph = CayleyGraph(S)
    if aut is None:
        aut = automorphism_group(graph, limits)
    arc_transitive = is_transitive_on_arcs(graph, aut, limits)

    shape = case_v_shape(S)
    if shape is not None:
        pi, delta = shape
        return ClassificationOutcome(
            OutcomeKind.CASE_V, pi=pi, delta=delta, arc_transitive=arc_transitive, aut_order=aut.order(),
        )
    if arc_transitive:
        logger.error("arc-transitive inner-automorphic set outside every listed case: %s", S)
        return ClassificationOutcome(OutcomeKind.UNCLASSIFIED_ARC_TRANSITIVE, arc_transitive=True, aut_order=aut.order())
    return ClassificationOutcome(OutcomeKind.NOT_ARC_TRANSITIVE, arc_transitive=False, aut_order=aut.order())


def bipartition_subgroup(n: int, pi: int) -> frozenset:
    """<a^2, a^(1-pi) b>, the part of a case (v) graph containing the identity"""
    return DihedralGroup(n).subgroup([DihedralElement(2 % n, 0), DihedralElement((1 - pi) % n, 1)])


def verify_case_v(graph: CayleyGraph) -> VerificationReport:
    """Girth, diameter, bipartition and the second and third distance shells of a case (v) graph"""
    report = VerificationReport("case_v")
    shape = case_v_shape(graph.S)
    if shape is None:
        report.add("case_v_shape", False, f"{graph.S} does not have the case (v) shape")
        return report
    pi, delta = shape
    n = graph.n
    report.data.update({"n": n, "pi": pi, "delta": [format_element(x) for x in delta]})
    report.add("case_v_shape", True)

    report.expect_equal("girth", girth(graph), 4)
    report.expect_equal("diameter", diameter(graph), 3)

    H = bipartition_subgroup(n, pi)
    parts = bipartition(graph)
    if parts is None:
        report.add("bipartition", False, "graph has an odd cycle")
    else:
        report.expect_same_set("bipartition", graph.elements_of(parts[0]), H, fmt=format_element)

    shells = distance_partition(graph, 0)
    rotations_even = {DihedralElement(i, 0) for i in range(2, n, 2)}
    gamma2 = set(conjugacy_class(DihedralElement(1 - pi, 1), n).members) | rotations_even
    gamma3 = {DihedralElement(i, 0) for i in range(1, n, 2)} - set(graph.S.elements())
    report.expect_same_set("gamma2", graph.elements_of(shells.shell(2)), gamma2, fmt=format_element)
    report.expect_same_set("gamma3", graph.elements_of(shells.shell(3)), gamma3, fmt=format_element)
    report.data["shell_sizes"] = shells.sizes
    return report


def central_orbit_partition(graph: CayleyGraph) -> BlockSystem:
    """
    Cells {x, x a^(n/2)}. When 4 | n the cells split into an odd side
    (rotation exponent odd) and an even side.
    """
    n = graph.n
    if n % 2:
        raise DihedrantError(f"central orbit partition needs n even, got n={n}")
    shift = right_regular(DihedralElement(n // 2, 0), n)
    cells = {frozenset((v, shift[v])) for v in range(2 * n)}
    blocks = BlockSystem.from_cells(cells)
    if n % 4:
        return blocks
    odd = tuple(i for i, c in enumerate(blocks.cells) if graph.element(min(c)).rot % 2 == 1)
    even = tuple(i for i, c in enumerate(blocks.cells) if graph.element(min(c)).rot % 2 == 0)
    return BlockSystem(blocks.cells, (odd, even))


@dataclass
class QuotientReport:
    """Quotient graph on the cells with cover multiplicities"""
    blocks: BlockSystem
    quotient: Graph
    multiplicities: Dict[Tuple[int, int], Tuple[int, ...]]
    r: Optional[int]
    inner_edges: bool
    family: FamilyTag
    kernel_generators: List[Permutation] = field(default_factory=list)
    kernel_order: Optional[FactoredInteger] = None

    @property
    def is_cover(self) -> bool:
        return self.r is not None and not self.inner_edges

    def to_json(self) -> Dict[str, Any]:
        return {
            "blocks": self.blocks.to_json(),
            "quotient_order": self.quotient.order,
            "quotient_valency": self.quotient.valency,
            "quotient_family": self.family.to_json(),
            "r": self.r,
            "inner_edges": self.inner_edges,
            "multiplicities": sorted({m for values in self.multiplicities.values() for m in values}),
            "kernel_generators": [p.to_json() for p in self.kernel_generators],
            "kernel_order": None if self.kernel_order is None else self.kernel_order.to_json(),
        }


def quotient_with_cover_check(
    graph: Graph,
    blocks: BlockSystem,
    group: Optional[PermutationGroup] = None,
) -> QuotientReport:
    """
    Build the quotient graph and the per-edge counts |Γ(u) ∩ B_j|.

    Raises:
        NonInvariantPartitionError: partition not preserved by the given group
            (R(G) for Cayley graphs)
    """
    if group is None and isinstance(graph, CayleyGraph):
        group = graph.group.right_regular_group()
    if group is not None and not blocks.is_invariant(group.generators):
        raise NonInvariantPartitionError("partition is not invariant under the acting group")

    m = len(blocks.cells)
    incidence = np.zeros((graph.order, m), dtype=np.int64)
    for j, cell in enumerate(blocks.cells):
        incidence[list(cell), j] = 1
    counts = graph.adjacency_matrix() @ incidence

    inner_edges = any(counts[u, blocks.cell_of(u)] > 0 for u in range(graph.order))
    rows = [0] * m
    multiplicities: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for i, cell in enumerate(blocks.cells):
        members = sorted(cell)
        for j in range(m):
            if i == j or not counts[members, j].any():
                continue
            rows[i] |= 1 << j
            if i < j:
                seen = {int(c) for c in counts[members, j]} | {int(c) for c in counts[sorted(blocks.cells[j]), i]}
                multiplicities[(i, j)] = tuple(sorted(seen))

    values = {v for seen in multiplicities.values() for v in seen}
    r = values.pop() if len(values) == 1 else None
    quotient = Graph(rows, check=False)
    return QuotientReport(
        blocks=blocks,
        quotient=quotient,
        multiplicities=multiplicities,
        r=r,
        inner_edges=inner_edges,
        family=recognize(quotient),
    )


def kernel_generator_table(p: int) -> Dict[str, Permutation]:
    """alpha_t, beta_t, gamma_t, delta_t for t = 1..p on D_8p's vertex indexing"""
    n = 4 * p
    degree = 2 * n
    table: Dict[str, Permutation] = {}
    for t in range(1, p + 1):
        odd, odd_partner = (2 * t + 1) % n, (2 * p + 2 * t + 1) % n
        even, even_partner = (2 * t) % n, (2 * p + 2 * t) % n
        table[f"alpha_{t}"] = Permutation.transposition(degree, n + odd, n + odd_partner)
        table[f"beta_{t}"] = Permutation.transposition(degree, odd, odd_partner)
        table[f"gamma_{t}"] = Permutation.transposition(degree, n + even, n + even_partner)
        table[f"delta_{t}"] = Permutation.transposition(degree, even, even_partner)
    return table


def kernel_generators(p: int) -> List[Permutation]:
    return list(kernel_generator_table(p).values())


def thm14_aut_order(p: int) -> FactoredInteger:
    """2^(4p) * (2p)! * 2"""
    return FactoredInteger.from_dict({2: 4 * p + 1}) * FactoredInteger.factorial(2 * p)


def thm14_stabilizer_order(p: int) -> FactoredInteger:
    """2^(4p-1) * (2p-1)!"""
    return FactoredInteger.from_dict({2: 4 * p - 1}) * FactoredInteger.factorial(2 * p - 1)


def _require_thm14_graph(graph: CayleyGraph, p: int):
    if graph.n != 4 * p:
        raise DihedrantError(f"expected a graph on D_{8 * p}, got D_{2 * graph.n}")


def verify_kernel(
    graph: CayleyGraph,
    p: int,
    aut: Optional[PermutationGroup] = None,
    limits: Optional[Limits] = None,
) -> VerificationReport:
    """The 4p transpositions: automorphisms, elementary abelian of order 2^(4p), product R(a^2p), kernel of the cell action"""
    _require_thm14_graph(graph, p)
    report = VerificationReport("kernel")
    table = kernel_generator_table(p)
    gens = list(table.values())

    bad = [name for name, g in table.items() if not graph.is_automorphism(g)]
    report.add("automorphisms", not bad, f"not automorphisms: {', '.join(bad)}" if bad else None)

    K = schreier_sims(gens, degree=graph.order)
    report.expect_equal("order", str(K.order()), str(FactoredInteger.from_dict({2: 4 * p})))
    involutions = all(g.order() == 2 for g in gens)
    commuting = all(g * h == h * g for g in gens for h in gens)
    report.add("elementary_abelian", involutions and commuting)

    product = Permutation.identity(graph.order)
    for t in range(1, p + 1):
        for name in ("alpha", "beta", "gamma", "delta"):
            product = product * table[f"{name}_{t}"]
    report.add("product_is_central_translation", product == right_regular(DihedralElement(2 * p, 0), graph.n))

    blocks = central_orbit_partition(graph)
    fixes_cells = all(blocks.is_invariant([g]) and all(g[min(c)] in c for c in blocks.cells) for g in gens)
    aut = aut or automorphism_group(graph, limits)
    image = induced_action(aut, blocks)
    image_order = image.order()
    quotient_order = aut.order() / image_order if image_order.divides(aut.order()) else None
    report.add("inside_kernel", fixes_cells)
    report.expect_equal("kernel_order_matches_action", str(quotient_order), str(K.order()))
    report.data["kernel_order"] = K.order().to_json()
    report.data["action_order"] = image_order.to_json()
    return report


def _side_sign(blocks: BlockSystem) -> Callable[[Sequence[int]], int]:
    odd = set(blocks.sides[0])

    def sign(g: Sequence[int]) -> int:
        image = {g[i] for i in odd}
        if image == odd:
            return 0
        if not image & odd:
            return 1
        raise NonInvariantPartitionError("cell action does not preserve the two sides")
    return sign


def verify_quotient_group_structure(
    graph: CayleyGraph,
    p: int,
    aut: Optional[PermutationGroup] = None,
    limits: Optional[Limits] = None,
) -> VerificationReport:
    """Action on the cells: order 2 (2p)!, side-preserving half is S_2p acting primitively on each side"""
    _require_thm14_graph(graph, p)
    report = VerificationReport("quotient_group")
    aut = aut or automorphism_group(graph, limits)
    blocks = central_orbit_partition(graph)
    image = induced_action(aut, blocks)
    factorial = FactoredInteger.factorial(2 * p)
    report.expect_equal("action_order", str(image.order()), str(factorial * 2))

    try:
        plus = sign_kernel(image, _side_sign(blocks))
    except NonInvariantPartitionError as e:
        report.add("sides_preserved_or_swapped", False, str(e))
        return report
    report.add("sides_preserved_or_swapped", True)
    report.expect_equal("side_preserving_order", str(plus.order()), str(factorial))

    odd_cells = list(blocks.sides[0])
    plus_odd = restriction(plus, odd_cells)
    report.expect_equal("side_degree", plus_odd.degree, 2 * p)
    report.expect_equal("side_action_order", str(plus_odd.order()), str(factorial))
    report.add("side_action_primitive", is_primitive(plus_odd))

    # R(<a^2, b>) acts on the odd side through D_2p
    n = graph.n
    regular = PermutationGroup(
        [right_regular(DihedralElement(2, 0), n), right_regular(DihedralElement(0, 1), n)], degree=graph.order
    )
    regular_odd = restriction(induced_action(regular, blocks), odd_cells)
    rotation, flip = regular_odd.generators if len(regular_odd.generators) == 2 else (None, None)
    dihedral = (
        rotation is not None
        and rotation.order() == p
        and flip.order() == 2
        and flip * rotation * flip == rotation.inverse()
    )
    report.add("regular_subgroup_regular", is_regular_on(regular_odd))
    report.expect_equal("regular_subgroup_order", regular_odd.order_int(), 2 * p)
    report.add("regular_subgroup_dihedral", dihedral)
    report.add("regular_subgroup_contained", all(plus_odd.contains(g) for g in regular_odd.generators))

    K = schreier_sims(kernel_generators(p), degree=graph.order)
    report.expect_equal("order_factorization", str(aut.order()), str(K.order() * image.order()))
    report.data["side_action_order"] = plus_odd.order().to_json()
    return report


def is_normal_cayley(graph: CayleyGraph, aut: PermutationGroup) -> bool:
    """R(G) normal in the full automorphism group"""
    return is_normal(graph.group.right_regular_group(), aut)


# Case (v) scan

def case_v_candidates(n: int) -> List[Tuple[DihedralElement, ...]]:
    """
    Nonempty class-closed Δ inside the odd rotations with |Δ| <= k - 2,
    in order of increasing number of classes, then lexicographically.
    """
    if n % 2:
        raise DihedrantError(f"case (v) needs n even, got n={n}")
    k = n // 2
    classes = [(DihedralElement(j, 0), DihedralElement(n - j, 0)) for j in range(1, k, 2)]
    if k % 2:
        classes.append((DihedralElement(k, 0),))
    candidates = []
    for size in range(1, len(classes) + 1):
        for combo in combinations(classes, size):
            members = tuple(sorted(x for cls in combo for x in cls))
            if len(members) <= k - 2:
                candidates.append(members)
    return candidates


@dataclass
class CaseVScanResult:
    n: int
    pi: int
    delta: Tuple[DihedralElement, ...]
    connected: bool
    arc_transitive: Optional[bool] = None
    aut_order: Optional[FactoredInteger] = None
    girth: Optional[int] = None
    diameter: Optional[int] = None
    pi0_equivalent: Optional[bool] = None
    error: Optional[str] = None
    elapsed: Optional[float] = None

    @property
    def key(self) -> Tuple[int, int, Tuple[str, ...]]:
        return self.n, self.pi, tuple(format_element(x) for x in self.delta)

    def to_record(self, timings: bool = True) -> Dict[str, Any]:
        return {
            "n": self.n,
            "pi": self.pi,
            "delta": [format_element(x) for x in self.delta],
            "connected": self.connected,
            "arc_transitive": self.arc_transitive,
            "aut_order": None if self.aut_order is None else self.aut_order.to_json(),
            "girth": self.girth,
            "diameter": self.diameter,
            "pi0_equivalent": self.pi0_equivalent,
            "error": self.error,
            "elapsed": round(self.elapsed, 3) if timings and self.elapsed is not None else None,
        }


def evaluate_case_v_candidate(n: int, delta: Sequence[DihedralElement], limits: Optional[Limits] = None) -> CaseVScanResult:
    """Build S = (ab)^G + Δ and test it; resource errors are captured, not raised"""
    started = time.perf_counter()
    limits = limits or DEFAULT_LIMITS
    S = case_v_set(n, 1, delta)
    result = CaseVScanResult(n=n, pi=1, delta=tuple(delta), connected=is_connected(S))
    # The pi = 0 set maps onto this one under theta_a
    result.pi0_equivalent = case_v_set(n, 0, delta).image(GroupAutomorphism.theta(1, n)) == S
    if result.connected:
        graph = CayleyGraph(S)
        try:
            aut = automorphism_group(graph, limits)
            result.aut_order = aut.order()
            result.arc_transitive = is_transitive_on_arcs(graph, aut, limits)
            result.girth = girth(graph)
            result.diameter = diameter(graph)
        except ResourceLimitError as e:
            result.error = str(e)
            logger.warning("n=%d delta=%s: %s", n, [format_element(x) for x in delta], e)
    result.elapsed = time.perf_counter() - started
    return result


def _evaluate_packed(args: Tuple[int, Tuple[DihedralElement, ...], Limits]) -> CaseVScanResult:
    return evaluate_case_v_candidate(*args)


def scan_case_v(
    n: int,
    limits: Optional[Limits] = None,
    mapper: Optional[Callable[[Callable, Iterable], Iterable]] = None,
    skip: Optional[Iterable[Tuple[int, int, Tuple[str, ...]]]] = None,
) -> List[CaseVScanResult]:
    """
    Evaluate every case (v) candidate for n with pi = 1.

    Args:
        n: Even n, at most limits.scan_max_n
        limits: Search caps
        mapper: Order-preserving map (e.g. a process pool's map); serial when absent
        skip: Keys (n, pi, delta tokens) already evaluated

    Returns:
        Results in enumeration order
    """
    limits = limits or DEFAULT_LIMITS
    if n > limits.scan_max_n:
        raise DihedrantError(f"n={n} exceeds the scan limit {limits.scan_max_n}")
    skip = set(skip or ())
    jobs = []
    for delta in case_v_candidates(n):
        key = (n, 1, tuple(format_element(x) for x in delta))
        if key not in skip:
            jobs.append((n, delta, limits))
    logger.info("scan n=%d: %d candidates to evaluate", n, len(jobs))
    mapper = mapper or map
    return list(mapper(_evaluate_packed, jobs))
