"""
Analysis Commands
classify, invariants and aut: one report per connection-set spec.
"""

import time
from typing import Any, Dict, Tuple

from ..aut_search import search_automorphisms
from ..cayley import CayleyGraph, ConnectionSet, is_connected, is_inner_automorphic, parse_connection_set
from ..config import Limits
from ..graph_metrics import bipartition, diameter, girth
from ..permgroup import is_2_distance_transitive, is_s_arc_transitive
from ..structure import classify

# Report fields, all present in every report
REPORT_FIELDS = (
    "n", "S", "connected", "inner_automorphic", "girth", "diameter", "bipartite", "valency",
    "classification", "aut_order", "aut_generators", "search_base", "search_nodes",
    "arc_transitive", "2_arc_transitive", "3_arc_transitive", "2_distance_transitive", "timings",
)


def analyze_connection_set(
    S: ConnectionSet,
    limits: Limits,
    with_aut: bool = True,
    with_classification: bool = True,
    timings: bool = True,
) -> Dict[str, Any]:
    """
    Build the report for Cay(D_2n, S).

    Raises:
        ResourceLimitError: automorphism search or s-arc enumeration hit a cap
    """
    started = time.perf_counter()
    report: Dict[str, Any] = dict.fromkeys(REPORT_FIELDS)
    graph = CayleyGraph(S)
    connected = is_connected(S)
    report.update({
        "n": S.n,
        "S": S.tokens(),
        "connected": connected,
        "inner_automorphic": is_inner_automorphic(S),
        "girth": girth(graph),
        "diameter": diameter(graph) if connected else None,
        "bipartite": bipartition(graph) is not None,
        "valency": graph.valency,
    })
    clock = {"invariants": time.perf_counter() - started}

    if with_aut:
        mark = time.perf_counter()
        result = search_automorphisms(graph, limits)
        aut = result.group
        clock["aut"] = time.perf_counter() - mark
        report.update({
            "aut_order": result.order.to_json(),
            "aut_generators": len(result.generators),
            "search_base": list(result.base),
            "search_nodes": result.nodes,
        })
        mark = time.perf_counter()
        report["arc_transitive"] = is_s_arc_transitive(graph, aut, 1, limits)
        report["2_arc_transitive"] = report["arc_transitive"] and is_s_arc_transitive(graph, aut, 2, limits)
        report["3_arc_transitive"] = report["2_arc_transitive"] and is_s_arc_transitive(graph, aut, 3, limits)
        report["2_distance_transitive"] = is_2_distance_transitive(graph, aut)
        clock["transitivity"] = time.perf_counter() - mark

        if with_classification:
            mark = time.perf_counter()
            outcome = classify(S.n, S, aut=aut, limits=limits)
            report["classification"] = outcome.to_json()
            clock["classify"] = time.perf_counter() - mark

    clock["total"] = time.perf_counter() - started
    report["timings"] = {k: round(v, 4) for k, v in clock.items()} if timings else None
    return report


class _SpecCommand:
    """Shared argument handling for commands that take one spec"""

    CATEGORY = "Analysis"
    FUNCTION = "run"
    WITH_AUT = True
    WITH_CLASSIFICATION = True

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("spec", help='connection set, e.g. "n=12; S=family(thm14, p=3, pi=1)"')

    def run(self, args, limits: Limits) -> Tuple[Dict[str, Any], int]:
        S = parse_connection_set(args.spec)
        report = analyze_connection_set(
            S, limits,
            with_aut=self.WITH_AUT,
            with_classification=self.WITH_CLASSIFICATION,
            timings=not args.no_timings,
        )
        return report, 0


class ClassifyCommand(_SpecCommand):
    """Full report: invariants, automorphism group, transitivity and classification"""
    NAME = "classify"
    HELP = "classify an inner-automorphic dihedrant"


class InvariantsCommand(_SpecCommand):
    """Invariants only; no automorphism search"""
    NAME = "invariants"
    HELP = "connectivity, girth, diameter, bipartiteness, valency"
    WITH_AUT = False
    WITH_CLASSIFICATION = False


class AutCommand(_SpecCommand):
    """Invariants, automorphism group and transitivity flags"""
    NAME = "aut"
    HELP = "automorphism group order and transitivity"
    WITH_CLASSIFICATION = False


# Command mappings for registration
COMMAND_CLASS_MAPPINGS = {
    "classify": ClassifyCommand,
    "invariants": InvariantsCommand,
    "aut": AutCommand,
}

COMMAND_DISPLAY_NAME_MAPPINGS = {
    "classify": "Classify Dihedrant",
    "invariants": "Graph Invariants",
    "aut": "Automorphism Group",
}
