"""
Quotient Command
Quotient by the central orbits {x, x a^(n/2)} with cover multiplicities.
"""

from typing import Any, Dict, Optional, Tuple

from sympy import isprime

from ..cayley import CayleyGraph, build_family, parse_connection_set
from ..config import Limits
from ..errors import FamilyParameterError
from ..permgroup import schreier_sims
from ..structure import central_orbit_partition, kernel_generator_table, quotient_with_cover_check


def _thm14_prime(graph: CayleyGraph) -> Optional[int]:
    """p when the graph is one of the thm14 graphs on D_8p"""
    n = graph.n
    if n % 4:
        return None
    p = n // 4
    if p < 3 or not isprime(p):
        return None
    try:
        candidates = [build_family("thm14", n, p=p, pi=pi) for pi in (0, 1)]
    except FamilyParameterError:
        return None
    return p if graph.S in candidates else None


class QuotientCommand:
    """
    Build the quotient graph on the central orbits.
    thm14 inputs also get the kernel transpositions and their group order.
    """

    CATEGORY = "Structure"
    NAME = "quotient"
    HELP = "quotient graph on the central orbits, with cover check"
    FUNCTION = "run"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("spec", help="connection set over an even n")

    def run(self, args, limits: Limits) -> Tuple[Dict[str, Any], int]:
        graph = CayleyGraph(parse_connection_set(args.spec))
        quotient = quotient_with_cover_check(graph, central_orbit_partition(graph))

        p = _thm14_prime(graph)
        if p is not None:
            table = kernel_generator_table(p)
            quotient.kernel_generators = list(table.values())
            quotient.kernel_order = schreier_sims(quotient.kernel_generators, degree=graph.order).order()

        report = quotient.to_json()
        report.update({"n": graph.n, "S": graph.S.tokens(), "thm14_p": p})
        return report, 0


# Command mappings for registration
COMMAND_CLASS_MAPPINGS = {
    "quotient": QuotientCommand,
}

COMMAND_DISPLAY_NAME_MAPPINGS = {
    "quotient": "Central Quotient",
}
