"""
Cayley Graphs
Connection sets on D_2n, the connection-set DSL, named families and Cayley graph construction.
"""

import logging
from math import gcd
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime

from .config import MAX_VERTICES
from .dihedral_core import (
    DihedralElement,
    DihedralGroup,
    GroupAutomorphism,
    IDENTITY,
    conjugacy_class,
    element_at,
    format_element,
    inverse,
    inversion_permutation,
    left_regular,
    mul,
    parse_element,
)
from .errors import ConnectionSetError, DSLParseError, FamilyParameterError
from .graph_metrics import Graph, iter_bits

logger = logging.getLogger(__name__)


class ConnectionSet:
    """
    Inverse-closed, identity-free subset of D_2n stored as a bitset over vertex indices.
    Equality and hashing use (n, bitset).
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int):
        if n < 2:
            raise ConnectionSetError(f"n must be at least 2, got {n}")
        if 2 * n > MAX_VERTICES:
            raise ConnectionSetError(f"2n = {2 * n} exceeds the vertex limit {MAX_VERTICES}")
        if mask >> (2 * n):
            raise ConnectionSetError("members outside D_2n")
        if mask & 1:
            raise ConnectionSetError("connection set contains the identity")
        self.n = n
        self.mask = mask
        for x in self.elements():
            if not mask >> inverse(x, n).index(n) & 1:
                raise ConnectionSetError(f"not inverse-closed: {format_element(x)} present, inverse missing")

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[DihedralElement], close_inverses: bool = False) -> "ConnectionSet":
        mask = 0
        for x in elements:
            x = DihedralElement(x.rot % n, x.refl)
            mask |= 1 << x.index(n)
            if close_inverses:
                mask |= 1 << inverse(x, n).index(n)
        return cls(n, mask)

    def elements(self) -> List[DihedralElement]:
        return [element_at(v, self.n) for v in iter_bits(self.mask)]

    def indices(self) -> List[int]:
        return list(iter_bits(self.mask))

    def reflections(self) -> List[DihedralElement]:
        return [x for x in self.elements() if x.refl]

    def rotations(self) -> List[DihedralElement]:
        return [x for x in self.elements() if not x.refl]

    def tokens(self) -> List[str]:
        return [format_element(x) for x in self.elements()]

    def image(self, phi: GroupAutomorphism) -> "ConnectionSet":
        return ConnectionSet.from_elements(self.n, (phi.apply(x) for x in self.elements()))

    def union(self, other: "ConnectionSet") -> "ConnectionSet":
        if other.n != self.n:
            raise ConnectionSetError("cannot combine connection sets over different n")
        return ConnectionSet(self.n, self.mask | other.mask)

    def to_dsl(self) -> str:
        return f"n={self.n}; S=raw({','.join(self.tokens())})"

    def __contains__(self, x: DihedralElement) -> bool:
        return bool(self.mask >> x.index(self.n) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[DihedralElement]:
        return iter(self.elements())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConnectionSet):
            return NotImplemented
        return self.n == other.n and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"ConnectionSet(n={self.n}, {{{', '.join(self.tokens())}}})"


def from_class_reps(n: int, reps: Sequence[DihedralElement]) -> ConnectionSet:
    """Union of the classes of each rep and of its inverse"""
    members = set()
    for rep in reps:
        rep = DihedralElement(rep.rot % n, rep.refl)
        if rep == IDENTITY:
            raise ConnectionSetError("identity cannot be a class representative")
        members |= conjugacy_class(rep, n).members
        members |= conjugacy_class(inverse(rep, n), n).members
    return ConnectionSet.from_elements(n, members)


def raw_connection_set(n: int, elements: Sequence[DihedralElement]) -> ConnectionSet:
    """Elements plus their inverses, without class closure"""
    if any(DihedralElement(x.rot % n, x.refl) == IDENTITY for x in elements):
        raise ConnectionSetError("connection set contains the identity")
    return ConnectionSet.from_elements(n, elements, close_inverses=True)


# Named families

def _reflection_class(n: int, pi: int) -> FrozenSet[DihedralElement]:
    return conjugacy_class(DihedralElement(pi % n, 1), n).members


def _require_even(family: str, n: int):
    if n % 2:
        raise FamilyParameterError(family, f"n must be even, got {n}")


def _require_pi(family: str, pi) -> int:
    try:
        pi = int(pi)
    except (TypeError, ValueError):
        raise FamilyParameterError(family, f"pi must be 0 or 1, got {pi!r}") from None
    if pi not in (0, 1):
        raise FamilyParameterError(family, f"pi must be 0 or 1, got {pi}")
    return pi


def _odd_rotations(n: int) -> List[DihedralElement]:
    return [DihedralElement(i, 0) for i in range(1, n, 2)]


def _knn_v1(n: int) -> ConnectionSet:
    return ConnectionSet.from_elements(n, DihedralGroup(n).reflections())


def _knn_v2(n: int) -> ConnectionSet:
    _require_even("knn_v2", n)
    return ConnectionSet.from_elements(n, list(_reflection_class(n, 0)) + _odd_rotations(n))


def _knn_v3(n: int) -> ConnectionSet:
    _require_even("knn_v3", n)
    return ConnectionSet.from_elements(n, list(_reflection_class(n, 1)) + _odd_rotations(n))


def _knn_minus_matching(family: str, n: int, parity: int) -> ConnectionSet:
    k = n // 2
    if n % 2 or k < 3 or k % 2 == 0:
        raise FamilyParameterError(family, f"needs n = 2k with k >= 3 odd, got n={n}")
    rotations = [x for x in _odd_rotations(n) if x.rot != k]
    return ConnectionSet.from_elements(n, list(_reflection_class(n, parity)) + rotations)


def _complete(n: int) -> ConnectionSet:
    return ConnectionSet(n, ((1 << (2 * n)) - 1) & ~1)


def _multipartite(n: int, t) -> ConnectionSet:
    t = int(t)
    if t < 2 or n % t or t == n:
        raise FamilyParameterError("multipartite", f"needs t >= 2 dividing n with m = 2n/t >= 3, got t={t}, n={n}")
    step = n // t
    subgroup = {DihedralElement(i, 0) for i in range(0, n, step)}
    return ConnectionSet.from_elements(n, [x for x in DihedralGroup(n).elements() if x not in subgroup])


def _thm14(n: int, p, pi=1) -> ConnectionSet:
    p = int(p)
    pi = _require_pi("thm14", pi)
    if p < 3 or not isprime(p):
        raise FamilyParameterError("thm14", f"p must be an odd prime, got {p}")
    if n != 4 * p:
        raise FamilyParameterError("thm14", f"n must equal 4p = {4 * p}, got {n}")
    units = [DihedralElement(i, 0) for i in range(1, n) if gcd(i, n) == 1]
    return ConnectionSet.from_elements(n, list(_reflection_class(n, pi)) + units)


def rotation_orbit_sets(n: int) -> Tuple[List[DihedralElement], List[DihedralElement], List[DihedralElement]]:
    """Rotations of order 6, n/3 and n (n = 6q)"""
    group = DihedralGroup(n)
    return group.rotations_of_order(6), group.rotations_of_order(n // 3), group.rotations_of_order(n)


def _orbit_family(family: str, required_n: int, use_second: bool) -> Callable[..., ConnectionSet]:
    def build(n: int, pi=1) -> ConnectionSet:
        pi = _require_pi(family, pi)
        if n != required_n:
            raise FamilyParameterError(family, f"defined for n={required_n} only, got n={n}")
        first, second, top = rotation_orbit_sets(n)
        rotations = (second if use_second else first) + top
        return ConnectionSet.from_elements(n, list(_reflection_class(n, pi)) + rotations)
    return build


def _parse_delta(n: int, delta) -> List[DihedralElement]:
    if isinstance(delta, str):
        items = [tok for tok in delta.replace("|", " ").split() if tok]
    else:
        items = list(delta)
    elements = []
    for item in items:
        if isinstance(item, DihedralElement):
            elements.append(item)
            continue
        try:
            elements.append(parse_element(item, n))
        except ValueError as e:
            raise FamilyParameterError("caseV", str(e)) from None
    return elements


def case_v_set(n: int, pi: int, delta: Iterable[DihedralElement]) -> ConnectionSet:
    """(a^pi b)^G together with the class closure of delta"""
    rotations = set()
    for x in delta:
        rotations |= conjugacy_class(x, n).members
    return ConnectionSet.from_elements(n, list(_reflection_class(n, pi)) + sorted(rotations))


def _case_v(n: int, pi=1, delta="") -> ConnectionSet:
    _require_even("caseV", n)
    pi = _require_pi("caseV", pi)
    k = n // 2
    elements = _parse_delta(n, delta)
    if not elements:
        raise FamilyParameterError("caseV", "delta must be nonempty")
    for x in elements:
        if x.refl or x.rot % 2 == 0:
            raise FamilyParameterError("caseV", f"{format_element(x)} is not an odd rotation")
    closed = set()
    for x in elements:
        closed |= conjugacy_class(x, n).members
    if len(closed) > k - 2:
        raise FamilyParameterError("caseV", f"|delta| = {len(closed)} exceeds k - 2 = {k - 2}")
    return case_v_set(n, pi, elements)


FAMILY_BUILDERS: Dict[str, Callable[..., ConnectionSet]] = {
    "knn_v1": _knn_v1,
    "knn_v2": _knn_v2,
    "knn_v3": _knn_v3,
    "knn_minus_matching_v1": lambda n: _knn_minus_matching("knn_minus_matching_v1", n, 0),
    "knn_minus_matching_v2": lambda n: _knn_minus_matching("knn_minus_matching_v2", n, 1),
    "complete": _complete,
    "multipartite": _multipartite,
    "thm14": _thm14,
    "ex44_S": _orbit_family("ex44_S", 30, use_second=False),
    "ex44_R": _orbit_family("ex44_R", 30, use_second=True),
    "ex45_S": _orbit_family("ex45_S", 42, use_second=False),
    "ex45_R": _orbit_family("ex45_R", 42, use_second=True),
    "caseV": _case_v,
}


def build_family(name: str, n: int, **params) -> ConnectionSet:
    """
    Build a named connection set.

    Raises:
        FamilyParameterError: unknown family or parameters outside the valid range
    """
    builder = FAMILY_BUILDERS.get(name)
    if builder is None:
        raise FamilyParameterError(name, f"unknown family (known: {', '.join(FAMILY_BUILDERS)})")
    try:
        return builder(n, **params)
    except TypeError as e:
        raise FamilyParameterError(name, f"bad parameters {sorted(params)}: {e}") from None
    except ValueError as e:
        raise FamilyParameterError(name, str(e)) from None


# DSL

class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, position: Optional[int] = None) -> DSLParseError:
        return DSLParseError(message, self.pos if position is None else position, self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, literal: str) -> bool:
        self.skip_ws()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str):
        if not self.peek(literal):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def read_while(self, predicate) -> Tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and predicate(self.text[self.pos]):
            self.pos += 1
        return self.text[start:self.pos], start

    def read_int(self) -> int:
        digits, start = self.read_while(str.isdigit)
        if not digits:
            raise self.error("expected an integer")
        return int(digits)

    def read_name(self) -> str:
        name, start = self.read_while(lambda c: c.isalnum() or c == "_")
        if not name:
            raise self.error("expected a name")
        return name

    def read_token(self, n: int) -> DihedralElement:
        token, start = self.read_while(str.isalnum)
        try:
            return parse_element(token, n)
        except ValueError as e:
            raise self.error(str(e), start) from None

    def read_tokens(self, n: int) -> List[DihedralElement]:
        tokens = [self.read_token(n)]
        while self.peek(","):
            self.pos += 1
            tokens.append(self.read_token(n))
        return tokens

    def read_value(self) -> str:
        value, start = self.read_while(lambda c: c not in ",)")
        if not value.strip():
            raise self.error("expected a value", start)
        return value.strip()

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_connection_set(text: str) -> ConnectionSet:
    """
    Parse a connection-set spec:

        n=<INT>; S=classes(tok, ...) | raw(tok, ...) | family(NAME, key=value, ...)

    Raises:
        DSLParseError: malformed spec, with the failing column
        ConnectionSetError: well-formed spec naming an invalid set
    """
    parser = _SpecParser(text)
    parser.expect("n")
    parser.expect("=")
    n_pos = parser.pos
    n = parser.read_int()
    if n < 2:
        raise parser.error("n must be at least 2", n_pos)
    parser.expect(";")
    parser.expect("S")
    parser.expect("=")
    kind_pos = parser.pos
    kind = parser.read_name()
    parser.expect("(")

    if kind in ("classes", "raw"):
        elements = parser.read_tokens(n)
        parser.expect(")")
        result = from_class_reps(n, elements) if kind == "classes" else raw_connection_set(n, elements)
    elif kind == "family":
        name = parser.read_name()
        params: Dict[str, str] = {}
        while parser.peek(","):
            parser.pos += 1
            key = parser.read_name()
            parser.expect("=")
            params[key] = parser.read_value()
        parser.expect(")")
        converted = {k: (int(v) if v.lstrip("-").isdigit() else v) for k, v in params.items()}
        result = build_family(name, n, **converted)
    else:
        raise parser.error(f"unknown body {kind!r} (expected classes, raw or family)", kind_pos)

    if not parser.at_end():
        raise parser.error("unexpected trailing input")
    logger.debug("parsed %s into %d elements", text.strip(), len(result))
    return result


# Graphs

class CayleyGraph(Graph):
    """Cay(D_2n, S): u ~ v iff v u^-1 in S, so the neighbours of u are s u"""

    def __init__(self, S: ConnectionSet):
        n = S.n
        members = S.elements()
        rows = []
        for v in range(2 * n):
            x = element_at(v, n)
            row = 0
            for s in members:
                row |= 1 << mul(s, x, n).index(n)
            rows.append(row)
        labels = [format_element(element_at(v, n)) for v in range(2 * n)]
        super().__init__(rows, labels=labels, check=False)
        self.n = n
        self.S = S

    @classmethod
    def from_spec(cls, text: str) -> "CayleyGraph":
        return cls(parse_connection_set(text))

    @property
    def group(self) -> DihedralGroup:
        return DihedralGroup(self.n)

    def element(self, v: int) -> DihedralElement:
        return element_at(v, self.n)

    def vertex(self, x: DihedralElement) -> int:
        return x.index(self.n)

    def vertex_set(self, elements: Iterable[DihedralElement]) -> FrozenSet[int]:
        return frozenset(x.index(self.n) for x in elements)

    def elements_of(self, vertices: Iterable[int]) -> List[DihedralElement]:
        return sorted(element_at(v, self.n) for v in vertices)

    def complement_subgroup(self) -> Optional[FrozenSet[int]]:
        """Vertex set of G minus S when it is a subgroup"""
        subgroup = complement_subgroup(self.S)
        if subgroup is None:
            return None
        return self.vertex_set(subgroup)

    def __repr__(self) -> str:
        return f"CayleyGraph(n={self.n}, |S|={len(self.S)})"


def is_inner_automorphic(S: ConnectionSet) -> bool:
    """Closed under conjugation by a and by b"""
    n = S.n
    a, b = DihedralElement(1 % n, 0), DihedralElement(0, 1)
    for x in S.elements():
        for g in (a, b):
            if mul(mul(inverse(g, n), x, n), g, n) not in S:
                return False
    return True


def subgroup_generated(n: int, elements: Iterable[DihedralElement]) -> FrozenSet[DihedralElement]:
    return DihedralGroup(n).subgroup(elements)


def is_connected(S: ConnectionSet) -> bool:
    """True iff S generates D_2n"""
    return len(subgroup_generated(S.n, S.elements())) == 2 * S.n


def complement_subgroup(S: ConnectionSet) -> Optional[FrozenSet[DihedralElement]]:
    """H = G minus S if H is a subgroup, else None"""
    n = S.n
    group = DihedralGroup(n)
    complement = frozenset(x for x in group.elements() if x not in S)
    if (2 * n) % len(complement):
        return None
    closure = frozenset([IDENTITY])
    gens: List[DihedralElement] = []
    for x in sorted(complement):
        if x in closure:
            continue
        gens.append(x)
        closure = group.subgroup(gens)
        if not closure <= complement:
            return None
    return closure if closure == complement else None


def inversion_map_is_graph_automorphism(graph: CayleyGraph) -> bool:
    return graph.is_automorphism(inversion_permutation(graph.n))


def left_regular_in_aut(graph: CayleyGraph) -> bool:
    """L(a) and L(b) generate L(G), so checking them covers every L(g)"""
    group = graph.group
    return all(graph.is_automorphism(left_regular(g, graph.n)) for g in (group.a, group.b))


def apply_group_automorphism(graph: CayleyGraph, phi: GroupAutomorphism) -> CayleyGraph:
    """Cay(G, S^phi); x -> x^phi is an isomorphism from graph onto it"""
    if phi.n != graph.n:
        raise ConnectionSetError(f"automorphism of D_{2 * phi.n} applied to a graph on D_{2 * graph.n}")
    return CayleyGraph(graph.S.image(phi))
