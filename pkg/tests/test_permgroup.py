import numpy as np
import pytest
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup as SymPermutationGroup

from dihedrant.aut_search import search_automorphisms
from dihedrant.config import Limits
from dihedrant.dihedral_core import DihedralElement, DihedralGroup, GroupAutomorphism, right_regular
from dihedrant.errors import DegreeMismatchError, IntransitiveGroupError, ResourceLimitError
from dihedrant.graph_metrics import Graph
from dihedrant.permgroup import (
    BlockSystem,
    FactoredInteger,
    Permutation,
    PermutationGroup,
    count_s_arcs,
    induced_action,
    is_2_distance_transitive,
    is_normal,
    is_primitive,
    is_regular_on,
    is_s_arc_transitive,
    is_transitive_on_arcs,
    minimal_block_systems,
    orbit,
    orbit_of_tuple,
    point_stabilizer,
    restriction,
    schreier_sims,
    sign_kernel,
)
from dihedrant.structure import kernel_generators


def full_aut(graph):
    return search_automorphisms(graph).group


def test_permutation_composition_order():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    assert (p * q).images == (2, 1, 0)  # p first, then q
    assert p.inverse() * p == Permutation.identity(3)
    assert (p ** 3).is_identity()
    assert Permutation.from_cycles(4, [(0, 1, 2)]).cycles() == [(0, 1, 2)]
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(DegreeMismatchError):
        p * Permutation([1, 0])


def test_orbit():
    assert orbit([], 3) == frozenset([3])
    R = DihedralGroup(6).right_regular_group()
    assert R.orbit(5) == frozenset(range(12))
    assert orbit(kernel_generators(3), 1) == frozenset([1, 7])


def test_orbit_of_tuple():
    cycle = Permutation([1, 2, 3, 0])
    assert orbit_of_tuple([cycle], (0, 1)) == {(0, 1), (1, 2), (2, 3), (3, 0)}
    with pytest.raises(ResourceLimitError):
        orbit_of_tuple([cycle], (0, 1), cap=2)


def test_factored_integer():
    assert FactoredInteger.from_int(360) == FactoredInteger.from_dict({2: 3, 3: 2, 5: 1})
    assert FactoredInteger.factorial(10) == FactoredInteger.from_dict({2: 8, 3: 4, 5: 2, 7: 1})
    assert str(FactoredInteger.from_dict({"2": 17, "3": 2, "5": 1})) == "2^17 * 3^2 * 5"
    assert str(FactoredInteger.one()) == "1"
    assert FactoredInteger.from_int(720).to_json() == {"2": 4, "3": 2, "5": 1}
    assert FactoredInteger.product([4, 6, FactoredInteger.from_int(5)]).value == 120
    assert FactoredInteger.from_int(120) / 24 == FactoredInteger.from_int(5)
    assert FactoredInteger.from_int(6).divides(FactoredInteger.from_int(12))
    assert not FactoredInteger.from_int(8).divides(FactoredInteger.from_int(12))
    with pytest.raises(ValueError):
        FactoredInteger.from_int(7) / 2
    with pytest.raises(ValueError):
        FactoredInteger.from_dict({57: 1})
    with pytest.raises(ValueError):
        FactoredInteger.from_int(0)


def test_big_orders_stay_exact():
    order = FactoredInteger.from_dict({2: 41, 3: 14, 5: 13})
    assert order.value == 2 ** 41 * 3 ** 14 * 5 ** 13
    assert (order * order / order) == order


def test_schreier_sims_orders():
    assert schreier_sims(kernel_generators(3), degree=24).order() == FactoredInteger.from_dict({2: 12})
    S4 = schreier_sims([[1, 2, 3, 0], [1, 0, 2, 3]])
    assert S4.order() == FactoredInteger.from_dict({2: 3, 3: 1})
    assert PermutationGroup.symmetric(6).order_int() == 720


def test_schreier_sims_matches_sympy():
    rng = np.random.default_rng(7)
    generator_sets = [
        [[1, 0, 2, 3, 4, 5, 6, 7], [0, 1, 3, 2, 4, 5, 6, 7], [0, 1, 2, 3, 5, 4, 7, 6]],
        [[1, 2, 0, 4, 5, 3, 6, 7, 8], [3, 4, 5, 6, 7, 8, 0, 1, 2]],
        [[2, 0, 1, 3, 4], [0, 1, 3, 4, 2]],
    ]
    for _ in range(5):
        degree = int(rng.integers(5, 10))
        generator_sets.append([rng.permutation(degree).tolist() for _ in range(2)])

    for gens in generator_sets:
        ours = schreier_sims(gens)
        reference = SymPermutationGroup([SymPermutation(g) for g in gens])
        assert ours.order_int() == reference.order()


def test_membership():
    A5 = schreier_sims([[1, 2, 0, 3, 4], [0, 1, 3, 4, 2]])
    assert A5.order_int() == 60
    gens = A5.generators
    for g in gens:
        for h in gens:
            for k in gens:
                assert A5.contains(g * h * k)
    assert Permutation.identity(5) in A5
    assert not A5.contains(Permutation.transposition(5, 0, 1))
    with pytest.raises(DegreeMismatchError):
        A5.contains(Permutation.identity(4))


def test_stabilizers(thm14_aut):
    K4 = PermutationGroup.symmetric(4)
    for v in range(4):
        assert point_stabilizer(K4, v).order_int() == 6

    R = DihedralGroup(6).right_regular_group()
    assert R.stabilizer(0).order_int() == 1

    stabilizer = thm14_aut.stabilizer(0)
    assert stabilizer.order() == FactoredInteger.from_dict({2: 11}) * FactoredInteger.factorial(5)
    for v in (0, 7, 13, 23):
        stab = thm14_aut.stabilizer(v)
        assert stab.order() * len(thm14_aut.orbit(v)) == thm14_aut.order()
        assert all(g[v] == v for g in stab.generators)


def test_is_normal(thm14_graph, thm14_aut):
    n = 6
    R = DihedralGroup(n).right_regular_group()
    theta = GroupAutomorphism.theta(1, n).as_permutation()
    tau = GroupAutomorphism.tau(5, n).as_permutation()
    holomorph = PermutationGroup(R.generators + [theta, tau], degree=2 * n)
    assert is_normal(R, holomorph)

    central = [right_regular(DihedralElement(6, 0), 12)]
    assert is_normal(central, thm14_aut)
    assert not is_normal(thm14_graph.group.right_regular_group(), thm14_aut)

    with pytest.raises(DegreeMismatchError):
        is_normal(R, thm14_aut)


def test_block_systems():
    R = DihedralGroup(6).right_regular_group()
    assert not is_primitive(R)
    systems = minimal_block_systems(R)
    for system in systems:
        assert system.is_invariant(R.generators)
        assert not system.is_trivial()

    cyclic = PermutationGroup([[1, 2, 3, 4, 5, 0]])
    assert [b.cell_size for b in minimal_block_systems(cyclic)] == [2, 3]

    assert is_primitive(PermutationGroup([[1, 2, 3, 4, 0]]))
    assert is_primitive(PermutationGroup.symmetric(6))

    with pytest.raises(IntransitiveGroupError):
        minimal_block_systems(PermutationGroup([[1, 0, 2, 3]]))


def test_block_system_validation():
    blocks = BlockSystem.from_cells([[2, 3], [0, 1]])
    assert blocks.cells[0] == frozenset([0, 1])
    assert blocks.cell_of(3) == 1
    with pytest.raises(ValueError):
        BlockSystem.from_cells([[0, 1], [2]])
    with pytest.raises(ValueError):
        BlockSystem.from_cells([[0, 1], [1, 2]])


def test_induced_action_and_restriction():
    cyclic = PermutationGroup([[1, 2, 3, 4, 5, 0]])
    pairs = BlockSystem.from_cells([[0, 3], [1, 4], [2, 5]])
    image = induced_action(cyclic, pairs)
    assert image.degree == 3 and image.order_int() == 3

    swap = PermutationGroup([[1, 0, 3, 2]])
    assert restriction(swap, [0, 1]).order_int() == 2


def test_sign_kernel():
    def parity(images):
        return sum(len(c) - 1 for c in Permutation(images, check=False).cycles())

    S5 = PermutationGroup.symmetric(5)
    A5 = sign_kernel(S5, parity)
    assert A5.order_int() == 60
    assert sign_kernel(A5, parity).order_int() == 60


def test_is_regular_on():
    assert is_regular_on(DihedralGroup(5).right_regular_group())
    assert not is_regular_on(PermutationGroup.symmetric(3))
    assert is_regular_on(PermutationGroup([[1, 0, 3, 2]]), [0, 1])


def test_count_s_arcs():
    k4 = Graph.complete(4)
    assert count_s_arcs(k4, 0) == 4
    assert count_s_arcs(k4, 1) == 12
    assert count_s_arcs(k4, 2) == 24
    assert count_s_arcs(Graph.cycle(6), 5) == 12


def test_s_arc_transitivity_closed_forms():
    k44 = Graph.complete_bipartite(4)
    aut = full_aut(k44)
    assert is_s_arc_transitive(k44, aut, 3)
    assert not is_s_arc_transitive(k44, aut, 4)

    k8 = Graph.complete(8)
    S8 = PermutationGroup.symmetric(8)
    assert is_s_arc_transitive(k8, S8, 2)
    assert not is_s_arc_transitive(k8, S8, 3)

    c6 = Graph.cycle(6)
    D12 = PermutationGroup([[1, 2, 3, 4, 5, 0], [0, 5, 4, 3, 2, 1]])
    assert is_transitive_on_arcs(c6, D12)
    assert is_s_arc_transitive(c6, D12, 4)


def test_s_arc_transitivity_thm14(thm14_graph, thm14_aut):
    assert is_s_arc_transitive(thm14_graph, thm14_aut, 1)
    assert not is_s_arc_transitive(thm14_graph, thm14_aut, 2)
    R = thm14_graph.group.right_regular_group()
    assert not is_transitive_on_arcs(thm14_graph, R)


def test_s_arc_cap(thm14_graph, thm14_aut):
    with pytest.raises(ResourceLimitError):
        is_s_arc_transitive(thm14_graph, thm14_aut, 2, Limits(arc_cap=100))
    with pytest.raises(ValueError):
        is_s_arc_transitive(thm14_graph, thm14_aut, 0)


def test_two_distance_transitivity(thm14_graph, thm14_aut):
    k32 = Graph.complete_multipartite(3, 2)
    assert is_2_distance_transitive(k32, full_aut(k32))
    assert not is_s_arc_transitive(k32, full_aut(k32), 2)
    assert not is_2_distance_transitive(thm14_graph, thm14_aut)
    assert is_2_distance_transitive(Graph.complete(5), PermutationGroup.symmetric(5))
    with pytest.raises(IntransitiveGroupError):
        is_2_distance_transitive(Graph.path(3), PermutationGroup([[2, 1, 0]]))
