import pytest

from dihedrant.cayley import CayleyGraph, build_family, parse_connection_set
from dihedrant.config import Limits
from dihedrant.dihedral_core import DihedralElement, format_element, parse_element
from dihedrant.errors import DihedrantError, NonInvariantPartitionError
from dihedrant.graph_metrics import FamilyKind, FamilyTag, Graph
from dihedrant.permgroup import BlockSystem, FactoredInteger, schreier_sims
from dihedrant.structure import (
    ClassificationOutcome,
    OutcomeKind,
    bipartition_subgroup,
    case_v_candidates,
    case_v_shape,
    central_orbit_partition,
    classify,
    evaluate_case_v_candidate,
    is_normal_cayley,
    kernel_generators,
    quotient_with_cover_check,
    scan_case_v,
    thm14_aut_order,
    thm14_stabilizer_order,
    verify_case_v,
    verify_kernel,
    verify_quotient_group_structure,
)

E = DihedralElement


def elements(*tokens, n=12):
    return tuple(parse_element(t, n) for t in tokens)


def classify_text(text, **kwargs):
    S = parse_connection_set(text)
    return classify(S.n, S, **kwargs)


@pytest.mark.parametrize("text,expected", [
    ("n=5; S=classes(f0)", ClassificationOutcome(OutcomeKind.CASE_I, variant=1)),
    ("n=6; S=classes(f0, f1)", ClassificationOutcome(OutcomeKind.CASE_I, variant=1)),
    ("n=6; S=family(knn_v2)", ClassificationOutcome(OutcomeKind.CASE_I, variant=2)),
    ("n=6; S=family(knn_v3)", ClassificationOutcome(OutcomeKind.CASE_I, variant=3)),
    ("n=6; S=family(multipartite, t=2)", ClassificationOutcome(OutcomeKind.CASE_IV, m=6, t=2)),
    ("n=6; S=family(knn_minus_matching_v1)", ClassificationOutcome(OutcomeKind.CASE_II, variant=1)),
    ("n=10; S=family(knn_minus_matching_v2)", ClassificationOutcome(OutcomeKind.CASE_II, variant=2)),
    ("n=7; S=family(complete)", ClassificationOutcome(OutcomeKind.CASE_III)),
    ("n=6; S=raw(r1)", ClassificationOutcome(OutcomeKind.DISCONNECTED)),
    ("n=6; S=raw(f1, f2)", ClassificationOutcome(OutcomeKind.NOT_INNER_AUTOMORPHIC)),
])
def test_classify_closed_forms(text, expected):
    outcome = classify_text(text)
    assert outcome == expected
    assert outcome.aut_order is None


def test_classify_thm14(thm14_graph, thm14_aut):
    outcome = classify(12, thm14_graph.S, aut=thm14_aut)
    assert outcome.kind == OutcomeKind.CASE_V
    assert outcome.pi == 1
    assert outcome.delta == elements("r1", "r5", "r7", "r11")
    assert outcome.arc_transitive is True
    assert outcome.aut_order == thm14_aut_order(3)
    assert outcome.is_listed_case and not outcome.is_closed_form
    assert str(outcome) == "CaseV{pi=1,delta={r1,r5,r7,r11},arc_transitive=True}"
    assert outcome.to_json() == {
        "kind": "CaseV", "variant": None, "m": None, "t": None, "pi": 1,
        "delta": ["r1", "r5", "r7", "r11"], "arc_transitive": True,
    }


def test_classify_small_case_v():
    outcome = classify_text("n=8; S=family(caseV, pi=1, delta=r1)")
    assert outcome.kind == OutcomeKind.CASE_V
    assert outcome.delta == elements("r1", "r7", n=8)
    assert outcome.arc_transitive is not None


def test_classify_not_arc_transitive():
    outcome = classify_text("n=5; S=classes(r1, f0)")
    assert outcome.kind == OutcomeKind.NOT_ARC_TRANSITIVE
    assert outcome.arc_transitive is False
    assert outcome.aut_order is not None
    assert not outcome.is_listed_case


def test_classify_rejects_mismatched_n():
    with pytest.raises(DihedrantError):
        classify(8, build_family("complete", 6))


def test_outcome_strings():
    assert str(ClassificationOutcome(OutcomeKind.CASE_IV, m=6, t=2)) == "CaseIV{m=6,t=2}"
    assert str(ClassificationOutcome(OutcomeKind.CASE_I, variant=3)) == "CaseI{variant=3}"
    assert str(ClassificationOutcome(OutcomeKind.DISCONNECTED)) == "Disconnected"
    assert ClassificationOutcome(OutcomeKind.CASE_II, variant=1).to_json()["delta"] is None


def test_case_v_shape():
    assert case_v_shape(build_family("thm14", 12, p=3, pi=0)) == (0, elements("r1", "r5", "r7", "r11"))
    assert case_v_shape(build_family("complete", 6)) is None
    assert case_v_shape(build_family("knn_v1", 7)) is None
    # Delta too large: all odd rotations
    assert case_v_shape(parse_connection_set("n=8; S=classes(f1, r1, r3)")) is None


def test_verify_case_v(thm14_graph):
    report = verify_case_v(thm14_graph)
    assert report.passed, report.failures()
    assert report.data["shell_sizes"] == [1, 10, 11, 2]

    small = verify_case_v(CayleyGraph(build_family("caseV", 8, pi=1, delta="r1")))
    assert small.passed, small.failures()

    assert not verify_case_v(CayleyGraph(build_family("complete", 6))).passed


def test_bipartition_subgroup():
    H = bipartition_subgroup(12, 1)
    assert len(H) == 12
    assert {x.rot % 2 for x in H} == {0}
    assert E(0, 1) in H


def test_central_orbit_partition(thm14_graph):
    blocks = central_orbit_partition(thm14_graph)
    assert len(blocks.cells) == 12
    assert blocks.cells[blocks.cell_of(0)] == frozenset([0, 6])
    odd, even = blocks.sides
    assert len(odd) == len(even) == 6
    assert all(thm14_graph.element(min(blocks.cells[i])).rot % 2 == 1 for i in odd)

    complete30 = CayleyGraph(build_family("complete", 30))
    assert central_orbit_partition(complete30).sides is None

    with pytest.raises(DihedrantError):
        central_orbit_partition(CayleyGraph(build_family("complete", 5)))


def test_thm14_quotient(thm14_graph):
    report = quotient_with_cover_check(thm14_graph, central_orbit_partition(thm14_graph))
    assert report.family == FamilyTag(FamilyKind.COMPLETE_BIPARTITE_MINUS_MATCHING, (6,))
    assert report.r == 2
    assert not report.inner_edges
    assert report.is_cover
    assert report.quotient.order == 12
    assert report.quotient.valency == 5
    assert report.to_json()["multiplicities"] == [2]


def test_quotient_of_k4():
    report = quotient_with_cover_check(Graph.complete(4), BlockSystem.from_cells([[0, 1], [2, 3]]))
    assert report.r == 2
    assert report.quotient.order == 2
    assert report.inner_edges
    assert not report.is_cover


def test_quotient_rejects_non_invariant_partition(thm14_graph):
    cells = [[2 * i, 2 * i + 1] for i in range(12)]
    with pytest.raises(NonInvariantPartitionError):
        quotient_with_cover_check(thm14_graph, BlockSystem.from_cells(cells))


def test_kernel_generators(thm14_graph):
    gens = kernel_generators(3)
    assert len(gens) == 12
    assert all(len(g.support()) == 2 for g in gens)
    assert schreier_sims(gens, degree=24).order() == FactoredInteger.from_dict({2: 12})
    assert all(thm14_graph.is_automorphism(g) for g in gens)


def test_verify_kernel_and_quotient_group(thm14_graph, thm14_aut):
    report = verify_kernel(thm14_graph, 3, aut=thm14_aut)
    assert report.passed, report.failures()
    assert report.data["kernel_order"] == {"2": 12}

    report = verify_quotient_group_structure(thm14_graph, 3, aut=thm14_aut)
    assert report.passed, report.failures()

    with pytest.raises(DihedrantError):
        verify_kernel(CayleyGraph(build_family("thm14", 20, p=5)), 3)


def test_closed_form_orders():
    assert str(thm14_aut_order(3)) == "2^17 * 3^2 * 5"
    assert str(thm14_stabilizer_order(3)) == "2^14 * 3 * 5"
    assert thm14_aut_order(5) == FactoredInteger.from_dict({2: 21}) * FactoredInteger.factorial(10)
    assert thm14_aut_order(3) / thm14_stabilizer_order(3) == FactoredInteger.from_int(24)


def test_is_normal_cayley(thm14_graph, thm14_aut):
    assert not is_normal_cayley(thm14_graph, thm14_aut)


def test_case_v_candidates():
    assert case_v_candidates(6) == [elements("r3", n=6)]
    assert len(case_v_candidates(8)) == 2
    assert len(case_v_candidates(10)) == 5
    candidates = case_v_candidates(12)
    assert len(candidates) == 6
    assert elements("r1", "r5", "r7", "r11") in candidates
    assert [len(c) for c in candidates] == [2, 2, 2, 4, 4, 4]
    with pytest.raises(DihedrantError):
        case_v_candidates(7)


def test_evaluate_case_v_candidate():
    result = evaluate_case_v_candidate(12, elements("r1", "r5", "r7", "r11"))
    assert result.connected
    assert result.arc_transitive is True
    assert result.aut_order == thm14_aut_order(3)
    assert (result.girth, result.diameter) == (4, 3)
    assert result.pi0_equivalent is True
    assert result.error is None
    assert result.key == (12, 1, ("r1", "r5", "r7", "r11"))

    record = result.to_record(timings=False)
    assert record["elapsed"] is None
    assert record["aut_order"] == {"2": 17, "3": 2, "5": 1}


def test_evaluate_case_v_candidate_records_resource_errors():
    result = evaluate_case_v_candidate(12, elements("r1", "r11"), Limits(node_cap=1))
    assert result.error is not None
    assert result.arc_transitive is None
    assert result.aut_order is None


def test_scan_case_v():
    results = scan_case_v(12)
    assert [r.delta for r in results] == case_v_candidates(12)
    flagged = [r for r in results if r.arc_transitive]
    assert [format_element(x) for x in flagged[0].delta] == ["r1", "r5", "r7", "r11"]
    assert len(flagged) == 1

    skipped = scan_case_v(12, skip={(12, 1, ("r3", "r9"))})
    assert len(skipped) == 5

    with pytest.raises(DihedrantError):
        scan_case_v(20, Limits(scan_max_n=16))


@pytest.mark.slow
def test_scan_case_v_30():
    results = scan_case_v(30)
    assert len(results) == 253
    assert all(r.error is None for r in results)
    flagged = {frozenset(format_element(x) for x in r.delta) for r in results if r.arc_transitive}
    # Rotations of orders 6 and 30, then of orders 10 and 30
    assert flagged == {
        frozenset({"r1", "r5", "r7", "r11", "r13", "r17", "r19", "r23", "r25", "r29"}),
        frozenset({"r1", "r3", "r7", "r9", "r11", "r13", "r17", "r19", "r21", "r23", "r27", "r29"}),
    }
