import pytest

from dihedrant.aut_search import search_automorphisms
from dihedrant.cayley import CayleyGraph, build_family
from dihedrant.errors import UsageError
from dihedrant.graph_metrics import FamilyKind, recognize
from dihedrant.permgroup import is_s_arc_transitive
from dihedrant.verification import (
    SUITES,
    TWO_ARC_TRANSITIVE_FAMILIES,
    SuiteParams,
    class_unions,
    inverse_closed_sets,
    load_known_orders,
    run_suite,
)


def assert_passes(report):
    assert report.passed, [(c.name, c.detail) for c in report.failures()]


def test_thm14_p3():
    report = run_suite("thm14", SuiteParams(p=3))
    assert_passes(report)
    assert report.data["aut_order"] == {"2": 17, "3": 2, "5": 1}


def test_thm14_p3_other_parity():
    assert_passes(run_suite("thm14", SuiteParams(p=3, pi=0)))


@pytest.mark.parametrize("n", [4, 6])
def test_cor12(n):
    assert_passes(run_suite("cor12", SuiteParams(n=n)))


def test_cor12_exhaustive_small():
    report = run_suite("cor12", SuiteParams(n=6, exhaustive=True))
    assert_passes(report)
    names = [c.name for c in report.checks]
    assert "2_arc_exactly_complete_or_bipartite" in names
    assert "3_arc_exactly_case_i" in names


def test_two_arc_transitive_families():
    two_arc = TWO_ARC_TRANSITIVE_FAMILIES
    assert FamilyKind.COMPLETE_BIPARTITE_MINUS_MATCHING in two_arc
    assert FamilyKind.COMPLETE_MULTIPARTITE not in two_arc

    graph = CayleyGraph(build_family("knn_minus_matching_v1", 6))
    assert recognize(graph).kind in two_arc
    aut = search_automorphisms(graph).group
    assert is_s_arc_transitive(graph, aut, 2)

    multipartite = CayleyGraph(build_family("multipartite", 6, t=2))
    assert recognize(multipartite).kind not in two_arc
    aut = search_automorphisms(multipartite).group
    assert is_s_arc_transitive(multipartite, aut, 1)
    assert not is_s_arc_transitive(multipartite, aut, 2)


def test_prop21_exhaustive():
    report = run_suite("prop21", SuiteParams(n=5, exhaustive=True))
    assert_passes(report)
    assert report.data["class_closed"] == 7


def test_prop21_random_samples():
    report = run_suite("prop21", SuiteParams(samples=60, seed=11))
    assert_passes(report)
    assert 0 < report.data["class_closed"] < 60


def test_lemma35():
    report = run_suite("lemma35", SuiteParams(n=12))
    assert_passes(report)
    # 1 + 2 + 5 + 6 candidates, both parities
    assert report.data["sets"] == 28


@pytest.mark.parametrize("name", ["lemma42", "lemma43", "lemma45"])
def test_thm14_lemmas(name):
    assert_passes(run_suite(name, SuiteParams(p=3)))


@pytest.mark.parametrize("name", ["cor13", "prop22"])
def test_class_union_suites(name):
    assert_passes(run_suite(name, SuiteParams(n=6)))


def test_thm11_small():
    report = run_suite("thm11", SuiteParams(n=8))
    assert_passes(report)
    assert "UnclassifiedArcTransitive" not in report.data["outcomes"]


def test_usage_errors():
    with pytest.raises(UsageError):
        run_suite("nope")
    with pytest.raises(UsageError):
        run_suite("thm14", SuiteParams(p=2))
    with pytest.raises(UsageError):
        next(inverse_closed_sets(17))


def test_enumerations():
    assert len(list(class_unions(5))) == 7
    # 2 rotation pairs and 5 reflections
    assert len(list(inverse_closed_sets(5))) == 2 ** 7 - 1


def test_known_orders():
    known = load_known_orders()
    assert known["ex44_S"]["exact"] is True
    assert known["ex44_R"]["exact"] is False
    assert set(SUITES) == {
        "thm11", "thm14", "lemma35", "lemma42", "lemma43", "lemma45",
        "cor12", "cor13", "prop21", "prop22", "ex44", "ex45",
    }


@pytest.mark.slow
def test_thm14_p5():
    report = run_suite("thm14", SuiteParams(p=5))
    assert_passes(report)
    assert report.data["aut_order"] == {"2": 29, "3": 4, "5": 2, "7": 1}


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ex44", "ex45"])
def test_examples(name):
    assert_passes(run_suite(name))


@pytest.mark.slow
@pytest.mark.parametrize("name", ["thm11", "cor13"])
def test_class_union_suites_to_12(name):
    assert_passes(run_suite(name, SuiteParams(n=12)))


@pytest.mark.slow
def test_lemma35_to_20():
    assert_passes(run_suite("lemma35"))
