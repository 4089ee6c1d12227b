import pytest

from dihedrant.aut_search import search_automorphisms
from dihedrant.cayley import CayleyGraph, build_family


@pytest.fixture(scope="session")
def thm14_graph():
    """Cay(D_24, S_1) for p = 3"""
    return CayleyGraph(build_family("thm14", 12, p=3, pi=1))


@pytest.fixture(scope="session")
def thm14_search(thm14_graph):
    return search_automorphisms(thm14_graph)


@pytest.fixture(scope="session")
def thm14_aut(thm14_search):
    return thm14_search.group
