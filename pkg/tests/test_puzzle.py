import math

import pytest

from thetapairs.puzzle import (
    PuzzleSizeError,
    build_puz,
    build_theta_puz,
    components_expected,
    contracted_puzzle,
    initial_position,
    k_action_orbits,
    path_contraction,
)
from thetapairs.theta import build_theta, klein_four


def test_size_cap():
    with pytest.raises(PuzzleSizeError):
        build_puz(10, [(i, i + 1) for i in range(9)] + [(9, 0)])


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        build_puz(4, [(0, 1), (2, 3)])


def test_theta10_puzzle_connected():
    g = build_theta(1, 0)
    puz = build_theta_puz(g)
    assert len(puz.positions) == 24
    assert puz.num_components == 1
    assert components_expected(g.num_vertices, g.edges) == "connected"


def test_theta20_puzzle_two_components():
    g = build_theta(2, 0)
    puz = build_theta_puz(g)
    assert len(puz.positions) == math.factorial(6)
    assert puz.num_components == 2
    assert components_expected(g.num_vertices, g.edges) == "two_components"


def test_wilson_exceptions_flagged():
    g0 = build_theta(2, 1)
    assert components_expected(g0.num_vertices, g0.edges) == "exception"
    # polygon
    assert components_expected(5, [(i, (i + 1) % 5) for i in range(5)]) == "exception"


def test_theta0_puzzle_really_is_exceptional():
    # the (2,1) puzzle splits into 6 components, not 1 or 2
    g = build_theta(2, 1)
    puz = build_theta_puz(g)
    assert puz.num_components == 6


def test_path_contraction_on_theta():
    g = build_theta(2, 3)
    kept, edges = path_contraction(g.num_vertices, g.edges)
    assert kept == [0, 3]
    assert edges == [(0, 3)] * 3


def test_path_contraction_rejects_cycle():
    with pytest.raises(ValueError):
        path_contraction(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.mark.parametrize("a,b", [(1, 0), (1, 1), (1, 2), (2, 0)])
def test_counting_law(a, b):
    """The contracted puzzle has 2*n! vertices, and n! per component when
    the theta graph is bipartite."""
    g = build_theta(a, b)
    cp = contracted_puzzle(g)
    assert cp.num_vertices == 2 * math.factorial(g.n)
    if g.is_bipartite():
        comp = cp.component_vertex_ids(initial_position(g))
        assert len(comp) == math.factorial(g.n)
    else:
        assert len(set(cp.component_ids)) == 1


def test_contracted_puzzle_matches_generic_contraction():
    """Direct hub-blank construction == path contraction of the full puzzle
    graph, as an edge multiset."""
    g = build_theta(1, 0)
    cp = contracted_puzzle(g)
    puz = build_theta_puz(g)
    hub_positions = [
        i for i, pos in enumerate(puz.positions) if pos.index(0) in (g.hub0, g.hub1)
    ]
    kept, edges = path_contraction(len(puz.positions), puz.edges)
    assert sorted(kept) == hub_positions
    expected = sorted(
        tuple(
            sorted(
                (
                    cp.index[puz.positions[u]],
                    cp.index[puz.positions[w]],
                )
            )
        )
        for u, w in edges
    )
    assert expected == cp.undirected_edge_set()


def test_contracted_puzzle_is_three_regular():
    cp = contracted_puzzle(build_theta(1, 2))
    deg = [0] * cp.num_vertices
    for i, j, _ in cp.edges:
        deg[i] += 1
        deg[j] += 1
    assert set(deg) == {3}


def test_k_action_orbit_counts_theta10():
    g = build_theta(1, 0)
    cp = contracted_puzzle(g)
    k = klein_four(g)
    full = list(k.values())
    vo, eo = k_action_orbits(cp, full)
    assert len(set(vo.values())) == 3
    assert len(set(eo.values())) == 9
    vo2, _ = k_action_orbits(cp, [k["id"], k["rhopsi"]])
    assert len(set(vo2.values())) == 6


def test_k_action_requires_automorphisms():
    g = build_theta(1, 0)
    cp = contracted_puzzle(g)
    bogus = (1, 0, 2, 3)  # swaps a hub with a non-hub: not in Aut(puz~)
    with pytest.raises(ValueError):
        k_action_orbits(cp, [tuple(range(4)), bogus])


def test_cache_roundtrip(tmp_path):
    from thetapairs.puzzle import load_cache, save_cache

    g = build_theta(1, 0)
    cp = contracted_puzzle(g)
    path = tmp_path / "cp.pkl"
    save_cache(cp, path)
    cp2 = load_cache(path, g)
    assert cp2.positions == cp.positions
    assert cp2.edges == cp.edges
    with pytest.raises(ValueError):
        load_cache(path, build_theta(1, 2))
