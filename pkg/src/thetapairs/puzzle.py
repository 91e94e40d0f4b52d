"""Sliding-block puzzle graphs, path contraction, and the Klein-four action.

A position on a graph with vertices 0..n is a tuple ``f`` with ``f[v]`` the
label sitting on vertex v; label 0 is the blank.  A move swaps the blank with
a neighboring label, i.e. ``g = f o (v, w)`` for an edge {v, w} touching the
blank.
"""

from __future__ import annotations

import math
import pickle
from dataclasses import dataclass, field
from itertools import permutations

import networkx as nx

from .theta import (
    ThetaGraph,
    build_theta,
    compose_vperm,
    hub_paths,
    invert_vperm,
    klein_four,
    path_perm,
)

DEFAULT_VERTEX_CAP = 9


class PuzzleSizeError(ValueError):
    """The position space (|V|)! exceeds the configured cap."""


# ---------------------------------------------------------------------------
# Full puzzle graph

@dataclass
class PuzzleGraph:
    positions: list            # tuples, index -> position
    index: dict                # position -> index
    edges: list                # sorted (i, j) index pairs, undirected
    component_ids: list        # per-position component label

    @property
    def num_components(self) -> int:
        return len(set(self.component_ids))

    def component_of(self, pos: tuple) -> int:
        return self.component_ids[self.index[pos]]


def _move_targets(pos: tuple, adjacency: list[list[int]]) -> list[tuple]:
    blank = pos.index(0)
    out = []
    for w in adjacency[blank]:
        lst = list(pos)
        lst[blank], lst[w] = lst[w], lst[blank]
        out.append(tuple(lst))
    return out


def _adjacency(num_vertices: int, edges) -> list[list[int]]:
    adj = [[] for _ in range(num_vertices)]
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    return [sorted(nbrs) for nbrs in adj]


def build_puz(num_vertices: int, edges, vertex_cap: int = DEFAULT_VERTEX_CAP) -> PuzzleGraph:
    """Materialize puz(Gamma) for a simple connected graph on 0..num_vertices-1."""
    if num_vertices > vertex_cap:
        raise PuzzleSizeError(
            f"{num_vertices} vertices means {math.factorial(num_vertices)} positions; "
            f"cap is {vertex_cap} vertices"
        )
    adj = _adjacency(num_vertices, edges)
    if any(not nbrs for nbrs in adj) or not _connected(num_vertices, adj):
        raise ValueError("puzzle graph must be connected")
    positions = sorted(permutations(range(num_vertices)))
    index = {p: i for i, p in enumerate(positions)}
    edge_list = []
    parent = list(range(len(positions)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, pos in enumerate(positions):
        for tgt in _move_targets(pos, adj):
            j = index[tgt]
            if i < j:
                edge_list.append((i, j))
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    roots = {}
    component_ids = []
    for i in range(len(positions)):
        r = find(i)
        component_ids.append(roots.setdefault(r, len(roots)))
    return PuzzleGraph(positions, index, edge_list, component_ids)


def _connected(num_vertices: int, adj) -> bool:
    seen = [False] * num_vertices
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


def build_theta_puz(graph: ThetaGraph, vertex_cap: int = DEFAULT_VERTEX_CAP) -> PuzzleGraph:
    return build_puz(graph.num_vertices, graph.edges, vertex_cap)


def components_expected(num_vertices: int, edges) -> str:
    """Wilson's prediction: 'connected', 'two_components', or 'exception'.

    Polygons and the graph theta0 = theta(2,1) fall outside the theorem's
    hypothesis and are reported as exceptions.
    """
    g = nx.Graph()
    g.add_nodes_from(range(num_vertices))
    g.add_edges_from(edges)
    if not nx.is_connected(g):
        raise ValueError("Wilson's theorem needs a connected graph")
    if num_vertices >= 3 and all(d == 2 for _, d in g.degree()):
        return "exception"  # polygon
    theta0 = build_theta(2, 1)
    h = nx.Graph()
    h.add_nodes_from(range(theta0.num_vertices))
    h.add_edges_from(theta0.edges)
    if nx.is_isomorphic(g, h):
        return "exception"  # theta0
    return "two_components" if nx.is_bipartite(g) else "connected"


# ---------------------------------------------------------------------------
# Generic path contraction (slow oracle)

def path_contraction(num_vertices: int, edges) -> tuple[list[int], list[tuple[int, int]]]:
    """Splice out every degree-2 vertex; returns (kept vertices, edge multiset).

    Edges are returned as sorted vertex pairs with multiplicity; a self-loop
    appears as (v, v).  Raises if the graph collapses to a single loop (the
    input was a cycle).
    """
    adj = {v: [] for v in range(num_vertices)}
    edge_id = 0
    incident = {}
    ends = {}
    for u, w in edges:
        ends[edge_id] = [u, w]
        adj[u].append(edge_id)
        adj[w].append(edge_id)
        edge_id += 1
    for v in range(num_vertices):
        incident[v] = adj[v]
    queue = [v for v in incident if len(incident[v]) == 2]
    removed = set()
    while queue:
        v = queue.pop()
        if v in removed or len(incident[v]) != 2:
            continue
        e1, e2 = incident[v]
        if e1 == e2:
            # v carries a self-loop and nothing else: an isolated cycle remains.
            raise ValueError("contraction collapsed a component to a single loop")
        u = ends[e1][0] if ends[e1][1] == v else ends[e1][1]
        w = ends[e2][0] if ends[e2][1] == v else ends[e2][1]
        # splice e1, e2 into a single edge u -- w
        ends[e1] = [u, w]
        incident[w] = [e1 if e == e2 else e for e in incident[w]]
        del ends[e2], incident[v]
        removed.add(v)
        for x in (u, w):
            if x not in removed and len(incident[x]) == 2:
                queue.append(x)
    kept = sorted(incident)
    out_edges = sorted(tuple(sorted(e)) for e in ends.values())
    return kept, out_edges


# ---------------------------------------------------------------------------
# Contracted theta-puzzle graph, built directly on hub-blank positions

@dataclass
class ContractedPuzzle:
    """puz~(theta(a,b)) or its f0-component, as an undirected 3-regular graph.

    Vertices are positions with the blank at a hub; the edge generators are
    the three blank-sliding cycles along p1, p2, p3 (conjugated by rho when
    the blank sits at the far hub).
    """

    graph: ThetaGraph
    positions: list
    index: dict
    edges: list                        # (i, j, k): move along path p_{k+1}
    component_ids: list
    kaction: dict = field(repr=False)  # name -> vertex permutation of theta

    @property
    def num_vertices(self) -> int:
        return len(self.positions)

    def blank_component(self, pos: tuple) -> int:
        return 0 if pos[0] == 0 else 1

    def act(self, pos: tuple, vp: tuple) -> tuple:
        """Right action f -> f o vp."""
        return tuple(pos[vp[v]] for v in range(len(pos)))

    def undirected_edge_set(self):
        return sorted(tuple(sorted((i, j))) for i, j, _ in self.edges)

    def component_vertex_ids(self, pos: tuple) -> list[int]:
        cid = self.component_ids[self.index[pos]]
        return [i for i, c in enumerate(self.component_ids) if c == cid]


def initial_position(graph: ThetaGraph) -> tuple:
    return tuple(range(graph.num_vertices))


def contracted_puzzle(graph: ThetaGraph) -> ContractedPuzzle:
    """Build puz~(theta(a,b)) without materializing the full position space.

    Contracted vertices are exactly the positions with the blank at v0 or
    v_{a+1}; from a blank-at-v0 position f the neighbors are f o sigma_{p_k},
    and from blank-at-v_{a+1} they are f o (rho sigma_{p_k} rho).
    """
    size = graph.num_vertices
    hub0, hub1 = graph.hub0, graph.hub1
    kact = klein_four(graph)
    r = kact["rho"]
    movers0 = [path_perm(p, size) for p in hub_paths(graph)]
    movers1 = [compose_vperm(compose_vperm(r, m), r) for m in movers0]

    positions = []
    for rest in permutations(range(1, size)):
        for hub in (hub0, hub1):
            pos = [0] * size
            pos[hub] = 0
            it = iter(rest)
            for v in range(size):
                if v != hub:
                    pos[v] = next(it)
            positions.append(tuple(pos))
    positions.sort()
    index = {p: i for i, p in enumerate(positions)}

    edges = []
    parent = list(range(len(positions)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, pos in enumerate(positions):
        movers = movers0 if pos[hub0] == 0 else movers1
        for k, vp in enumerate(movers):
            tgt = tuple(pos[vp[v]] for v in range(size))
            j = index[tgt]
            if i < j:
                edges.append((i, j, k))
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    roots = {}
    component_ids = []
    for i in range(len(positions)):
        rt = find(i)
        component_ids.append(roots.setdefault(rt, len(roots)))
    cp = ContractedPuzzle(graph, positions, index, edges, component_ids, kact)
    assert len(positions) == 2 * math.factorial(graph.n)
    return cp


def k_action_orbits(cp: ContractedPuzzle, subgroup: list[tuple]):
    """Orbit partitions of vertices and directed edges under a subgroup of K.

    ``subgroup`` is a list of theta-vertex permutations (including the
    identity).  Returns (vertex_orbit_of, edge_orbits) where edge_orbits maps
    a directed position pair to a canonical orbit representative.  Raises if
    the action fails to preserve edges or to act freely.
    """
    edge_pairs = set()
    for i, j, _ in cp.edges:
        edge_pairs.add((i, j))
        edge_pairs.add((j, i))

    vertex_orbit = {}
    for i, pos in enumerate(cp.positions):
        if i in vertex_orbit:
            continue
        try:
            orbit = [cp.index[cp.act(pos, vp)] for vp in subgroup]
        except KeyError as exc:
            raise ValueError(
                "subgroup element does not preserve the hub-blank positions"
            ) from exc
        if len(set(orbit)) != len(subgroup):
            raise ValueError("action is not free on vertices")
        for v in orbit:
            vertex_orbit[v] = i

    edge_orbit = {}
    for (i, j) in edge_pairs:
        if (i, j) in edge_orbit:
            continue
        images = []
        for vp in subgroup:
            img = (
                cp.index[cp.act(cp.positions[i], vp)],
                cp.index[cp.act(cp.positions[j], vp)],
            )
            if img not in edge_pairs:
                raise ValueError("subgroup element is not a puzzle-graph automorphism")
            images.append(img)
        rep = min(images)
        for img in images:
            edge_orbit[img] = rep
    return vertex_orbit, edge_orbit


# ---------------------------------------------------------------------------
# Cache for large contracted puzzles

def save_cache(cp: ContractedPuzzle, path) -> None:
    with open(path, "wb") as fh:
        pickle.dump({"a": cp.graph.a, "b": cp.graph.b, "positions": cp.positions,
                     "edges": cp.edges, "component_ids": cp.component_ids}, fh)


def load_cache(path, graph: ThetaGraph) -> ContractedPuzzle:
    with open(path, "rb") as fh:
        data = pickle.load(fh)
    if (data["a"], data["b"]) != (graph.a, graph.b):
        raise ValueError("cache file is for a different (a, b)")
    positions = data["positions"]
    return ContractedPuzzle(
        graph, positions, {p: i for i, p in enumerate(positions)},
        data["edges"], data["component_ids"], klein_four(graph),
    )
