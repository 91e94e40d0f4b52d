"""Cayley graphs X(G,S) and Y(G,S), double covers, and the step bijections.

Elements of Y(G,S) = Cay(G x C2, S x {1}) are pairs (Permutation, c) with
c in {0, 1}.  Vertex order is deterministic: BFS layer first, then the
one-line form (and c) lexicographically, so that every downstream matrix is
reproducible.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .perm import Permutation
from .puzzle import ContractedPuzzle, contracted_puzzle, initial_position
from .theta import (
    CASE_EVEN_GOOD,
    ConstructionError,
    build_theta,
    generating_pair,
    induced,
    klein_four,
)

DEFAULT_ELEMENT_CAP = 2_000_000


class ElementCapError(ValueError):
    """The BFS closure grew past the configured element cap."""


@dataclass
class CayleyGraph:
    gens: list                     # generators, as Permutations
    with_c2: bool
    elements: list                 # group elements (or (element, c) pairs)
    index: dict
    out: list                      # out[i][k] = target of the k-th generator
    field_names: tuple = ()

    @property
    def num_vertices(self) -> int:
        return len(self.elements)

    @property
    def out_degree(self) -> int:
        return len(self.gens)

    def edge_iter(self):
        for i, targets in enumerate(self.out):
            for k, j in enumerate(targets):
                yield i, j, k

    def has_loops(self) -> bool:
        return any(i == j for i, j, _ in self.edge_iter())

    def adjacency_matrix(self):
        n = self.num_vertices
        mat = [[0] * n for _ in range(n)]
        for i, j, _ in self.edge_iter():
            mat[i][j] += 1
        return mat

    def to_dot(self, name: str = "cayley") -> str:
        lines = [f"digraph {name} {{"]
        for i, el in enumerate(self.elements):
            lines.append(f'  n{i} [label="{_label(el)}"];')
        for i, j, k in self.edge_iter():
            lines.append(f'  n{i} -> n{j} [label="s{k + 1}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_edge_csv(self) -> str:
        rows = ["src,dst,generator"]
        for i, j, k in self.edge_iter():
            rows.append(f"{_label(self.elements[i])},{_label(self.elements[j])},s{k + 1}")
        return "\n".join(rows)


def _label(el) -> str:
    if isinstance(el, tuple):
        perm, c = el
        return f"({''.join(map(str, perm.images))};{c})"
    return "".join(map(str, el.images))


def _mul(el, gen, with_c2):
    if with_c2:
        perm, c = el
        return (perm * gen, (c + 1) % 2)
    return el * gen


def build_cayley(gens, with_c2: bool = False, start=None,
                 element_cap: int = DEFAULT_ELEMENT_CAP) -> CayleyGraph:
    """BFS closure of <gens> (or <gens x {1}>) from the identity.

    The edge g -> g*s uses the locked composition convention: the generator
    acts first, matching the puzzle move relation sigma_g = sigma_f sigma_k.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators must share a degree")
    if start is None:
        start = Permutation.identity(degree)
        if with_c2:
            start = (start, 0)

    inverses = [g.inverse() for g in gens]
    frontier = [start]
    seen = {start}
    layers = []
    while frontier:
        layers.append(sorted(frontier, key=_sort_key))
        nxt = []
        for el in frontier:
            for gen in gens + inverses:
                img = _mul(el, gen, with_c2)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        if len(seen) > element_cap:
            raise ElementCapError(
                f"group closure exceeds element cap {element_cap}"
            )
        frontier = nxt

    elements = [el for layer in layers for el in layer]
    index = {el: i for i, el in enumerate(elements)}
    out = [[index[_mul(el, gen, with_c2)] for gen in gens] for el in elements]
    return CayleyGraph(gens, with_c2, elements, index, out)


def _sort_key(el):
    if isinstance(el, tuple):
        return (el[0].images, el[1])
    return el.images


# ---------------------------------------------------------------------------
# BFS utilities

def _bfs_dist(x: CayleyGraph, source: int, reverse: bool = False) -> list:
    adj = [[] for _ in range(x.num_vertices)]
    for i, j, _ in x.edge_iter():
        if reverse:
            adj[j].append(i)
        else:
            adj[i].append(j)
    dist = [None] * x.num_vertices
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def is_strongly_connected(x: CayleyGraph) -> bool:
    fwd = _bfs_dist(x, 0)
    bwd = _bfs_dist(x, 0, reverse=True)
    return None not in fwd and None not in bwd


def diameter(x: CayleyGraph) -> int:
    """Directed diameter.

    Cayley graphs are vertex-transitive under left translation, which
    preserves directed edges, so every vertex has the same eccentricity and
    one BFS suffices.
    """
    if not is_strongly_connected(x):
        raise ValueError("diameter requires a strongly connected graph")
    return max(_bfs_dist(x, 0))


def is_bipartite_by_c2(y: CayleyGraph) -> bool:
    if not y.with_c2:
        return False
    return all(y.elements[i][1] != y.elements[j][1] for i, j, _ in y.edge_iter())


# ---------------------------------------------------------------------------
# Double cover Y -> X

@dataclass
class CoveringMap:
    total: CayleyGraph
    base: CayleyGraph
    vertex_map: list       # Y vertex index -> X vertex index

    def check(self) -> None:
        fibers = {}
        for i, xi in enumerate(self.vertex_map):
            fibers.setdefault(xi, []).append(i)
        if any(len(f) != 2 for f in fibers.values()):
            raise AssertionError("fibers are not two-to-one")
        for i, j, k in self.total.edge_iter():
            bi, bj = self.vertex_map[i], self.vertex_map[j]
            if self.base.out[bi][k] != bj:
                raise AssertionError("projection is not a graph morphism")
        # local bijectivity on out-edges holds because both graphs use the
        # same generator indexing; spot-check out-degrees anyway
        assert self.total.out_degree == self.base.out_degree


def double_cover(y: CayleyGraph) -> CoveringMap:
    """The projection (g, c) -> g from Y(G,S) onto X(G,S)."""
    if not y.with_c2:
        raise ValueError("double_cover needs a graph built with with_c2=True")
    x = build_cayley(y.gens, with_c2=False)
    vmap = [x.index[perm] for perm, _ in y.elements]
    cover = CoveringMap(y, x, vmap)
    cover.check()
    return cover


def lift_path(y: CayleyGraph, start: int, gen_word) -> int:
    """Unique lift of a base path (given by its generator word) from ``start``."""
    v = start
    for k in gen_word:
        v = y.out[v][k]
    return v


# ---------------------------------------------------------------------------
# Puzzle isomorphisms and the step bijections

def _sigma_c(pos: tuple, flip: tuple, hub1: int):
    """(sigma_f, c_f) for a hub-blank position, via the automorphism ``flip``."""
    if pos[0] == 0:
        return induced(pos), 0
    if pos[hub1] != 0:
        raise ValueError("position blank is not at a hub")
    composed = tuple(pos[flip[v]] for v in range(len(pos)))
    return induced(composed), 1


def puzzle_iso(cp: ContractedPuzzle, flavor: str, restrict_component: bool = True):
    """The bijection f -> (sigma_f, c_f) onto Y(G, S1) (rho) or Y(G, S2) (psi).

    Returns (vertex_ids, mapping, cayley) where mapping sends a contracted
    vertex id to a Y vertex index.  Edge preservation is checked exhaustively.
    For condition-2 inputs the domain is the f0-component puz~0.
    """
    if flavor not in ("rho", "psi"):
        raise ValueError("flavor must be 'rho' or 'psi'")
    graph = cp.graph
    pair = generating_pair(graph.a, graph.b)
    gens = pair.S1 if flavor == "rho" else pair.S2
    flip = cp.kaction[flavor]

    if restrict_component and pair.case_tag == CASE_EVEN_GOOD:
        vertex_ids = cp.component_vertex_ids(initial_position(graph))
    else:
        vertex_ids = list(range(cp.num_vertices))

    y = build_cayley(gens, with_c2=True)
    mapping = {}
    for i in vertex_ids:
        sigma, c = _sigma_c(cp.positions[i], flip, graph.hub1)
        mapping[i] = y.index[(sigma, c)]
    if len(set(mapping.values())) != len(vertex_ids) or len(vertex_ids) != y.num_vertices:
        raise AssertionError("puzzle map is not a bijection onto Y")

    y_edges = {(i, j) for i, j, _ in y.edge_iter()}
    keep = set(vertex_ids)
    for i, j, _ in cp.edges:
        if i not in keep:
            continue
        a, b = mapping[i], mapping[j]
        if (a, b) not in y_edges or (b, a) not in y_edges:
            raise AssertionError("puzzle isomorphism does not preserve edges")
    return vertex_ids, mapping, y


def step_bijections(a: int, b: int):
    """(phi0, phi1): the fiberwise parts of an isomorphism Y(G,S1) -> Y(G,S2).

    Built by composing the rho- and psi-based puzzle isomorphisms and
    normalizing by a left translation so that phi0(id) = id.  Returns
    (phi0, phi1, y1, y2) with phi0/phi1 dicts on the group elements.
    """
    graph = build_theta(a, b)
    cp = contracted_puzzle(graph)
    ids1, map1, y1 = puzzle_iso(cp, "rho")
    ids2, map2, y2 = puzzle_iso(cp, "psi")
    if ids1 != ids2:
        raise AssertionError("rho- and psi-isomorphisms disagree on the domain")

    inv1 = {v: i for i, v in map1.items()}
    phi_v = {y1.elements[v]: y2.elements[map2[inv1[v]]] for v in inv1}

    ident = Permutation.identity(graph.n)
    img, c = phi_v[(ident, 0)]
    if c != 0:
        # land back in the 0-fiber via the deck transformation (id, 1)
        phi_v = {k: (p, (d + 1) % 2) for k, (p, d) in phi_v.items()}
        img, c = phi_v[(ident, 0)]
    if not img.is_identity():
        shift = img.inverse()
        phi_v = {k: (shift * p, d) for k, (p, d) in phi_v.items()}

    phi0 = {g: p for (g, cin), (p, _) in phi_v.items() if cin == 0}
    phi1 = {g: p for (g, cin), (p, _) in phi_v.items() if cin == 1}
    if not phi0[ident].is_identity():
        raise ConstructionError("normalization failed to fix the identity")
    return phi0, phi1, y1, y2


def byproduct_isomorphism(a: int = 1, b: int = 1):
    """Explicit isomorphism Y(A_n, S1) = X(S_n, S2) for a mixed-class (a, b).

    For a odd and b = 1 mod 4 the f0-component of the contracted puzzle is
    simultaneously isomorphic to Y(A_n, S1) (via rho, with S1 even) and to
    X(S_n, S2) (via psi, with S2 odd), giving isomorphic Cayley graphs on the
    non-isomorphic groups A_n x C2 and S_n.  Returns (y1, x2, iso) where iso
    maps Y vertices to X vertices; edge preservation is checked exhaustively.
    """
    if a % 2 != 1 or b % 4 != 1:
        raise ConstructionError("byproduct needs a odd and b = 1 mod 4")
    from .theta import raw_generators

    graph = build_theta(a, b)
    sigmas, taus = raw_generators(graph)
    if any(s.sign() != 1 for s in sigmas) or any(t.sign() != -1 for t in taus):
        raise AssertionError("expected S1 even and S2 odd in this class")
    cp = contracted_puzzle(graph)
    component = cp.component_vertex_ids(initial_position(graph))

    y1 = build_cayley(list(sigmas), with_c2=True)   # closure is A_n x C2
    x2 = build_cayley(list(taus), with_c2=False)    # closure is S_n
    rho_v = cp.kaction["rho"]
    psi_v = cp.kaction["psi"]
    hub1 = graph.hub1

    iso = {}
    for i in component:
        pos = cp.positions[i]
        sigma, c = _sigma_c(pos, rho_v, hub1)
        tau, _ = _sigma_c(pos, psi_v, hub1)
        iso[y1.index[(sigma, c)]] = x2.index[tau]
    if len(iso) != y1.num_vertices or len(set(iso.values())) != x2.num_vertices:
        raise AssertionError("byproduct map is not a bijection")

    x_edges = {(i, j) for i, j, _ in x2.edge_iter()}
    for i, j, _ in y1.edge_iter():
        if (iso[i], iso[j]) not in x_edges:
            raise AssertionError("byproduct map does not preserve edges")
    return y1, x2, iso


def phi_to_json(phi0: dict, phi1: dict) -> str:
    order = sorted(phi0, key=lambda p: p.images)
    return json.dumps(
        {
            "elements": [list(p.images) for p in order],
            "phi0": [list(phi0[p].images) for p in order],
            "phi1": [list(phi1[p].images) for p in order],
        }
    )
