"""Theta graphs, their Klein-four automorphisms, and the derived generating pairs.

The graph ``theta(a, b)`` consists of two hub vertices v0 and v_{a+1} joined
by three internally disjoint paths of lengths a+1, a+1 and b+1.  Vertices are
indexed 0..n with n = 2a+b+1:

* first arc:   v0, v1, ..., v_{a+1}
* second arc:  v0, v_{2a+1}, v_{2a}, ..., v_{a+2}, v_{a+1}
* middle arc:  v0, v_{2a+2}, ..., v_{2a+b+1}, v_{a+1}   (the single edge
  {v0, v_{a+1}} when b = 0)

Vertex permutations are plain tuples ``vp`` with ``vp[i]`` the image of
vertex i, composed with the same "apply right factor first" convention as
:class:`~thetapairs.perm.Permutation`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .perm import Permutation

# Congruence-case tags for (a, b).
CASE_ODD = "condition1"          # a+b odd, (a,b) != (2,1): G = S_n
CASE_EVEN_GOOD = "condition2"    # a even, b = 0 mod 4:     G = A_n
CASE_WILSON = "wilson-exception" # (a,b) = (2,1), the graph theta0
CASE_MIXED = "mixed"             # a+b even but not condition 2


class ConstructionError(ValueError):
    """Raised when (a, b) does not admit the generating-pair construction."""


@dataclass(frozen=True)
class ThetaGraph:
    a: int
    b: int
    edges: frozenset = field(repr=False)

    @property
    def n(self) -> int:
        return 2 * self.a + self.b + 1

    @property
    def num_vertices(self) -> int:
        return self.n + 1

    @property
    def hub0(self) -> int:
        return 0

    @property
    def hub1(self) -> int:
        return self.a + 1

    def neighbors(self, v: int) -> list[int]:
        return sorted(w for e in self.edges for u, w in (e, e[::-1]) if u == v)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_bipartite(self) -> bool:
        # Cycle lengths are 2a+2 and a+b+2, so bipartite iff a+b is even.
        return (self.a + self.b) % 2 == 0

    def case(self) -> str:
        if (self.a, self.b) == (2, 1):
            return CASE_WILSON
        if (self.a + self.b) % 2 == 1:
            return CASE_ODD
        if self.a % 2 == 0 and self.b % 4 == 0:
            return CASE_EVEN_GOOD
        return CASE_MIXED

    def to_dot(self) -> str:
        lines = ["graph theta {"]
        for v in range(self.num_vertices):
            lines.append(f'  v{v};')
        for u, w in sorted(self.edges):
            lines.append(f"  v{u} -- v{w};")
        lines.append("}")
        return "\n".join(lines)


def build_theta(a: int, b: int) -> ThetaGraph:
    """Construct theta(a, b).  Requires a >= 1, b >= 0."""
    if a < 1:
        raise ValueError(f"need a >= 1, got a={a}")
    if b < 0:
        raise ValueError(f"need b >= 0, got b={b}")
    n = 2 * a + b + 1
    edges = set()
    for i in range(n):
        if i != 2 * a + 1:
            edges.add((i, i + 1))
    edges.add((0, 2 * a + 1))
    if b > 0:
        edges.add((0, 2 * a + 2))
        edges.add((a + 1, 2 * a + b + 1))
    else:
        # Degenerate middle arc: the single hub-to-hub edge.
        edges.add((0, a + 1))
    edges = frozenset(tuple(sorted(e)) for e in edges)
    graph = ThetaGraph(a, b, edges)
    assert len(edges) == 2 * a + b + 3
    assert graph.degree(0) == 3 and graph.degree(a + 1) == 3
    return graph


# ---------------------------------------------------------------------------
# Vertex permutations

def compose_vperm(p: tuple, q: tuple) -> tuple:
    """Apply q first, then p."""
    return tuple(p[i] for i in q)


def invert_vperm(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, img in enumerate(p):
        inv[img] = i
    return tuple(inv)


def identity_vperm(size: int) -> tuple:
    return tuple(range(size))


def is_automorphism(graph: ThetaGraph, vp: tuple) -> bool:
    return all(tuple(sorted((vp[u], vp[w]))) in graph.edges for u, w in graph.edges)


def rho(graph: ThetaGraph) -> tuple:
    """The 180-degree rotation: swaps the hubs and the two length-(a+1) arcs."""
    a, b, n = graph.a, graph.b, graph.n
    images = []
    for i in range(n + 1):
        if i <= 2 * a + 1:
            images.append((i + a + 1) % (2 * a + 2))
        else:
            images.append(4 * a + b + 3 - i)
    vp = tuple(images)
    assert is_automorphism(graph, vp)
    return vp


def psi(graph: ThetaGraph) -> tuple:
    """The vertical flip: swaps the hubs, reversing every arc in place."""
    a, b, n = graph.a, graph.b, graph.n
    images = []
    for i in range(n + 1):
        if i <= a + 1:
            images.append(a + 1 - i)
        elif i <= 2 * a + 1:
            images.append(3 * a + 3 - i)
        else:
            images.append(4 * a + b + 3 - i)
    vp = tuple(images)
    assert is_automorphism(graph, vp)
    return vp


def klein_four(graph: ThetaGraph) -> dict[str, tuple]:
    """The group {id, rho, psi, rho*psi} acting on the vertices."""
    r, s = rho(graph), psi(graph)
    return {
        "id": identity_vperm(graph.num_vertices),
        "rho": r,
        "psi": s,
        "rhopsi": compose_vperm(r, s),
    }


def hub_paths(graph: ThetaGraph) -> list[tuple[int, ...]]:
    """The three simple paths p1, p2, p3 from v0 to v_{a+1}, as vertex tuples."""
    a, b = graph.a, graph.b
    p1 = tuple(range(a + 2))
    if b > 0:
        p2 = (0,) + tuple(range(2 * a + 2, 2 * a + b + 2)) + (a + 1,)
    else:
        p2 = (0, a + 1)
    p3 = (0,) + tuple(range(2 * a + 1, a + 1, -1)) + (a + 1,)
    return [p1, p2, p3]


def path_perm(path: tuple[int, ...], size: int) -> tuple:
    """The vertex cycle sliding the blank along ``path``: v_i -> v_{i+1}, last -> first."""
    images = list(range(size))
    for i, v in enumerate(path):
        images[v] = path[(i + 1) % len(path)]
    return tuple(images)


def induced(vp: tuple) -> Permutation:
    """The permutation of {1..n} induced by a vertex permutation fixing v0."""
    if vp[0] != 0:
        raise ValueError(f"vertex permutation does not fix v0: {vp}")
    return Permutation(vp[1:])


# ---------------------------------------------------------------------------
# Generating pairs

@dataclass(frozen=True)
class GeneratingPair:
    a: int
    b: int
    n: int
    group_tag: str          # "S" or "A"
    case_tag: str
    S1: tuple               # (sigma_1, sigma_2, sigma_3)
    S2: tuple               # (tau_1, tau_2, tau_3)

    @property
    def group_order(self) -> int:
        import math
        order = math.factorial(self.n)
        return order if self.group_tag == "S" else order // 2

    def group_name(self) -> str:
        return f"{self.group_tag}{self.n}"

    def to_json(self) -> str:
        from .perm import format_cycles
        return json.dumps(
            {
                "a": self.a,
                "b": self.b,
                "n": self.n,
                "group": self.group_name(),
                "group_order": self.group_order,
                "case": self.case_tag,
                "S1": [format_cycles(p) for p in self.S1],
                "S2": [format_cycles(p) for p in self.S2],
            },
            indent=2,
        )


def raw_generators(graph: ThetaGraph) -> tuple[tuple, tuple]:
    """(sigma_1..3, tau_1..3) for any theta graph, before case validation.

    sigma_k is induced by sigma_{p_k} o rho and tau_k by sigma_{p_k} o psi;
    both composites fix v0, which is asserted rather than assumed.
    """
    size = graph.num_vertices
    r, s = rho(graph), psi(graph)
    sigmas, taus = [], []
    for path in hub_paths(graph):
        sp = path_perm(path, size)
        sigmas.append(induced(compose_vperm(sp, r)))
        taus.append(induced(compose_vperm(sp, s)))
    return tuple(sigmas), tuple(taus)


# Expected parity of the generators in the four a+b-even congruence classes,
# keyed by (a mod 2, b mod 4): (S1 parity, S2 parity, rho in Aut(puz0), psi in Aut(puz0)).
LEMMA_TABLE = {
    (0, 0): ("even", "even", True, True),
    (0, 2): ("odd", "odd", False, False),
    (1, 1): ("even", "odd", True, False),
    (1, 3): ("odd", "even", False, True),
}


def sigma_tau_sets(graph: ThetaGraph) -> GeneratingPair:
    """The generating pair (S1, S2) with its group, for condition 1 or 2 inputs."""
    case = graph.case()
    if case == CASE_WILSON:
        raise ConstructionError(
            "(a,b) = (2,1) is the Wilson exception theta0; no pair is defined"
        )
    if case == CASE_MIXED:
        raise ConstructionError(
            f"(a,b) = ({graph.a},{graph.b}) is a mixed congruence class; "
            "the pair construction requires a+b odd or (a even, b = 0 mod 4)"
        )
    sigmas, taus = raw_generators(graph)
    if case == CASE_EVEN_GOOD:
        group_tag = "A"
        if any(p.sign() != 1 for p in sigmas + taus):
            raise AssertionError("condition-2 generators must all be even")
    else:
        group_tag = "S"
    pair = GeneratingPair(graph.a, graph.b, graph.n, group_tag, case, sigmas, taus)
    assert len(set(sigmas)) == 3 and len(set(taus)) == 3
    return pair


def generating_pair(a: int, b: int) -> GeneratingPair:
    return sigma_tau_sets(build_theta(a, b))
