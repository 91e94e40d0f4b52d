"""Quotient graphs, characteristic polynomials, zeta functions and L-functions.

The double cover Y (the contracted puzzle graph, or its distinguished
component in the alternating case) carries a free action of the Klein group
K = {id, rho, psi, rho*psi}.  Quotients by the subgroups of K give the
covering diamond Y -> X_<rho>, X_<psi>, X_<rho*psi> -> Z, and every spectral
statement verified here is an exact identity between the five characteristic
polynomials or between truncated zeta/L series built from prime cycles of Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cayley import build_cayley
from .poly import (
    IntPolynomial,
    charpoly,
    det_bareiss,
    poly_to_series,
    series_inverse,
    series_mul,
)
from .puzzle import ContractedPuzzle, contracted_puzzle, initial_position
from .theta import (
    CASE_EVEN_GOOD,
    ThetaGraph,
    build_theta,
    generating_pair,
)

# The four characters of K, each row indexed by the element names.  chi_h is
# the nontrivial character with kernel {id, h}, the one whose L-function
# multiplies zeta_Z to give zeta of the intermediate quotient Y/<h>.
CHARACTER_TABLE = {
    "one": {"id": 1, "rho": 1, "psi": 1, "rhopsi": 1},
    "rho": {"id": 1, "rho": 1, "psi": -1, "rhopsi": -1},
    "psi": {"id": 1, "rho": -1, "psi": 1, "rhopsi": -1},
    "rhopsi": {"id": 1, "rho": -1, "psi": -1, "rhopsi": 1},
}

SUBGROUPS = {
    "id": ("id",),
    "rho": ("id", "rho"),
    "psi": ("id", "psi"),
    "rhopsi": ("id", "rhopsi"),
    "K": ("id", "rho", "psi", "rhopsi"),
}


# ---------------------------------------------------------------------------
# Directed edge systems (shared by quotients and plain graphs)

@dataclass
class EdgeSystem:
    """Directed edges with a reversal involution and per-vertex out-lists."""

    num_vertices: int
    tails: list
    heads: list
    reverse: list

    def __post_init__(self):
        self.out = [[] for _ in range(self.num_vertices)]
        for e, t in enumerate(self.tails):
            self.out[t].append(e)
        for e, r in enumerate(self.reverse):
            assert self.reverse[r] == e
            assert self.tails[e] == self.heads[r]

    @property
    def num_edges(self) -> int:
        return len(self.tails)

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.num_vertices for _ in range(self.num_vertices)]
        for t, h in zip(self.tails, self.heads):
            a[t][h] += 1
        return a

    def has_loops(self) -> bool:
        return any(t == h for t, h in zip(self.tails, self.heads))

    def is_regular(self, d: int) -> bool:
        return all(len(o) == d for o in self.out)


def simple_edge_system(num_vertices: int, edges) -> EdgeSystem:
    """Both orientations of each undirected edge of a simple graph."""
    tails, heads = [], []
    for u, w in sorted(tuple(sorted(e)) for e in edges):
        tails += [u, w]
        heads += [w, u]
    reverse = [e + 1 if e % 2 == 0 else e - 1 for e in range(len(tails))]
    return EdgeSystem(num_vertices, tails, heads, reverse)


def complete_graph_edge_system(n: int) -> EdgeSystem:
    return simple_edge_system(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph_edge_system(n: int) -> EdgeSystem:
    return simple_edge_system(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------
# The covering family of a theta graph

@dataclass
class CoveringFamily:
    """Y with its K-action, ready to be quotiented."""

    graph: ThetaGraph
    cp: ContractedPuzzle = field(repr=False)
    vertex_ids: list = field(repr=False)   # cp indices forming Y
    local: dict = field(repr=False)        # cp index -> local index

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_ids)

    def directed_edges(self):
        """Directed edges of Y as (local tail, local head) pairs."""
        for i, j, _ in self.cp.edges:
            if i in self.local:
                yield (self.local[i], self.local[j])
                yield (self.local[j], self.local[i])

    def adjacency(self) -> list[list[int]]:
        n = self.num_vertices
        a = [[0] * n for _ in range(n)]
        for t, h in self.directed_edges():
            a[t][h] += 1
        return a

    def act_local(self, li: int, name: str) -> int:
        pos = self.cp.positions[self.vertex_ids[li]]
        img = self.cp.index[self.cp.act(pos, self.cp.kaction[name])]
        return self.local[img]


def covering_family(a: int, b: int) -> CoveringFamily:
    """Y(theta(a,b)): the whole contracted puzzle when a+b is odd, else the
    component of the starting position (on which K acts by the parity lemma)."""
    graph = build_theta(a, b)
    cp = contracted_puzzle(graph)
    if (a + b) % 2 == 1:
        vertex_ids = list(range(cp.num_vertices))
    else:
        if graph.case() != CASE_EVEN_GOOD:
            raise ValueError(
                f"theta({a},{b}): K does not act on a single component"
            )
        vertex_ids = cp.component_vertex_ids(initial_position(graph))
    local = {v: i for i, v in enumerate(vertex_ids)}
    fam = CoveringFamily(graph, cp, vertex_ids, local)
    # K must stabilize the chosen vertex set (acting freely).
    for name in SUBGROUPS["K"]:
        for li in range(fam.num_vertices):
            fam.act_local(li, name)
    return fam


# ---------------------------------------------------------------------------
# Quotients by subgroups of K

@dataclass
class QuotientGraph:
    family: CoveringFamily = field(repr=False)
    subgroup: tuple                       # element names
    reps: list                            # local Y indices, one per orbit
    orbit_of: list = field(repr=False)    # local Y index -> quotient index
    edges: EdgeSystem = field(repr=False)
    edge_orbit_of: dict = field(repr=False)  # directed Y pair -> quotient edge

    @property
    def num_vertices(self) -> int:
        return len(self.reps)

    def adjacency(self) -> list[list[int]]:
        return self.edges.adjacency()

    def num_loops(self) -> int:
        return sum(1 for t, h in zip(self.edges.tails, self.edges.heads) if t == h)

    def charpoly(self) -> IntPolynomial:
        return charpoly(self.adjacency())

    def frobenius(self, cycle: list[int], start: int | None = None) -> str:
        """The deck transformation carrying a lift's start to its end.

        ``cycle`` is a list of quotient edge ids forming a closed
        non-backtracking path; the result is independent of the chosen start
        in the fiber and of rotations of the cycle (K is abelian).
        """
        fam = self.family
        if start is None:
            start = self.reps[self.edges.tails[cycle[0]]]
        cur = start
        for e in cycle:
            key = (cur, e)
            if key not in self._lift:
                raise ValueError("lift left the fiber (start not over the cycle)")
            cur = self._lift[key]
        # the deck group of Y -> Y/H is H itself (all of K for Z)
        for name in self.subgroup:
            if fam.act_local(start, name) == cur:
                return name
        raise AssertionError("no deck transformation matches the lift endpoints")

    def __post_init__(self):
        # lookup: (local Y tail, quotient edge) -> local Y head
        self._lift = {}
        for (t, h), qe in self.edge_orbit_of.items():
            self._lift[(t, qe)] = h


def quotient(fam: CoveringFamily, subgroup_name: str) -> QuotientGraph:
    names = SUBGROUPS[subgroup_name]
    n = fam.num_vertices
    images = {name: [fam.act_local(i, name) for i in range(n)] for name in names}

    orbit_of = [-1] * n
    reps = []
    for i in range(n):
        if orbit_of[i] >= 0:
            continue
        orbit = {images[name][i] for name in names}
        if len(orbit) != len(names):
            raise ValueError("subgroup action is not free on vertices")
        q = len(reps)
        reps.append(i)
        for v in orbit:
            orbit_of[v] = q

    directed = list(fam.directed_edges())
    directed_set = set(directed)
    edge_orbit_of = {}
    tails, heads, orbit_reps = [], [], []
    for t, h in directed:
        if (t, h) in edge_orbit_of:
            continue
        imgs = []
        for name in names:
            img = (images[name][t], images[name][h])
            if img not in directed_set:
                raise ValueError("subgroup element is not a graph automorphism")
            imgs.append(img)
        if len(set(imgs)) != len(names):
            raise ValueError("subgroup action is not free on directed edges")
        qe = len(tails)
        for img in imgs:
            edge_orbit_of[img] = qe
        tails.append(orbit_of[t])
        heads.append(orbit_of[h])
        orbit_reps.append(min(imgs))
    reverse = [edge_orbit_of[(h, t)] for (t, h) in orbit_reps]
    es = EdgeSystem(len(reps), tails, heads, reverse)
    assert es.num_edges * len(names) == len(directed)
    assert es.is_regular(3)
    return QuotientGraph(fam, names, reps, orbit_of, es, edge_orbit_of)


def covering_diamond(a: int, b: int) -> dict:
    """Y and its four proper quotients, keyed 'Y', 'rho', 'psi', 'rhopsi', 'Z'."""
    fam = covering_family(a, b)
    out = {"Y": fam}
    for key, name in (("rho", "rho"), ("psi", "psi"),
                      ("rhopsi", "rhopsi"), ("Z", "K")):
        out[key] = quotient(fam, name)
    return out


# ---------------------------------------------------------------------------
# Spectral identities

def diamond_charpolys(a: int, b: int, diamond: dict | None = None) -> dict:
    d = diamond or covering_diamond(a, b)
    return {
        "Y": charpoly(d["Y"].adjacency()),
        "rho": d["rho"].charpoly(),
        "psi": d["psi"].charpoly(),
        "rhopsi": d["rhopsi"].charpoly(),
        "Z": d["Z"].charpoly(),
    }


def verify_spectra1(a: int, b: int, polys: dict | None = None) -> dict:
    """P_Y * P_Z^2 = P_rho * P_psi * P_rhopsi, exactly."""
    p = polys or diamond_charpolys(a, b)
    lhs = p["Y"] * p["Z"] * p["Z"]
    rhs = p["rho"] * p["psi"] * p["rhopsi"]
    if lhs != rhs:
        raise AssertionError(f"product identity fails for ({a},{b})")
    return {"a": a, "b": b, "polys": {k: list(v.coeffs) for k, v in p.items()},
            "identity": "P_Y*P_Z^2 == P_rho*P_psi*P_rhopsi", "ok": True}


def verify_spectra2(a: int, b: int, polys: dict | None = None) -> dict:
    """The half-reflection identities between the intermediate quotients."""
    p = polys or diamond_charpolys(a, b)
    pair = generating_pair(a, b)
    sign = -1 if (pair.group_order // 2) % 2 else 1
    q_rho = p["rho"].exact_divide(p["Z"])
    q_psi = p["psi"].exact_divide(p["Z"])
    if q_rho != sign * q_psi.reflect():
        raise AssertionError(f"reflection identity fails for ({a},{b})")
    if p["rhopsi"] != sign * (p["Z"] * p["Z"].reflect()):
        raise AssertionError(f"rho*psi identity fails for ({a},{b})")
    if q_rho.degree != pair.group_order // 2:
        raise AssertionError("quotient degree is not |G|/2")
    return {"a": a, "b": b, "sign": sign,
            "P_rho_over_Z": list(q_rho.coeffs),
            "P_psi_over_Z": list(q_psi.coeffs), "ok": True}


def cayley_charpolys(a: int, b: int) -> tuple[IntPolynomial, IntPolynomial]:
    pair = generating_pair(a, b)
    p1 = charpoly(build_cayley(list(pair.S1)).adjacency_matrix())
    p2 = charpoly(build_cayley(list(pair.S2)).adjacency_matrix())
    return p1, p2


def verify_nonisomorphic(a: int, b: int) -> dict:
    """A spectral non-isomorphism certificate for the pair."""
    p1, p2 = cayley_charpolys(a, b)
    if p1 == p2:
        raise AssertionError(
            f"({a},{b}): the two Cayley graphs are cospectral -- no certificate"
        )
    k = next(i for i, (c1, c2) in enumerate(zip(p1.coeffs, p2.coeffs)) if c1 != c2)
    return {"a": a, "b": b, "certificate": "charpoly",
            "first_differing_degree": k,
            "P1": list(p1.coeffs), "P2": list(p2.coeffs), "ok": True}


# ---------------------------------------------------------------------------
# Zeta functions

def ihara_zeta_inverse(es: EdgeSystem, cross_check: bool = True) -> IntPolynomial:
    """1/zeta(u) for a 3-regular loop-free graph.

    Computed as (1-u^2)^{|V|/2} * u^{|V|} * P((1+2u^2)/u) with P the
    characteristic polynomial of the adjacency matrix, and (optionally)
    cross-checked against direct evaluation/interpolation of the Bass
    determinant det(I - uA + 2u^2 I).
    """
    if es.has_loops():
        raise ValueError("graph has loops; the Bass formula does not apply here")
    if not es.is_regular(3):
        raise ValueError("graph is not 3-regular")
    n = es.num_vertices
    if n % 2:
        raise ValueError("a 3-regular graph has evenly many vertices")
    a = es.adjacency()
    p = charpoly(a)
    # u^n * P((1+2u^2)/u) = sum_k c_k (1+2u^2)^k u^{n-k}
    base = IntPolynomial([1, 0, 2])
    det_part = IntPolynomial.zero()
    power = IntPolynomial.one()
    for k, c in enumerate(p.coeffs):
        if c:
            det_part = det_part + (c * power).shifted(n - k)
        power = power * base
    if cross_check:
        pts = range(-n, n + 1)
        for u0 in pts:
            m = [[(1 + 2 * u0 * u0 if i == j else 0) - u0 * a[i][j]
                  for j in range(n)] for i in range(n)]
            if det_bareiss(m) != det_part(u0):
                raise AssertionError("determinant and charpoly forms disagree")
    circ = IntPolynomial([1, 0, -1]) ** (n // 2)
    return circ * det_part


def zeta_inverse_of_quotient(q: QuotientGraph) -> IntPolynomial:
    return ihara_zeta_inverse(q.edges, cross_check=q.num_vertices <= 40)


# ---------------------------------------------------------------------------
# Prime cycles, Frobenius, L-functions

DEFAULT_PRIME_CAP = 500_000


def prime_cycles(es: EdgeSystem, max_len: int, cap: int = DEFAULT_PRIME_CAP):
    """Rotation classes of primitive non-backtracking cycles, length <= max_len.

    Each class is returned once, as the lexicographically least rotation of
    its edge-id sequence.  A self-reversed loop edge (a quotient edge whose
    reverse is itself) counts as a length-1 prime: going around it once does
    not backtrack, while following it twice does.
    """
    if max_len > 14:
        raise ValueError("max_len > 14 would enumerate too many primes")
    primes = []
    budget = cap

    def is_primitive(seq):
        k = len(seq)
        for d in range(1, k):
            if k % d == 0 and seq == seq[d:] + seq[:d]:
                return False
        return True

    for e0 in range(es.num_edges):
        if es.reverse[e0] == e0 and es.tails[e0] == es.heads[e0]:
            primes.append((e0,))
        # DFS over non-backtracking walks starting with e0, all edges >= e0
        stack = [(e0, [e0])]
        while stack:
            cur, seq = stack.pop()
            budget -= 1
            if budget < 0:
                raise ValueError("prime-cycle enumeration exceeded the class cap")
            v = es.heads[cur]
            if v == es.tails[e0] and es.reverse[seq[-1]] != e0:
                if is_primitive(seq) and min(
                    seq[i:] + seq[:i] for i in range(len(seq))
                ) == seq:
                    primes.append(tuple(seq))
            if len(seq) < max_len:
                for nxt in es.out[v]:
                    if nxt >= e0 and nxt != es.reverse[cur]:
                        stack.append((nxt, seq + [nxt]))
    return primes


def euler_product_series(primes, trunc: int, weight=None) -> list:
    """prod over primes of (1 - w(C) u^{nu(C)})^{-1}, truncated.

    ``weight`` maps a prime to +1/-1 (a character value); defaults to 1.
    """
    out = [Fraction(0)] * trunc
    out[0] = Fraction(1)
    for c in primes:
        nu = len(c)
        if nu >= trunc:
            continue
        w = 1 if weight is None else weight(c)
        factor = [Fraction(0)] * trunc
        k = 0
        wk = 1
        while k < trunc:
            factor[k] = Fraction(wk)
            k += nu
            wk *= w
        out = series_mul(out, factor, trunc)
    return out


def l_function_series(z: QuotientGraph, chi: str, trunc: int,
                      primes=None) -> list:
    """Truncated Artin L-function L(u, chi, Y/Z) from Frobenius data."""
    if primes is None:
        primes = prime_cycles(z.edges, max_len=trunc)
    table = CHARACTER_TABLE[chi]
    return euler_product_series(
        primes, trunc, weight=lambda c: table[z.frobenius(list(c))]
    )


def verify_L_factorization(a: int, b: int, trunc: int = 10) -> dict:
    """All four zeta/L factorization identities, as series to degree trunc."""
    d = covering_diamond(a, b)
    z = d["Z"]
    primes = prime_cycles(z.edges, max_len=min(trunc, 14))
    zeta_z = poly_to_series(zeta_inverse_of_quotient(z), trunc)
    # trivial character: the Euler product rebuilds zeta_Z itself
    triv = euler_product_series(primes, trunc)
    if series_mul(zeta_z, triv, trunc) != [Fraction(1)] + [Fraction(0)] * (trunc - 1):
        raise AssertionError("trivial-character Euler product != zeta_Z")
    report = {"a": a, "b": b, "trunc": trunc, "num_primes": len(primes),
              "identities": []}
    ls = {}
    for h in ("rho", "psi", "rhopsi"):
        ls[h] = l_function_series(z, h, trunc, primes)
        zx = poly_to_series(zeta_inverse_of_quotient(d[h]), trunc)
        if series_mul(zx, ls[h], trunc) != zeta_z:
            raise AssertionError(f"zeta_X<{h}> * L(chi_{h}) != zeta_Z")
        report["identities"].append(f"zeta_X<{h}>^-1 * L(u,chi_{h}) == zeta_Z^-1")
    zy = poly_to_series(ihara_zeta_inverse(
        family_edge_system(d["Y"]), cross_check=False), trunc)
    rhs = zeta_z
    for h in ("rho", "psi", "rhopsi"):
        rhs = series_mul(rhs, series_inverse(ls[h], trunc), trunc)
    if zy != rhs:
        raise AssertionError("zeta_Y^-1 != zeta_Z^-1 * prod L^-1")
    report["identities"].append("zeta_Y^-1 == zeta_Z^-1 * prod_chi L(u,chi)^-1")
    # the parity lemma's series shadow: L(u, chi_rho) = L(-u, chi_psi)
    flipped = [(-1) ** k * c for k, c in enumerate(ls["psi"])]
    if ls["rho"] != flipped:
        raise AssertionError("L(u,chi_rho) != L(-u,chi_psi)")
    report["identities"].append("L(u,chi_rho) == L(-u,chi_psi)")
    report["ok"] = True
    return report


def family_edge_system(fam: CoveringFamily) -> EdgeSystem:
    """Both orientations of each Y-edge, multiplicity preserved."""
    tails, heads = [], []
    for i, j, _ in fam.cp.edges:
        if i in fam.local:
            tails += [fam.local[i], fam.local[j]]
            heads += [fam.local[j], fam.local[i]]
    reverse = [e + 1 if e % 2 == 0 else e - 1 for e in range(len(tails))]
    return EdgeSystem(fam.num_vertices, tails, heads, reverse)


def frobenius_parity_report(a: int, b: int, max_len: int = 10) -> dict:
    """Check: nu(C) even <=> Frobenius in {id, rhopsi}, over all primes."""
    d = covering_diamond(a, b)
    z = d["Z"]
    counts = {}
    for c in prime_cycles(z.edges, max_len):
        f = z.frobenius(list(c))
        even = len(c) % 2 == 0
        if even != (f in ("id", "rhopsi")):
            raise AssertionError(
                f"parity violated: length {len(c)} prime has Frobenius {f}"
            )
        counts[(len(c), f)] = counts.get((len(c), f), 0) + 1
    return {"a": a, "b": b, "max_len": max_len,
            "counts": {f"{l}:{f}": v for (l, f), v in sorted(counts.items())},
            "ok": True}
