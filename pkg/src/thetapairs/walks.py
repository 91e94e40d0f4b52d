"""Exact simple-random-walk evolution on Cayley graphs.

Distributions are kept as integer path counts with the implicit denominator
d^t (d = out-degree), never as floats: every equality asserted here is an
identity of rationals, and Fraction only enters when a value is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .cayley import CayleyGraph, build_cayley, diameter, step_bijections
from .perm import Permutation
from .theta import generating_pair


@dataclass
class PathCountVector:
    counts: list       # per-vertex big-integer path counts
    t: int
    d: int             # out-degree, the base of the implicit denominator

    def total(self) -> int:
        return sum(self.counts)

    def probability(self, i: int) -> Fraction:
        return Fraction(self.counts[i], self.d ** self.t)

    def distribution(self) -> list[Fraction]:
        denom = self.d ** self.t
        return [Fraction(c, denom) for c in self.counts]


def initial_vector(x: CayleyGraph, start: int = 0) -> PathCountVector:
    counts = [0] * x.num_vertices
    counts[start] = 1
    return PathCountVector(counts, 0, x.out_degree)


def step(v: PathCountVector, x: CayleyGraph) -> PathCountVector:
    if len(v.counts) != x.num_vertices or v.d != x.out_degree:
        raise ValueError("vector is not indexed compatibly with the graph")
    nxt = [0] * x.num_vertices
    for i, targets in enumerate(x.out):
        c = v.counts[i]
        if c:
            for j in targets:
                nxt[j] += c
    out = PathCountVector(nxt, v.t + 1, v.d)
    assert out.total() == v.d ** out.t, "path-count conservation violated"
    return out


def walk(x: CayleyGraph, T: int, start: int = 0):
    """Yield the path-count vectors for t = 0..T."""
    v = initial_vector(x, start)
    yield v
    for _ in range(T):
        v = step(v, x)
        yield v


def tv_distance(v: PathCountVector) -> Fraction:
    """Total variation distance from the uniform distribution, exactly."""
    n = len(v.counts)
    denom = v.d ** v.t
    return sum(abs(Fraction(c, denom) - Fraction(1, n)) for c in v.counts) / 2


def brute_force_counts(gens, t: int) -> dict:
    """Independent oracle: enumerate all d^t generator words from the identity."""
    degree = gens[0].degree
    counts = {}
    for word in iproduct(gens, repeat=t):
        g = Permutation.identity(degree)
        for s in word:
            g = g * s
        counts[g] = counts.get(g, 0) + 1
    return counts


def default_horizon(x1: CayleyGraph, x2: CayleyGraph) -> int:
    # Past mixing onset: where the two TV curves could plausibly diverge.
    return 2 * max(diameter(x1), diameter(x2)) + 4


# ---------------------------------------------------------------------------
# Verification reports

def verify_walk_equality(a: int, b: int, T: int | None = None) -> dict:
    """Check counts1(g) = counts2(phi_[t](g)) and the exact TV equality, t <= T."""
    phi0, phi1, y1, y2 = step_bijections(a, b)
    pair = generating_pair(a, b)
    x1 = build_cayley(list(pair.S1))
    x2 = build_cayley(list(pair.S2))
    if T is None:
        T = default_horizon(x1, x2)

    phi_idx = []
    for phi in (phi0, phi1):
        phi_idx.append([x2.index[phi[g]] for g in x1.elements])

    v1 = initial_vector(x1)
    v2 = initial_vector(x2)
    rows = []
    for t in range(T + 1):
        mapped = phi_idx[t % 2]
        for i in range(x1.num_vertices):
            if v1.counts[i] != v2.counts[mapped[i]]:
                raise AssertionError(
                    f"count mismatch at t={t}, g={x1.elements[i]}: "
                    f"{v1.counts[i]} != {v2.counts[mapped[i]]}"
                )
        tv1, tv2 = tv_distance(v1), tv_distance(v2)
        if tv1 != tv2:
            raise AssertionError(f"TV mismatch at t={t}: {tv1} != {tv2}")
        rows.append({"t": t, "tv": str(tv1)})
        if t < T:
            v1, v2 = step(v1, x1), step(v2, x2)
    return {"a": a, "b": b, "T": T, "group": pair.group_name(),
            "tv_sequence": rows, "equal": True}


def verify_projection(a: int, b: int, T: int = 8) -> dict:
    """Walk on Y(G,S) from (id,0) vs walk on X(G,S) from id, per fiber."""
    pair = generating_pair(a, b)
    report = {"a": a, "b": b, "T": T, "sets": []}
    for name, gens in (("S1", pair.S1), ("S2", pair.S2)):
        x = build_cayley(list(gens))
        y = build_cayley(list(gens), with_c2=True)
        vx = initial_vector(x)
        vy = initial_vector(y, y.index[(Permutation.identity(pair.n), 0)])
        for t in range(T + 1):
            live = t % 2
            for j, (g, c) in enumerate(y.elements):
                if c == live:
                    if vy.counts[j] != vx.counts[x.index[g]]:
                        raise AssertionError(
                            f"projection mismatch for {name} at t={t}, g={g}"
                        )
                elif vy.counts[j] != 0:
                    raise AssertionError(
                        f"dead fiber carries mass for {name} at t={t}, g={g}"
                    )
            if t < T:
                vx, vy = step(vx, x), step(vy, y)
        report["sets"].append({"set": name, "ok": True})
    return report


def mu_table_csv(x: CayleyGraph, T: int) -> str:
    """CSV of exact walk probabilities: rows t, columns the group elements."""
    header = "t," + ",".join(str(el) for el in x.elements)
    lines = [header]
    for v in walk(x, T):
        denom = v.d ** v.t
        lines.append(
            str(v.t) + "," + ",".join(f"{c}/{denom}" for c in v.counts)
        )
    return "\n".join(lines)


def tv_sequence_csv(a: int, b: int, T: int) -> str:
    pair = generating_pair(a, b)
    x1 = build_cayley(list(pair.S1))
    x2 = build_cayley(list(pair.S2))
    lines = ["t,tv1,tv2,equal"]
    for v1, v2 in zip(walk(x1, T), walk(x2, T)):
        tv1, tv2 = tv_distance(v1), tv_distance(v2)
        lines.append(f"{v1.t},{tv1},{tv2},{tv1 == tv2}")
    return "\n".join(lines)
