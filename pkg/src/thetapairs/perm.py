"""Exact permutation arithmetic on the points {1, ..., n}.

The composition convention is fixed once and for all: ``p * q`` is the
permutation "apply q first, then p", i.e. ``(p * q)(x) = p(q(x))``.  The
product tables of the degree-3 walk example pin this convention down
empirically; see tests/test_walks.py.
"""

from __future__ import annotations

import re
from functools import reduce


class Permutation:
    """An immutable bijection on {1, ..., degree}.

    Stored in one-line form: ``images[i]`` is the image of the point ``i+1``.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(1, degree + 1))

    def __call__(self, point: int) -> int:
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} out of range 1..{self.degree}")
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: apply ``other`` first, then ``self``."""
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} != {other.degree}")
        return Permutation(self.images[i - 1] for i in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(inv)

    def sign(self) -> int:
        """+1 for even permutations, -1 for odd."""
        transpositions = sum(len(c) - 1 for c in self.cycles(include_fixed=True))
        return -1 if transpositions % 2 else 1

    def parity(self) -> str:
        return "even" if self.sign() == 1 else "odd"

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.degree + 1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, each cycle starting at its minimum."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen[nxt - 1] = True
                nxt = self(nxt)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def extend(self, degree: int) -> "Permutation":
        """The same permutation viewed in a larger symmetric group."""
        if degree < self.degree:
            raise ValueError("cannot shrink a permutation")
        return Permutation(self.images + tuple(range(self.degree + 1, degree + 1)))

    def to_list(self) -> list[int]:
        return list(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return format_cycles(self)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse disjoint-cycle notation, e.g. ``"(1,2)(3,4)"``.

    An empty string or ``"()"`` is the identity.  The degree defaults to the
    largest point mentioned.
    """
    stripped = text.replace(" ", "")
    body = _CYCLE_RE.sub("", stripped)
    if body:
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for group in _CYCLE_RE.findall(stripped):
        if not group:
            continue
        try:
            points = [int(tok) for tok in group.split(",")]
        except ValueError as exc:
            raise ValueError(f"malformed cycle notation: {text!r}") from exc
        if any(p < 1 for p in points):
            raise ValueError(f"points must be >= 1 in {text!r}")
        cycles.append(points)
    flat = [p for c in cycles for p in c]
    if len(set(flat)) != len(flat):
        raise ValueError(f"repeated point in {text!r}")
    n = max(flat, default=0)
    if degree is not None:
        if degree < n:
            raise ValueError(f"degree {degree} too small for {text!r}")
        n = degree
    images = list(range(1, n + 1))
    for cyc in cycles:
        for i, p in enumerate(cyc):
            images[p - 1] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


def format_cycles(p: Permutation) -> str:
    """Disjoint-cycle notation with fixed points omitted; identity is ``()``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def product(perms, degree: int | None = None) -> Permutation:
    """Left-to-right product ``p1 * p2 * ...`` (rightmost applied first)."""
    perms = list(perms)
    if not perms:
        if degree is None:
            raise ValueError("empty product needs an explicit degree")
        return Permutation.identity(degree)
    return reduce(lambda a, b: a * b, perms)
