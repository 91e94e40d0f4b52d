"""Exact integer polynomial arithmetic and characteristic polynomials.

Everything here is division-free or modular: characteristic polynomials of
(possibly huge) integer matrices are computed either by the Berkowitz
algorithm (pure bigint, no divisions) or, for larger matrices, by Hessenberg
reduction modulo a battery of word-sized primes glued back with the CRT.
The two routes are cross-checked against each other in the test suite.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import sympy

BERKOWITZ_LIMIT = 64


class IntPolynomial:
    """A dense polynomial with int coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs) if coeffs else (0,)

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls([0])

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls([1])

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls([0, 1])

    @classmethod
    def from_roots_factors(cls, factors) -> "IntPolynomial":
        """Product of (poly, multiplicity) pairs."""
        out = cls.one()
        for p, mult in factors:
            for _ in range(mult):
                out = out * p
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_divide(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient self / other; raises ValueError unless it divides exactly."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 1)
        d = other.coeffs[-1]
        for i in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[i + len(other.coeffs) - 1]
            if c % d != 0:
                raise ValueError("polynomial division has a remainder")
            q[i] = c // d
            if q[i]:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q[i] * b
        if any(rem):
            raise ValueError("polynomial division has a remainder")
        return IntPolynomial(q)

    def reflect(self) -> "IntPolynomial":
        """The polynomial p(-x)."""
        return IntPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shifted(self, k: int) -> "IntPolynomial":
        """Multiply by x^k."""
        return IntPolynomial((0,) * k + self.coeffs)

    def to_sympy(self):
        x = sympy.Symbol("x")
        return sympy.Poly(list(reversed(self.coeffs)), x)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return str(sympy.factor(self.to_sympy().as_expr()))


def parse_factored(text: str) -> IntPolynomial:
    """Parse an expression like ``(x-3)*(x-1)*x**2*(x+2)**2`` exactly."""
    x = sympy.Symbol("x")
    expr = sympy.sympify(text, locals={"x": x})
    poly = sympy.Poly(sympy.expand(expr), x)
    return IntPolynomial(reversed([int(c) for c in poly.all_coeffs()]))


# ---------------------------------------------------------------------------
# Characteristic polynomials of integer matrices (of x*I - A, monic)

def charpoly(matrix) -> IntPolynomial:
    """det(x*I - A) for a square integer matrix, exactly."""
    n = len(matrix)
    if n <= BERKOWITZ_LIMIT:
        return charpoly_berkowitz(matrix)
    return charpoly_crt(matrix)


def charpoly_berkowitz(matrix) -> IntPolynomial:
    """Division-free characteristic polynomial (Berkowitz's vector recurrence)."""
    n = len(matrix)
    if n == 0:
        return IntPolynomial.one()
    a = [[int(v) for v in row] for row in matrix]
    # vec holds the coefficients of det(xI - A_r) for the leading r x r block,
    # highest degree first.
    vec = [1, -a[0][0]]
    for r in range(1, n):
        # Toeplitz column: 1, -a_rr, -(R A^k C) for the bordering row R, col C.
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        block = [a[i][:r] for i in range(r)]
        toep = [1, -a[r][r]]
        cur = col[:]
        for _ in range(r):
            toep.append(-sum(x * y for x, y in zip(row, cur)))
            cur = [sum(block[i][j] * cur[j] for j in range(r)) for i in range(r)]
        nxt = [0] * (r + 2)
        for i, t in enumerate(toep):
            if t:
                for j, v in enumerate(vec):
                    if i + j <= r + 1:
                        nxt[i + j] += t * v
        vec = nxt
    return IntPolynomial(reversed(vec))


def _coefficient_bound_bits(n: int, max_abs: int) -> int:
    """Bits needed for any coefficient of det(xI - A), |A_ij| <= max_abs.

    The degree-(n-k) coefficient is a sum of C(n, k) k x k minors, each at
    most k^{k/2} max_abs^k in absolute value (Hadamard).
    """
    if max_abs == 0:
        return 2
    best = 0.0
    for k in range(n + 1):
        bits = (
            math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        ) / math.log(2)
        if k:
            bits += (k / 2) * math.log2(k) + k * math.log2(max_abs)
        best = max(best, bits)
    return int(best) + 2


def _charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial mod p via Hessenberg reduction.

    Entries stay below p < 2^25, so int64 dot products over n <= 2^13 rows
    cannot overflow.
    """
    n = a.shape[0]
    h = a % p
    for j in range(n - 2):
        # find a pivot below the subdiagonal
        piv = None
        for i in range(j + 1, n):
            if h[i, j] % p:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[[j + 1, piv]] = h[[piv, j + 1]]
            h[:, [j + 1, piv]] = h[:, [piv, j + 1]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for i in range(j + 2, n):
            m = int(h[i, j]) * inv % p
            if m:
                h[i] = (h[i] - m * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + m * h[:, i]) % p
    # charpoly of a Hessenberg matrix by the leading-minor recurrence
    #   p_m = (x - h[m-1,m-1]) p_{m-1}
    #         - sum_k h[m-1-k,m-1] (prod_{l<k} subdiag) p_{m-1-k},
    # with the correction sum done as one matvec over the stored rows.
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1 : m + 1] = prev[:m]
        cur -= int(h[m - 1, m - 1]) * prev
        if m > 1:
            coefs = np.zeros(m - 1, dtype=np.int64)
            prod = 1
            for k in range(1, m):
                prod = prod * int(h[m - k, m - k - 1]) % p
                coefs[k - 1] = prod * int(h[m - 1 - k, m - 1]) % p
            # coefficient and entry magnitudes are < p < 2^25, so the dot
            # products stay well inside int64 for any feasible n
            cur -= coefs @ polys[m - 2 :: -1][: m - 1]
        polys[m] = cur % p
    return [int(c) for c in polys[n]]


def charpoly_crt(matrix) -> IntPolynomial:
    """Exact charpoly by Hessenberg mod deterministic ~2^25 primes + CRT."""
    a = np.asarray(matrix, dtype=np.int64)
    n = a.shape[0]
    if n > 8192:
        raise ValueError("matrix too large for the int64 modular kernel")
    max_abs = int(np.abs(a).max()) if n else 0
    bits = _coefficient_bound_bits(n, max_abs)
    primes = []
    p = 1 << 25
    got = 0
    while got * 24 < bits + 1:
        p = int(sympy.prevprime(p))
        primes.append(p)
        got += 1
    residues = [_charpoly_mod(a, p) for p in primes]
    mod = 1
    coeffs = [0] * (n + 1)
    for p, res in zip(primes, residues):
        if mod == 1:
            coeffs = [r % p for r in res]
            mod = p
            continue
        inv = pow(mod % p, p - 2, p)
        new_mod = mod * p
        for i in range(n + 1):
            delta = (res[i] - coeffs[i]) % p
            coeffs[i] = (coeffs[i] + mod * (delta * inv % p)) % new_mod
        mod = new_mod
    half = mod // 2
    coeffs = [c - mod if c > half else c for c in coeffs]
    return IntPolynomial(coeffs)


def det_bareiss(matrix) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    a = [[int(v) for v in row] for row in matrix]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Truncated power series over Q (used for zeta functions and Euler products)

def series_mul(a: list, b: list, trunc: int) -> list:
    out = [Fraction(0)] * trunc
    for i, x in enumerate(a[:trunc]):
        if x:
            for j, y in enumerate(b[: trunc - i]):
                if y:
                    out[i + j] += x * y
    return out


def series_inverse(a: list, trunc: int) -> list:
    """Multiplicative inverse of a power series with invertible constant term."""
    if not a or a[0] == 0:
        raise ValueError("series has no inverse (zero constant term)")
    c0 = Fraction(1, 1) / a[0]
    out = [Fraction(0)] * trunc
    out[0] = c0
    for k in range(1, trunc):
        s = Fraction(0)
        for j in range(1, min(k, len(a) - 1) + 1):
            s += a[j] * out[k - j]
        out[k] = -c0 * s
    return out


def poly_to_series(p: IntPolynomial, trunc: int) -> list:
    out = [Fraction(c) for c in p.coeffs[:trunc]]
    return out + [Fraction(0)] * (trunc - len(out))
