"""Degenerate Bernoulli numbers and polynomials, degenerate Stirling numbers
of the second kind, and the classical Bernoulli layer used as the lambda = 0
cross-check.

The degenerate Bernoulli numbers b_n are characterised by b_0 = 1 together
with the vanishing, for every N >= 2, of

    sum_{j=1}^{N} C(N, j) * one_fall(j) * b_{N-j}        (one_fall(j) = (1)(1-L)...(1-(j-1)L))

which yields the triangular recurrence implemented here:

    b_{N-1} = -(1/N) * sum_{j=2}^{N} C(N, j) * one_fall(j) * b_{N-j}.

The degenerate Stirling numbers T(n, k) are the connection coefficients
expanding the degenerate falling factorial in ordinary falling factorials,

    x(x-L)...(x-(n-1)L) = sum_k T(n, k) * x(x-1)...(x-k+1),

and satisfy the two-term triangle recurrence

    T(n+1, k) = T(n, k-1) + (k - n*L) * T(n, k).

Both tables are memoized per ring instance and extended on demand; a
separate linear-system solver (``stirling_row_by_linear_solve``) recovers a
Stirling row straight from the defining expansion and serves as an
independent oracle for the recurrence.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import List

from .factorials import binomial, degen_falling, degen_falling_prefix
from .ring import Ring, Scalar

__all__ = [
    "BernoulliTable",
    "StirlingTriangle",
    "degen_bernoulli_numbers",
    "degen_bernoulli_poly",
    "degen_stirling2",
    "stirling_row_by_linear_solve",
    "classical_bernoulli_numbers",
    "classical_bernoulli_poly_coeffs",
    "classical_stirling2",
]


class BernoulliTable:
    """Memoized degenerate Bernoulli numbers b_0, b_1, ... over one ring.

    Extension is synchronized, so a shared table may be grown from several
    threads; reads of already-built entries are plain list lookups.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        self._values: List[Scalar] = [ring.one]
        self._one_fall: List[Scalar] = [ring.one]
        self._lock = threading.Lock()

    def get(self, n: int) -> Scalar:
        if n < 0:
            raise ValueError("Bernoulli index must be >= 0")
        self.extend_to(n)
        return self._values[n]

    def prefix(self, max_n: int) -> List[Scalar]:
        """Values b_0 .. b_max_n as a list copy."""
        self.extend_to(max_n)
        return self._values[: max_n + 1]

    def extend_to(self, max_n: int) -> None:
        if len(self._values) > max_n:
            return
        ring = self.ring
        one = ring.one
        lam = ring.lambda_element()
        with self._lock:
            while len(self._values) <= max_n:
                m = len(self._values)
                big_n = m + 1
                while len(self._one_fall) <= big_n:
                    j = len(self._one_fall)
                    self._one_fall.append(
                        self._one_fall[-1] * (one - (j - 1) * lam)
                    )
                acc = ring.zero
                for j in range(2, big_n + 1):
                    acc = acc + binomial(big_n, j) * (
                        self._one_fall[j] * self._values[big_n - j]
                    )
                self._values.append(ring.div_exact_int(ring.negate(acc), big_n))


class StirlingTriangle:
    """Memoized triangle of degenerate Stirling numbers T(n, k) over one ring."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self._rows: List[List[Scalar]] = [[ring.one]]
        self._lock = threading.Lock()

    def get(self, n: int, k: int) -> Scalar:
        if n < 0:
            raise ValueError("Stirling row index must be >= 0")
        if k < 0 or k > n:
            return self.ring.zero
        self.extend_to(n)
        return self._rows[n][k]

    def row(self, n: int) -> List[Scalar]:
        self.extend_to(n)
        return list(self._rows[n])

    def extend_to(self, max_n: int) -> None:
        if len(self._rows) > max_n:
            return
        ring = self.ring
        lam = ring.lambda_element()
        with self._lock:
            while len(self._rows) <= max_n:
                n = len(self._rows)  # building row n from row n - 1
                prev = self._rows[-1]
                row = [ring.zero] * (n + 1)
                for k in range(1, n + 1):
                    factor = ring.embed_int(k) - lam * (n - 1)
                    entry = factor * prev[k] if k < n else ring.zero
                    row[k] = entry + prev[k - 1]
                self._rows.append(row)


def _ring_table(ring: Ring, key: str, factory):
    table = ring.cache.get(key)
    if table is None:
        table = ring.cache[key] = factory(ring)
    return table


def degen_bernoulli_numbers(max_n: int, ring: Ring) -> BernoulliTable:
    """The ring's memoized Bernoulli table, extended to cover index max_n."""
    table: BernoulliTable = _ring_table(ring, "bernoulli", BernoulliTable)
    table.extend_to(max_n)
    return table


def degen_bernoulli_poly(n: int, x, ring: Ring) -> Scalar:
    """Degenerate Bernoulli polynomial value b_n(x) over the ring.

    Computed as the binomial convolution of the Bernoulli numbers with the
    degenerate falling factorials of x:

        b_n(x) = sum_{k=0}^{n} C(n, k) * b_k * x(x-L)...(x-(n-k-1)L).
    """
    table = degen_bernoulli_numbers(n, ring)
    x_fall = degen_falling_prefix(x, n, ring)
    acc = ring.zero
    for k in range(n + 1):
        acc = acc + binomial(n, k) * (table.get(k) * x_fall[n - k])
    return acc


def degen_stirling2(n: int, k: int, ring: Ring) -> Scalar:
    """Degenerate Stirling number of the second kind T(n, k); zero outside
    0 <= k <= n."""
    table: StirlingTriangle = _ring_table(ring, "stirling", StirlingTriangle)
    return table.get(n, k)


def stirling_row_by_linear_solve(n: int, ring: Ring) -> List[Scalar]:
    """Row n of the Stirling triangle, recovered from the defining expansion.

    Sampling the expansion at x = 0..n gives a lower-triangular linear
    system (the ordinary falling factorial x(x-1)...(x-k+1) vanishes for
    integer x < k, and the diagonal entries are x!), solved here by forward
    substitution.  Independent of the triangle recurrence, for use as a
    test oracle.
    """
    if n < 0:
        raise ValueError("Stirling row index must be >= 0")
    row: List[Scalar] = []
    for x in range(n + 1):
        rhs = degen_falling(x, n, ring)
        for k in range(x):
            rhs = rhs - math.perm(x, k) * row[k]
        row.append(ring.div_exact_int(rhs, math.factorial(x)))
    return row


def classical_bernoulli_numbers(max_n: int) -> List[Fraction]:
    """Classical Bernoulli numbers B_0..B_max_n (convention B_1 = -1/2),
    via the binomial recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0."""
    values = [Fraction(1)]
    for m in range(1, max_n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += binomial(m + 1, j) * values[j]
        values.append(-acc / (m + 1))
    return values


def classical_bernoulli_poly_coeffs(m: int) -> List[Fraction]:
    """Coefficients of the classical Bernoulli polynomial B_m(u), ascending
    powers of u: the coefficient of u^j is C(m, j) * B_{m-j}."""
    numbers = classical_bernoulli_numbers(m)
    return [binomial(m, j) * numbers[m - j] for j in range(m + 1)]


def classical_stirling2(n: int, k: int) -> int:
    """Classical Stirling number of the second kind S(n, k), by the integer
    recurrence S(n, k) = k*S(n-1, k) + S(n-1, k-1)."""
    if k < 0 or k > n:
        return 0
    row = [1]  # row n = 0
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for j in range(1, m + 1):
            new[j] = j * (row[j] if j < m else 0) + row[j - 1]
        row = new
    return row[k]
