"""Product kernels: degenerate falling/rising factorials, ordinary falling
factorials, and exact binomial coefficients, generic over the scalar ring.
"""

from __future__ import annotations

import math
from typing import List, Union

from .ring import Ring, Scalar

__all__ = [
    "binomial",
    "degen_falling",
    "degen_rising",
    "falling",
    "degen_falling_prefix",
    "degen_rising_prefix",
]

ScalarOrInt = Union[Scalar, int]


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero when k < 0 or k > n."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _as_scalar(x: ScalarOrInt, ring: Ring) -> Scalar:
    if isinstance(x, int):
        return ring.embed_int(x)
    return x


def degen_falling(x: ScalarOrInt, n: int, ring: Ring) -> Scalar:
    """x(x-L)(x-2L)...(x-(n-1)L); ring one when n == 0.

    Collapses to x^n at lambda = 0 and to the ordinary falling factorial
    at lambda = 1.
    """
    return degen_falling_prefix(x, n, ring)[n]


def degen_rising(x: ScalarOrInt, n: int, ring: Ring) -> Scalar:
    """x(x+L)(x+2L)...(x+(n-1)L); ring one when n == 0."""
    return degen_rising_prefix(x, n, ring)[n]


def falling(x: ScalarOrInt, n: int, ring: Ring) -> Scalar:
    """Ordinary falling factorial x(x-1)...(x-n+1); ring one when n == 0."""
    if n < 0:
        raise ValueError("falling factorial requires n >= 0")
    term = _as_scalar(x, ring)
    acc = ring.one
    for i in range(n):
        acc = acc * (term - ring.embed_int(i))
    return acc


def degen_falling_prefix(x: ScalarOrInt, n: int, ring: Ring) -> List[Scalar]:
    """All prefixes [x_(0), x_(1), ..., x_(n)] of the degenerate falling
    product, computed in n ring multiplications."""
    if n < 0:
        raise ValueError("degenerate falling factorial requires n >= 0")
    term = _as_scalar(x, ring)
    lam = ring.lambda_element()
    out = [ring.one]
    for _ in range(n):
        out.append(out[-1] * term)
        term = term - lam
    return out


def degen_rising_prefix(x: ScalarOrInt, n: int, ring: Ring) -> List[Scalar]:
    """All prefixes of the degenerate rising product; see degen_falling_prefix."""
    if n < 0:
        raise ValueError("degenerate rising factorial requires n >= 0")
    term = _as_scalar(x, ring)
    lam = ring.lambda_element()
    out = [ring.one]
    for _ in range(n):
        out.append(out[-1] * term)
        term = term + lam
    return out
