"""Six independent algorithms for S_k(n), the sum of degenerate falling
factorials (1)(1-L)...  + ... + (n)(n-L)..., plus the classical lambda = 0
power-sum formulas and an all-methods agreement report.

Methods (all exact, all equal):

* ``direct``    - term-by-term summation of the defining product.
* ``bernoulli`` - binomial convolution against the degenerate Bernoulli
  numbers, S_k(n) = (1/(k+1)) * sum_l C(k+1, l) * (n+1)_{k+1-l} * b_l.
* ``stirling``  - expansion through degenerate Stirling numbers,
  S_k(n) = sum_{l=1}^{k} T(k, l) * C(n+1, l+1) * l!.
* ``rec_a``     - recurrence on k driven by the telescoping of
  (j+1)_{k+1} - (j)_{k+1} across j = 1..n.
* ``rec_b``     - recurrence on k driven by the same telescoping of
  (j)_{k+1} - (j-1)_{k+1}, which brings in degenerate rising factorials
  with alternating signs.
* ``rec_prob``  - recurrence on k obtained from the survival-sum moment
  identity applied to the uniform distribution on {0..n}.

Every recurrence uses the base value S_0(n) = n and computes S_1..S_k
bottom-up within a single call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional

from .factorials import (
    binomial,
    degen_falling_prefix,
    degen_rising_prefix,
)
from .ring import RationalRing, Ring, Scalar, scalar_text
from .special import (
    classical_bernoulli_numbers,
    classical_bernoulli_poly_coeffs,
    degen_bernoulli_numbers,
    degen_stirling2,
)

__all__ = [
    "METHOD_NAMES",
    "FAULHABER_VARIANTS",
    "SumReport",
    "sum_direct",
    "sum_via_bernoulli",
    "sum_via_stirling",
    "sum_rec_a",
    "sum_rec_b",
    "sum_rec_prob",
    "sum_by_method",
    "sum_all_methods",
    "faulhaber_classical",
]

METHOD_NAMES = ("direct", "bernoulli", "stirling", "rec_a", "rec_b", "rec_prob")

FAULHABER_VARIANTS = (
    "bernoulli_formula",
    "rec_41",
    "rec_42",
    "rec_conclusion",
    "integral",
)


def _require_k(k: int) -> None:
    if k < 1:
        raise ValueError("sum order k must be >= 1")


def _require_n(n: int) -> None:
    if n < 0:
        raise ValueError("upper limit n must be >= 0")


def sum_direct(k: int, n: int, ring: Ring) -> Scalar:
    """Defining summation: S_k(n) = sum_{j=1}^{n} (j)(j-L)...(j-(k-1)L)."""
    _require_k(k)
    _require_n(n)
    acc = ring.zero
    for j in range(1, n + 1):
        acc = acc + degen_falling_prefix(j, k, ring)[k]
    return acc


def sum_via_bernoulli(k: int, n: int, ring: Ring) -> Scalar:
    """Degenerate Bernoulli-number formula, evaluated at upper limit n."""
    _require_k(k)
    _require_n(n)
    table = degen_bernoulli_numbers(k, ring)
    np1_fall = degen_falling_prefix(n + 1, k + 1, ring)
    acc = ring.zero
    for l in range(k + 1):
        acc = acc + binomial(k + 1, l) * (np1_fall[k + 1 - l] * table.get(l))
    return ring.div_exact_int(acc, k + 1)


def sum_via_stirling(k: int, n: int, ring: Ring) -> Scalar:
    """Degenerate Stirling expansion with hockey-stick binomial weights."""
    _require_k(k)
    _require_n(n)
    acc = ring.zero
    for l in range(1, k + 1):
        weight = binomial(n + 1, l + 1) * math.factorial(l)
        if weight:
            acc = acc + degen_stirling2(k, l, ring) * weight
    return acc


def sum_rec_a(k: int, n: int, ring: Ring) -> Scalar:
    """Recurrence A: (k+1) S_k(n) = (n+1)_{k+1} - (1)_{k+1}
    - sum_{r=0}^{k-1} C(k+1, r) (1)_{k+1-r} S_r(n)."""
    _require_k(k)
    _require_n(n)
    one_fall = degen_falling_prefix(ring.one, k + 1, ring)
    np1_fall = degen_falling_prefix(n + 1, k + 1, ring)
    s = [ring.embed_int(n)]
    for kk in range(1, k + 1):
        acc = np1_fall[kk + 1] - one_fall[kk + 1]
        for r in range(kk):
            acc = acc - binomial(kk + 1, r) * (one_fall[kk + 1 - r] * s[r])
        s.append(ring.div_exact_int(acc, kk + 1))
    return s[k]


def sum_rec_b(k: int, n: int, ring: Ring) -> Scalar:
    """Recurrence B: (k+1) S_k(n) = (n)_{k+1}
    + sum_{r=0}^{k-1} C(k+1, r) (-1)^{k+1-r} <1>_{k+1-r} S_r(n),
    where <x>_m is the degenerate rising factorial."""
    _require_k(k)
    _require_n(n)
    one_rise = degen_rising_prefix(ring.one, k + 1, ring)
    n_fall = degen_falling_prefix(n, k + 1, ring)
    s = [ring.embed_int(n)]
    for kk in range(1, k + 1):
        acc = n_fall[kk + 1]
        for r in range(kk):
            coeff = binomial(kk + 1, r)
            if (kk + 1 - r) % 2:
                coeff = -coeff
            acc = acc + coeff * (one_rise[kk + 1 - r] * s[r])
        s.append(ring.div_exact_int(acc, kk + 1))
    return s[k]


def sum_rec_prob(k: int, n: int, ring: Ring) -> Scalar:
    """Probabilistic recurrence: (k+1) S_k(n) = n (n+1)_k
    - sum_{r=1}^{k-1} C(k, r-1) (1)_{k+1-r} S_r(n)
    - L * sum_{r=1}^{k-1} r C(k, r) (1)_{k-r} S_r(n)."""
    _require_k(k)
    _require_n(n)
    one_fall = degen_falling_prefix(ring.one, k + 1, ring)
    np1_fall = degen_falling_prefix(n + 1, k, ring)
    lam = ring.lambda_element()
    s = [ring.embed_int(n)]
    for kk in range(1, k + 1):
        acc = n * np1_fall[kk]
        correction = ring.zero
        for r in range(1, kk):
            acc = acc - binomial(kk, r - 1) * (one_fall[kk + 1 - r] * s[r])
            correction = correction + (r * binomial(kk, r)) * (
                one_fall[kk - r] * s[r]
            )
        acc = acc - lam * correction
        s.append(ring.div_exact_int(acc, kk + 1))
    return s[k]


_METHODS: Dict[str, Callable[[int, int, Ring], Scalar]] = {
    "direct": sum_direct,
    "bernoulli": sum_via_bernoulli,
    "stirling": sum_via_stirling,
    "rec_a": sum_rec_a,
    "rec_b": sum_rec_b,
    "rec_prob": sum_rec_prob,
}


def sum_by_method(method: str, k: int, n: int, ring: Ring) -> Scalar:
    """Dispatch one of the six methods by tag."""
    try:
        fn = _METHODS[method]
    except KeyError:
        raise ValueError(
            f"unknown method {method!r}; expected one of {', '.join(METHOD_NAMES)}"
        ) from None
    return fn(k, n, ring)


@dataclass(frozen=True)
class SumReport:
    """Values of S_k(n) by every method, with the agreement verdict."""

    k: int
    n: int
    lam: Optional[Fraction]  # None means symbolic
    values: Dict[str, Scalar]
    agreement: bool

    @property
    def lam_description(self) -> str:
        return "symbolic" if self.lam is None else str(self.lam)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "lambda": self.lam_description,
            "values": {name: scalar_text(self.values[name]) for name in METHOD_NAMES},
            "agreement": self.agreement,
        }


def sum_all_methods(k: int, n: int, ring: Ring) -> SumReport:
    """Run all six methods and report whether they are ring-equal.

    Disagreement is recorded in the report, never raised.
    """
    values = {name: _METHODS[name](k, n, ring) for name in METHOD_NAMES}
    reference = values["direct"]
    agreement = all(value == reference for value in values.values())
    lam = ring.lam if isinstance(ring, RationalRing) else None
    return SumReport(k=k, n=n, lam=lam, values=values, agreement=agreement)


def faulhaber_classical(m: int, n: int, variant: str) -> Fraction:
    """Classical power sum S_m(n) = 1^m + ... + n^m by the chosen route.

    Variants:

    * ``bernoulli_formula`` - (1/(m+1)) sum_l C(m+1, l) B_l (n+1)^{m+1-l}.
    * ``rec_41``  - S_m(n) = ((n+1)^{m+1} - 1)/(m+1)
      - (1/(m+1)) sum_{r<m} C(m+1, r) S_r(n).
    * ``rec_42``  - S_m(n) = n^{m+1}/(m+1)
      + sum_{r<m} C(m, r) (-1)^{m-r+1}/(m-r+1) S_r(n).
    * ``rec_conclusion`` - S_m(n) = n(n+1)^m/(m+1)
      - (1/(m+1)) sum_{r=1}^{m-1} C(m, r-1) S_r(n).
    * ``integral`` - term-by-term exact integration of the classical
      Bernoulli polynomial B_m(u) over [0, n+1].
    """
    if m < 1:
        raise ValueError("power m must be >= 1")
    _require_n(n)
    if variant == "bernoulli_formula":
        numbers = classical_bernoulli_numbers(m)
        acc = Fraction(0)
        for l in range(m + 1):
            acc += binomial(m + 1, l) * numbers[l] * Fraction(n + 1) ** (m + 1 - l)
        return acc / (m + 1)
    if variant == "rec_41":
        s = [Fraction(n)]
        for mm in range(1, m + 1):
            acc = Fraction(n + 1) ** (mm + 1) - 1
            for r in range(mm):
                acc -= binomial(mm + 1, r) * s[r]
            s.append(acc / (mm + 1))
        return s[m]
    if variant == "rec_42":
        s = [Fraction(n)]
        for mm in range(1, m + 1):
            acc = Fraction(n) ** (mm + 1) / (mm + 1)
            for r in range(mm):
                sign = -1 if (mm - r + 1) % 2 else 1
                acc += sign * Fraction(binomial(mm, r), mm - r + 1) * s[r]
            s.append(acc)
        return s[m]
    if variant == "rec_conclusion":
        s = [Fraction(n)]
        for mm in range(1, m + 1):
            acc = n * Fraction(n + 1) ** mm
            for r in range(1, mm):
                acc -= binomial(mm, r - 1) * s[r]
            s.append(acc / (mm + 1))
        return s[m]
    if variant == "integral":
        coeffs = classical_bernoulli_poly_coeffs(m)
        upper = Fraction(n + 1)
        return sum(
            (c * upper ** (j + 1) / (j + 1) for j, c in enumerate(coeffs)),
            Fraction(0),
        )
    raise ValueError(
        f"unknown variant {variant!r}; expected one of {', '.join(FAULHABER_VARIANTS)}"
    )
