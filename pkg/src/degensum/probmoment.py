"""Exact degenerate moments of finite-support integer random variables.

For a nonnegative integer-valued X and k >= 1, the k-th degenerate moment
E[(X)(X-L)...(X-(k-1)L)] can be computed two ways:

* directly, as the probability-weighted sum over the support, and
* through the survival function, as
  sum_x ((x+1)_k - (x)_k) * P{X > x},

and the two must agree exactly.  Applied to the uniform distribution on
{0..n} this identity reproduces S_k(n) = (n+1) * E[(X)_k], which is the
bridge the ``verify`` harness exercises end-to-end.

Everything exact in this module is restricted to finite support; there is
no convergence analysis for infinite-support distributions here.  The
Monte Carlo estimator is the one deliberate use of floating point in the
package: it draws i.i.d. samples by inverse-CDF lookup over a seeded
numpy PCG64 generator and reports a mean and standard error as an
empirical witness for the exact identity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .factorials import degen_falling
from .ring import RationalRing, parse_rational

__all__ = [
    "FinitePMF",
    "MomentReport",
    "uniform_pmf",
    "survival",
    "moment_exact",
    "moment_survival",
    "moment_mc",
    "compute_moment_report",
    "load_pmf_json",
    "PMFInvariantError",
]


class PMFInvariantError(ValueError):
    """A probability mass function violating one of its invariants."""


@dataclass(frozen=True)
class FinitePMF:
    """PMF on a finite set of nonnegative integers with exact probabilities.

    Invariants, enforced at construction: support values are nonnegative,
    distinct and strictly increasing; probabilities are nonnegative exact
    rationals summing to exactly 1.
    """

    entries: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        if not self.entries:
            raise PMFInvariantError("support must be nonempty")
        previous = None
        total = Fraction(0)
        for value, prob in self.entries:
            if not isinstance(value, int) or value < 0:
                raise PMFInvariantError(
                    "support values must be nonnegative integers"
                )
            if previous is not None and value <= previous:
                raise PMFInvariantError(
                    "support values must be strictly increasing"
                )
            if prob < 0:
                raise PMFInvariantError("probabilities must be nonnegative")
            previous = value
            total += prob
        if total != 1:
            raise PMFInvariantError("probabilities must sum to exactly 1")

    @classmethod
    def from_pairs(
        cls, pairs: Sequence[Tuple[int, Union[Fraction, int]]]
    ) -> "FinitePMF":
        return cls(tuple((v, Fraction(p)) for v, p in pairs))

    @property
    def support(self) -> List[int]:
        return [v for v, _ in self.entries]

    @property
    def probs(self) -> List[Fraction]:
        return [p for _, p in self.entries]

    @property
    def max_support(self) -> int:
        return self.entries[-1][0]

    def probability(self, value: int) -> Fraction:
        for v, p in self.entries:
            if v == value:
                return p
        return Fraction(0)


def uniform_pmf(n: int) -> FinitePMF:
    """Uniform distribution on {0, 1, ..., n}, each point with mass 1/(n+1)."""
    if n < 0:
        raise ValueError("uniform support bound must be >= 0")
    p = Fraction(1, n + 1)
    return FinitePMF(tuple((x, p) for x in range(n + 1)))


def survival(pmf: FinitePMF, x: int) -> Fraction:
    """P{X > x}: total mass strictly above x."""
    return sum((p for v, p in pmf.entries if v > x), Fraction(0))


def moment_exact(pmf: FinitePMF, k: int, lam: Union[Fraction, int]) -> Fraction:
    """Direct k-th degenerate moment: sum_x (x)(x-lam)...(x-(k-1)lam) P{X=x}."""
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    ring = RationalRing(lam)
    acc = Fraction(0)
    for value, prob in pmf.entries:
        if prob:
            acc += degen_falling(value, k, ring) * prob
    return acc


def moment_survival(pmf: FinitePMF, k: int, lam: Union[Fraction, int]) -> Fraction:
    """Survival-sum form of the k-th degenerate moment:
    sum_{x=0}^{max-1} ((x+1)_k - (x)_k) * P{X > x}."""
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    ring = RationalRing(lam)
    mass = dict(pmf.entries)
    acc = Fraction(0)
    tail = Fraction(1)  # becomes P{X > x} after subtracting P{X = x}
    previous_fall = degen_falling(0, k, ring)
    for x in range(pmf.max_support):
        tail -= mass.get(x, Fraction(0))
        next_fall = degen_falling(x + 1, k, ring)
        acc += (next_fall - previous_fall) * tail
        previous_fall = next_fall
    return acc


def moment_mc(
    pmf: FinitePMF,
    k: int,
    lam: Union[Fraction, int],
    samples: int,
    seed: int,
) -> Tuple[float, float]:
    """Seeded Monte Carlo estimate of the k-th degenerate moment.

    Draws ``samples`` i.i.d. values by inverse-CDF lookup: the cumulative
    probabilities are converted to floats once at setup, and uniform
    variates come from ``numpy.random.Generator(PCG64(seed))``, so one seed
    gives one bit-identical (estimate, stderr) pair.  The standard error is
    the sample standard deviation over sqrt(samples).
    """
    if k < 1:
        raise ValueError("moment order k must be >= 1")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ring = RationalRing(lam)
    point_values = np.array(
        [float(degen_falling(v, k, ring)) for v in pmf.support], dtype=np.float64
    )
    cumulative = np.cumsum(np.array([float(p) for p in pmf.probs], dtype=np.float64))
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(samples)
    indices = np.searchsorted(cumulative, u, side="right")
    np.clip(indices, 0, len(point_values) - 1, out=indices)
    draws = point_values[indices]
    estimate = float(draws.mean())
    if samples > 1:
        stderr = float(draws.std(ddof=1) / math.sqrt(samples))
    else:
        stderr = 0.0
    return estimate, stderr


@dataclass(frozen=True)
class MomentReport:
    """Exact moment by both routes, plus the optional Monte Carlo witness."""

    k: int
    lam: Fraction
    exact_direct: Fraction
    exact_survival: Fraction
    mc_estimate: Optional[float]
    mc_stderr: Optional[float]
    samples: int
    seed: int

    @property
    def exact_agreement(self) -> bool:
        return self.exact_direct == self.exact_survival

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "lambda": str(self.lam),
            "exact_direct": str(self.exact_direct),
            "exact_survival": str(self.exact_survival),
            "mc_estimate": self.mc_estimate,
            "mc_stderr": self.mc_stderr,
            "samples": self.samples,
            "seed": self.seed,
        }


def compute_moment_report(
    pmf: FinitePMF,
    k: int,
    lam: Union[Fraction, int],
    samples: int = 0,
    seed: int = 0,
) -> MomentReport:
    """Compute both exact routes and, when samples >= 1, the MC witness."""
    lam = Fraction(lam)
    direct = moment_exact(pmf, k, lam)
    surv = moment_survival(pmf, k, lam)
    if samples >= 1:
        estimate, stderr = moment_mc(pmf, k, lam, samples, seed)
    else:
        estimate, stderr = None, None
    return MomentReport(
        k=k,
        lam=lam,
        exact_direct=direct,
        exact_survival=surv,
        mc_estimate=estimate,
        mc_stderr=stderr,
        samples=max(samples, 0),
        seed=seed,
    )


def load_pmf_json(source: Union[str, Path]) -> FinitePMF:
    """Load a PMF from a JSON file of the form
    ``{"support": [ints ascending], "probs": ["p/q", ...]}``.

    Violations of the FinitePMF invariants are reported as
    PMFInvariantError naming the failed invariant.
    """
    try:
        with open(source, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise PMFInvariantError(f"unreadable PMF file {source}: {exc}") from exc
    if not isinstance(data, dict) or "support" not in data or "probs" not in data:
        raise PMFInvariantError(
            "PMF file must be an object with 'support' and 'probs' keys"
        )
    support = data["support"]
    probs = data["probs"]
    if not isinstance(support, list) or not isinstance(probs, list):
        raise PMFInvariantError("'support' and 'probs' must be lists")
    if len(support) != len(probs):
        raise PMFInvariantError("'support' and 'probs' must have equal length")
    entries = []
    for value, prob in zip(support, probs):
        if not isinstance(value, int) or isinstance(value, bool):
            raise PMFInvariantError("support values must be nonnegative integers")
        if isinstance(prob, str):
            try:
                prob = parse_rational(prob)
            except ValueError as exc:
                raise PMFInvariantError(
                    f"probabilities must be rational strings: {exc}"
                ) from exc
        elif isinstance(prob, int) and not isinstance(prob, bool):
            prob = Fraction(prob)
        else:
            raise PMFInvariantError("probabilities must be rational strings")
        entries.append((value, prob))
    return FinitePMF(tuple(entries))
