"""Cross-verification harness: every algebraic identity the package rests on,
runnable as one registry over a user-chosen grid.

Each registered check walks its grid, counts cases, and reports failures as
(identity, parameters, expected text, got text) tuples.  A failure is a
reportable data condition, never an exception: the point of the harness is
to surface disagreement.  Aggregation is deterministic regardless of any
fan-out: failures are sorted by identity name, then parameters.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .factorials import binomial, degen_falling, degen_falling_prefix, degen_rising
from .probmoment import FinitePMF, moment_exact, moment_mc, moment_survival, uniform_pmf
from .ring import LambdaPoly, PolyRing, RationalRing, Ring, scalar_text
from .special import (
    classical_bernoulli_numbers,
    classical_stirling2,
    degen_bernoulli_numbers,
    degen_bernoulli_poly,
    degen_stirling2,
    stirling_row_by_linear_solve,
)
from .sums import METHOD_NAMES, faulhaber_classical, sum_all_methods, sum_direct

__all__ = ["VerifyFailure", "VerifyOutcome", "run_verify", "IDENTITY_NAMES"]


@dataclass(frozen=True)
class VerifyFailure:
    identity: str
    params: str
    expected: str
    got: str


@dataclass
class VerifyOutcome:
    cases_run: int
    failures: List[VerifyFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


class _Context:
    def __init__(
        self,
        max_k: int,
        max_n: int,
        lambdas: Sequence[Union[Fraction, int]],
        symbolic: bool,
        seed: int,
        table_mutator: Optional[Callable[[Ring], None]],
    ):
        self.max_k = max_k
        self.max_n = max_n
        self.lambdas = [Fraction(lam) for lam in lambdas]
        self.symbolic = symbolic
        self.seed = seed
        self._mutator = table_mutator
        self.fixed_rings = [self._make_ring(lam) for lam in self.lambdas]
        self.poly_ring = self._make_ring(None)

    def _make_ring(self, lam: Optional[Fraction]) -> Ring:
        ring: Ring = PolyRing() if lam is None else RationalRing(lam)
        if self._mutator is not None:
            self._mutator(ring)
        return ring

    def rng(self, topic: str) -> random.Random:
        # Per-check stream: results do not depend on check execution order.
        return random.Random(f"{self.seed}:{topic}")

    def random_rational(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-8, 8), rng.randint(1, 8))


class _Recorder:
    def __init__(self, identity: str):
        self.identity = identity
        self.cases = 0
        self.failures: List[VerifyFailure] = []

    def check(self, params: str, expected, got) -> None:
        self.cases += 1
        if expected != got:
            self.failures.append(
                VerifyFailure(
                    identity=self.identity,
                    params=params,
                    expected=scalar_text(expected)
                    if not isinstance(expected, str)
                    else expected,
                    got=scalar_text(got) if not isinstance(got, str) else got,
                )
            )

    def check_true(self, params: str, condition: bool, detail: str = "") -> None:
        self.cases += 1
        if not condition:
            self.failures.append(
                VerifyFailure(
                    identity=self.identity,
                    params=params,
                    expected="true",
                    got=detail or "false",
                )
            )


def _check_vandermonde(ctx: _Context) -> _Recorder:
    rec = _Recorder("vandermonde_convolution")
    rng = ctx.rng("vandermonde")
    rings: List[Ring] = [ctx.poly_ring]
    rings += [RationalRing(ctx.random_rational(rng)) for _ in range(2)]
    rings += ctx.fixed_rings
    for ring in rings:
        for n in range(0, 11):
            x = rng.randint(-5, 5)
            y = rng.randint(-5, 5)
            lhs = degen_falling(ring.embed_int(x) + ring.embed_int(y), n, ring)
            x_fall = degen_falling_prefix(x, n, ring)
            y_fall = degen_falling_prefix(y, n, ring)
            rhs = ring.zero
            for k in range(n + 1):
                rhs = rhs + binomial(n, k) * (x_fall[k] * y_fall[n - k])
            rec.check(f"x={x} y={y} n={n} lambda={ring.lam_description}", lhs, rhs)
    return rec


def _check_reflection(ctx: _Context) -> _Recorder:
    rec = _Recorder("rising_falling_reflection")
    ring = ctx.poly_ring
    for x in range(0, 6):
        for n in range(0, 11):
            lhs = degen_falling(-x, n, ring)
            rhs = degen_rising(x, n, ring)
            if n % 2:
                rhs = -rhs
            rec.check(f"x={x} n={n}", lhs, rhs)
    return rec


def _check_lambda_collapse(ctx: _Context) -> _Recorder:
    rec = _Recorder("lambda_collapse")
    ring0 = RationalRing(0)
    ring1 = RationalRing(1)
    for x in range(-3, 7):
        for n in range(0, 11):
            rec.check(
                f"x={x} n={n} lambda=0",
                Fraction(x) ** n,
                degen_falling(x, n, ring0),
            )
            expected = 1
            for i in range(n):
                expected *= x - i
            rec.check(
                f"x={x} n={n} lambda=1",
                Fraction(expected),
                degen_falling(x, n, ring1),
            )
    return rec


def _check_falling_recursion(ctx: _Context) -> _Recorder:
    rec = _Recorder("falling_recursion")
    ring = ctx.poly_ring
    lam = ring.lambda_element()
    for x in range(-3, 7):
        prefix = degen_falling_prefix(x, 11, ring)
        for n in range(0, 11):
            step = ring.embed_int(x) - n * lam
            rec.check(f"x={x} n={n}", prefix[n + 1], prefix[n] * step)
    return rec


def _check_stirling_defining(ctx: _Context) -> _Recorder:
    rec = _Recorder("stirling_defining_expansion")
    ring = ctx.poly_ring
    for n in range(0, 13):
        for x in range(0, 13):
            lhs = degen_falling(x, n, ring)
            rhs = ring.zero
            ordinary = 1
            for k in range(n + 1):
                # ordinary == x(x-1)...(x-k+1) as a plain integer
                rhs = rhs + degen_stirling2(n, k, ring) * ordinary
                ordinary *= x - k
            rec.check(f"n={n} x={x}", lhs, rhs)
    return rec


def _check_stirling_linear_solve(ctx: _Context) -> _Recorder:
    rec = _Recorder("stirling_linear_solve_oracle")
    ring = ctx.poly_ring
    for n in range(0, 9):
        solved = stirling_row_by_linear_solve(n, ring)
        for k in range(n + 1):
            rec.check(f"n={n} k={k}", solved[k], degen_stirling2(n, k, ring))
    return rec


def _check_stirling_lambda0(ctx: _Context) -> _Recorder:
    rec = _Recorder("stirling_lambda0_classical")
    ring = RationalRing(0)
    for n in range(0, 9):
        for k in range(0, n + 1):
            rec.check(
                f"n={n} k={k}",
                Fraction(classical_stirling2(n, k)),
                degen_stirling2(n, k, ring),
            )
    return rec


def _check_bernoulli_lambda0(ctx: _Context) -> _Recorder:
    rec = _Recorder("bernoulli_lambda0_classical")
    ring = next(
        (r for r in ctx.fixed_rings if isinstance(r, RationalRing) and r.lam == 0),
        RationalRing(0),
    )
    classical = classical_bernoulli_numbers(10)
    table = degen_bernoulli_numbers(10, ring)
    for n in range(11):
        rec.check(f"n={n}", classical[n], table.get(n))
        if n >= 3 and n % 2:
            rec.check(f"n={n} odd-vanishing", Fraction(0), table.get(n))
    return rec


def _check_bernoulli_difference(ctx: _Context) -> _Recorder:
    rec = _Recorder("bernoulli_difference_identity")
    ring = ctx.poly_ring
    for m in range(0, 9):
        for n in range(1, 11):
            for x in range(0, 3):
                lhs = ring.zero
                for j in range(n):
                    lhs = lhs + degen_falling(j + x, m, ring)
                diff = degen_bernoulli_poly(m + 1, n + x, ring) - degen_bernoulli_poly(
                    m + 1, x, ring
                )
                rhs = ring.div_exact_int(diff, m + 1)
                rec.check(f"m={m} n={n} x={x}", lhs, rhs)
    return rec


def _check_telescoping(ctx: _Context) -> _Recorder:
    rec = _Recorder("telescoping_sum_identity")
    ring = ctx.poly_ring
    for k in range(1, 9):
        one_fall = degen_falling_prefix(ring.one, k + 1, ring)
        for n in range(0, 13):
            np1_fall = degen_falling_prefix(n + 1, k + 1, ring)
            lhs = ring.zero
            for r in range(k + 1):
                s_r = ring.embed_int(n) if r == 0 else sum_direct(r, n, ring)
                lhs = lhs + binomial(k + 1, r) * (one_fall[k + 1 - r] * s_r)
            rhs = np1_fall[k + 1] - one_fall[k + 1]
            rec.check(f"k={k} n={n}", rhs, lhs)
    return rec


def _check_sum_methods_fixed(ctx: _Context) -> _Recorder:
    rec = _Recorder("sum_methods_agree_fixed")
    for ring in ctx.fixed_rings:
        for k in range(1, ctx.max_k + 1):
            for n in range(0, ctx.max_n + 1):
                report = sum_all_methods(k, n, ring)
                detail = "; ".join(
                    f"{name}={scalar_text(report.values[name])}"
                    for name in METHOD_NAMES
                )
                rec.check_true(
                    f"k={k} n={n} lambda={ring.lam_description}",
                    report.agreement,
                    detail,
                )
    return rec


def _check_sum_methods_symbolic(ctx: _Context) -> _Recorder:
    rec = _Recorder("sum_methods_agree_symbolic")
    if not ctx.symbolic:
        return rec
    ring = ctx.poly_ring
    for k in range(1, min(ctx.max_k, 10) + 1):
        for n in range(0, min(ctx.max_n, 15) + 1):
            report = sum_all_methods(k, n, ring)
            detail = "; ".join(
                f"{name}={scalar_text(report.values[name])}" for name in METHOD_NAMES
            )
            rec.check_true(f"k={k} n={n} lambda=symbolic", report.agreement, detail)
            value = report.values["direct"]
            assert isinstance(value, LambdaPoly)
            rec.check_true(
                f"k={k} n={n} degree-bound",
                value.degree <= k - 1,
                f"degree={value.degree}",
            )
    return rec


def _check_faulhaber_bridge(ctx: _Context) -> _Recorder:
    rec = _Recorder("faulhaber_lambda0_bridge")
    ring = RationalRing(0)
    for k in range(1, min(ctx.max_k, 10) + 1):
        for n in range(0, ctx.max_n + 1):
            reference = sum_direct(k, n, ring)
            for variant in (
                "bernoulli_formula",
                "rec_41",
                "rec_42",
                "rec_conclusion",
                "integral",
            ):
                rec.check(
                    f"k={k} n={n} variant={variant}",
                    reference,
                    faulhaber_classical(k, n, variant),
                )
    return rec


def _check_hockey_stick_bridge(ctx: _Context) -> _Recorder:
    rec = _Recorder("hockey_stick_lambda1_bridge")
    ring = RationalRing(1)
    for k in range(1, min(ctx.max_k, 10) + 1):
        for n in range(0, ctx.max_n + 1):
            closed_form = math.factorial(k) * binomial(n + 1, k + 1)
            rec.check(
                f"k={k} n={n}",
                Fraction(closed_form),
                sum_direct(k, n, ring),
            )
    return rec


def _random_pmf(rng: random.Random) -> FinitePMF:
    size = rng.randint(1, 8)
    support = sorted(rng.sample(range(0, 21), size))
    weights = [Fraction(rng.randint(1, 20), rng.randint(1, 10)) for _ in support]
    total = sum(weights)
    return FinitePMF(tuple((v, w / total) for v, w in zip(support, weights)))


def _check_survival_identity(ctx: _Context) -> _Recorder:
    rec = _Recorder("survival_moment_identity")
    rng = ctx.rng("survival")
    lambdas = [Fraction(0), Fraction(1, 2), Fraction(-1), Fraction(2)]
    max_k = min(ctx.max_k, 8)
    for index in range(200):
        pmf = _random_pmf(rng)
        k = rng.randint(1, max_k)
        lam = lambdas[index % len(lambdas)]
        rec.check(
            f"pmf#{index} k={k} lambda={lam}",
            moment_exact(pmf, k, lam),
            moment_survival(pmf, k, lam),
        )
    return rec


def _check_uniform_chain(ctx: _Context) -> _Recorder:
    rec = _Recorder("uniform_survival_chain")
    lambdas = ctx.lambdas or [Fraction(0)]
    for lam in lambdas:
        ring = RationalRing(lam)
        for k in range(1, min(ctx.max_k, 8) + 1):
            for n in range(0, min(ctx.max_n, 20) + 1):
                lhs = (n + 1) * moment_survival(uniform_pmf(n), k, lam)
                rec.check(
                    f"k={k} n={n} lambda={lam}",
                    sum_direct(k, n, ring),
                    lhs,
                )
    return rec


def _check_mc_consistency(ctx: _Context) -> _Recorder:
    rec = _Recorder("monte_carlo_consistency")
    pmf = uniform_pmf(10)
    k, lam = 3, Fraction(1, 2)
    exact = float(moment_exact(pmf, k, lam))
    hits = 0
    trials = 100
    for trial in range(trials):
        estimate, stderr = moment_mc(pmf, k, lam, 100_000, ctx.seed + trial)
        if abs(estimate - exact) <= 4 * stderr:
            hits += 1
    rec.check_true(
        f"trials={trials} samples=100000 seed={ctx.seed}",
        hits >= 99,
        f"hits={hits}",
    )
    return rec


_CHECKS: Tuple[Callable[[_Context], _Recorder], ...] = (
    _check_vandermonde,
    _check_reflection,
    _check_lambda_collapse,
    _check_falling_recursion,
    _check_stirling_defining,
    _check_stirling_linear_solve,
    _check_stirling_lambda0,
    _check_bernoulli_lambda0,
    _check_bernoulli_difference,
    _check_telescoping,
    _check_sum_methods_fixed,
    _check_sum_methods_symbolic,
    _check_faulhaber_bridge,
    _check_hockey_stick_bridge,
    _check_survival_identity,
    _check_uniform_chain,
    _check_mc_consistency,
)

IDENTITY_NAMES = (
    "vandermonde_convolution",
    "rising_falling_reflection",
    "lambda_collapse",
    "falling_recursion",
    "stirling_defining_expansion",
    "stirling_linear_solve_oracle",
    "stirling_lambda0_classical",
    "bernoulli_lambda0_classical",
    "bernoulli_difference_identity",
    "telescoping_sum_identity",
    "sum_methods_agree_fixed",
    "sum_methods_agree_symbolic",
    "faulhaber_lambda0_bridge",
    "hockey_stick_lambda1_bridge",
    "survival_moment_identity",
    "uniform_survival_chain",
    "monte_carlo_consistency",
)


def run_verify(
    max_k: int,
    max_n: int,
    lambdas: Sequence[Union[Fraction, int]],
    symbolic: bool = False,
    seed: int = 0,
    threads: Optional[int] = None,
    table_mutator: Optional[Callable[[Ring], None]] = None,
) -> VerifyOutcome:
    """Run the full identity registry over the requested grid.

    ``threads`` > 1 fans the checks out over a thread pool; aggregation is
    order-independent either way.  ``table_mutator`` is a test-only hook
    applied to each ring right after construction, letting a test corrupt a
    memoized table and confirm the harness reports the disagreement.
    """
    if max_k < 1 or max_n < 1:
        raise ValueError("verify bounds must be >= 1")
    ctx = _Context(max_k, max_n, lambdas, symbolic, seed, table_mutator)
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            recorders = list(pool.map(lambda fn: fn(ctx), _CHECKS))
    else:
        recorders = [fn(ctx) for fn in _CHECKS]
    outcome = VerifyOutcome(cases_run=sum(r.cases for r in recorders))
    for recorder in recorders:
        outcome.failures.extend(recorder.failures)
    outcome.failures.sort(key=lambda f: (f.identity, f.params))
    return outcome
