"""degensum: exact sums of degenerate falling factorials, cross-verified.

The package computes S_k(n), the sum of the degenerate falling factorials
of 1..n, by six independent exact algorithms, either at a fixed rational
deformation parameter or symbolically as a polynomial in it, together with
the degenerate Bernoulli and Stirling tables the formulas rest on, a
degenerate-moment engine for finite distributions, and a verification
harness that cross-checks everything against everything.
"""

from .factorials import (
    binomial,
    degen_falling,
    degen_falling_prefix,
    degen_rising,
    degen_rising_prefix,
    falling,
)
from .probmoment import (
    FinitePMF,
    MomentReport,
    PMFInvariantError,
    compute_moment_report,
    load_pmf_json,
    moment_exact,
    moment_mc,
    moment_survival,
    survival,
    uniform_pmf,
)
from .ring import (
    LAMBDA,
    Fraction,
    LambdaPoly,
    PolyRing,
    RationalRing,
    Ring,
    Scalar,
    format_rational,
    make_rational,
    parse_rational,
    poly_eval,
    scalar_text,
)
from .special import (
    BernoulliTable,
    StirlingTriangle,
    classical_bernoulli_numbers,
    classical_bernoulli_poly_coeffs,
    classical_stirling2,
    degen_bernoulli_numbers,
    degen_bernoulli_poly,
    degen_stirling2,
    stirling_row_by_linear_solve,
)
from .sums import (
    FAULHABER_VARIANTS,
    METHOD_NAMES,
    SumReport,
    faulhaber_classical,
    sum_all_methods,
    sum_by_method,
    sum_direct,
    sum_rec_a,
    sum_rec_b,
    sum_rec_prob,
    sum_via_bernoulli,
    sum_via_stirling,
)
from .verify import IDENTITY_NAMES, VerifyFailure, VerifyOutcome, run_verify

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # ring
    "Fraction",
    "LambdaPoly",
    "LAMBDA",
    "RationalRing",
    "PolyRing",
    "Ring",
    "Scalar",
    "make_rational",
    "parse_rational",
    "format_rational",
    "poly_eval",
    "scalar_text",
    # factorials
    "binomial",
    "degen_falling",
    "degen_rising",
    "falling",
    "degen_falling_prefix",
    "degen_rising_prefix",
    # special numbers
    "BernoulliTable",
    "StirlingTriangle",
    "degen_bernoulli_numbers",
    "degen_bernoulli_poly",
    "degen_stirling2",
    "stirling_row_by_linear_solve",
    "classical_bernoulli_numbers",
    "classical_bernoulli_poly_coeffs",
    "classical_stirling2",
    # sums
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
    # probability
    "FinitePMF",
    "MomentReport",
    "PMFInvariantError",
    "uniform_pmf",
    "survival",
    "moment_exact",
    "moment_survival",
    "moment_mc",
    "compute_moment_report",
    "load_pmf_json",
    # verify
    "IDENTITY_NAMES",
    "VerifyFailure",
    "VerifyOutcome",
    "run_verify",
]
