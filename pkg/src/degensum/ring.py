"""Exact scalar arithmetic for the whole package.

Two interchangeable scalar kinds exist:

* ``fractions.Fraction``, the exact rational, used when the deformation
  parameter lambda is pinned to a fixed rational value.
* ``LambdaPoly``, a dense univariate polynomial in lambda with Fraction
  coefficients, used to certify identities for all lambda at once.

A ring object (``RationalRing`` or ``PolyRing``) bundles the constants and
the few operations that differ between the two kinds: integer embedding,
the lambda element, and exact division by an integer.  Every algorithm in
the package is written once against this small contract and runs in either
mode.

Text forms are part of the public contract.  Rationals print as ``p/q`` in
lowest terms with positive denominator, or ``p`` when the denominator is 1.
Polynomials print in ascending powers with the variable letter ``L``, e.g.
``14 - 6*L`` or ``-1/2 + 1/2*L``; the zero polynomial prints ``0``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
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
]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def make_rational(p: int, q: int = 1) -> Fraction:
    """Canonical lowest-terms fraction p/q with positive denominator.

    Raises ZeroDivisionError when q is zero.
    """
    return Fraction(p, q)


def parse_rational(text: str) -> Fraction:
    """Parse the canonical rational text form ``p`` or ``p/q``."""
    t = text.strip()
    if not _RATIONAL_RE.fullmatch(t):
        raise ValueError(f"not a rational in p or p/q form: {text!r}")
    if "/" in t:
        p, q = t.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(t))


def format_rational(value: Fraction) -> str:
    """Canonical text form: ``p/q`` in lowest terms, or ``p`` when q == 1."""
    return str(value)


class LambdaPoly:
    """Dense polynomial in lambda with exact rational coefficients.

    Canonical form: the coefficient tuple carries no trailing zeros, and
    the zero polynomial stores the empty tuple.  Instances are immutable;
    all operators return new objects.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Union[Fraction, int]] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, value: Union[Fraction, int]) -> "LambdaPoly":
        return cls((Fraction(value),))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LambdaPoly.constant(other)
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LambdaPoly.constant(other)
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return LambdaPoly.constant(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LambdaPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LambdaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # Exact coefficient-wise division by a nonzero rational; polynomial
        # division is deliberately unsupported.
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return LambdaPoly(tuple(c / other for c in self.coeffs))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = LambdaPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, LambdaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == LambdaPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            # Degree <= 0 polynomials hash like their rational value so that
            # cross-type equality with Fraction/int stays consistent.
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"LambdaPoly({self.to_text()!r})"

    # -- evaluation ---------------------------------------------------

    def evaluate(self, lam: Union[Fraction, int]) -> Fraction:
        """Exact value at a fixed rational lambda (Horner scheme)."""
        lam = Fraction(lam)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc

    # -- text and JSON forms -------------------------------------------

    def to_text(self) -> str:
        """Ascending-power text form, e.g. ``14 - 6*L`` or ``0``."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            else:
                var = "L" if i == 1 else f"L^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "LambdaPoly":
        """Parse the text form produced by :meth:`to_text`."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial text")
        tokens = s.split()
        coeffs: dict[int, Fraction] = {}
        sign = 1
        expect_term = True
        for tok in tokens:
            if tok in ("+", "-"):
                if expect_term:
                    raise ValueError(f"misplaced sign in polynomial text: {text!r}")
                sign = 1 if tok == "+" else -1
                expect_term = True
                continue
            if not expect_term:
                raise ValueError(f"missing + or - between terms: {text!r}")
            coeff, power = cls._parse_term(tok, text)
            coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coeff
            sign = 1
            expect_term = False
        if expect_term:
            raise ValueError(f"dangling sign in polynomial text: {text!r}")
        size = max(coeffs) + 1 if coeffs else 0
        out = [Fraction(0)] * size
        for power, c in coeffs.items():
            out[power] = c
        return cls(out)

    @staticmethod
    def _parse_term(tok: str, full: str) -> tuple[Fraction, int]:
        neg = tok.startswith("-")
        if neg:
            tok = tok[1:]
        if "L" not in tok:
            return (-1 if neg else 1) * parse_rational(tok), 0
        coeff_part, sep, var_part = tok.rpartition("*")
        if not sep:
            coeff = Fraction(1)
            var_part = tok
        else:
            coeff = parse_rational(coeff_part)
        if var_part == "L":
            power = 1
        elif var_part.startswith("L^"):
            power_text = var_part[2:]
            if not power_text.isdigit():
                raise ValueError(f"bad polynomial term {tok!r} in {full!r}")
            power = int(power_text)
        else:
            raise ValueError(f"bad polynomial term {tok!r} in {full!r}")
        return (-coeff if neg else coeff), power

    def to_json_coeffs(self) -> list[str]:
        """JSON form: list of rational strings, index = power of lambda."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json_coeffs(cls, items: Sequence[Union[str, int]]) -> "LambdaPoly":
        return cls(
            parse_rational(item) if isinstance(item, str) else Fraction(item)
            for item in items
        )


LAMBDA = LambdaPoly((0, 1))

Scalar = Union[Fraction, LambdaPoly]


def poly_eval(p: LambdaPoly, lam: Union[Fraction, int]) -> Fraction:
    """Evaluate a lambda-polynomial exactly at a fixed rational lambda."""
    return p.evaluate(lam)


def scalar_text(value: Scalar) -> str:
    """Canonical text form of either scalar kind."""
    if isinstance(value, LambdaPoly):
        return value.to_text()
    return str(value)


class RationalRing:
    """Scalar ring of exact rationals with lambda fixed to a given value."""

    def __init__(self, lam: Union[Fraction, int] = 0):
        self.lam = Fraction(lam)
        self.zero = Fraction(0)
        self.one = Fraction(1)
        # Per-instance memo space for derived tables (see special module).
        self.cache: dict = {}

    @property
    def lam_description(self) -> str:
        return str(self.lam)

    def embed_int(self, m: int) -> Fraction:
        return Fraction(m)

    def lambda_element(self) -> Fraction:
        return self.lam

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def subtract(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def multiply(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def negate(self, a: Fraction) -> Fraction:
        return -a

    def eq(self, a: Fraction, b: Fraction) -> bool:
        return a == b

    def div_exact_int(self, s: Fraction, m: int) -> Fraction:
        if m == 0:
            raise ZeroDivisionError("exact division by zero integer")
        return s / Fraction(m)

    def to_text(self, s: Fraction) -> str:
        return str(s)

    def from_text(self, text: str) -> Fraction:
        return parse_rational(text)

    def __repr__(self):
        return f"RationalRing(lam={self.lam})"


class PolyRing:
    """Scalar ring of polynomials in lambda over the rationals."""

    def __init__(self):
        self.zero = LambdaPoly()
        self.one = LambdaPoly.constant(1)
        self.cache: dict = {}

    @property
    def lam_description(self) -> str:
        return "symbolic"

    def embed_int(self, m: int) -> LambdaPoly:
        return LambdaPoly.constant(m)

    def lambda_element(self) -> LambdaPoly:
        return LAMBDA

    def add(self, a: LambdaPoly, b: LambdaPoly) -> LambdaPoly:
        return a + b

    def subtract(self, a: LambdaPoly, b: LambdaPoly) -> LambdaPoly:
        return a - b

    def multiply(self, a: LambdaPoly, b: LambdaPoly) -> LambdaPoly:
        return a * b

    def negate(self, a: LambdaPoly) -> LambdaPoly:
        return -a

    def eq(self, a: LambdaPoly, b: LambdaPoly) -> bool:
        return a == b

    def div_exact_int(self, s: LambdaPoly, m: int) -> LambdaPoly:
        if m == 0:
            raise ZeroDivisionError("exact division by zero integer")
        return s / m

    def to_text(self, s: LambdaPoly) -> str:
        return s.to_text()

    def from_text(self, text: str) -> LambdaPoly:
        return LambdaPoly.from_text(text)

    def __repr__(self):
        return "PolyRing()"


Ring = Union[RationalRing, PolyRing]
