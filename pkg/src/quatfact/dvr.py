"""Exact arithmetic in D = Z localized at a prime p.

D consists of the rationals whose denominator is coprime to p; its quotient
field is K = Q, the uniformizer is pi = p, and the residue field is F_p.
Everything here is exact rational arithmetic -- no floating point.  The
canonical residue system for D / pi^m D is fixed as {0, ..., p^m - 1}.

Scalars are plain rationals (gmpy2.mpq when available, fractions.Fraction
otherwise); `DvrConfig` supplies the p-dependent structure (valuation,
residues, unit tests) and `DvrElement` bundles a scalar with its config for
boundary-level code (parsing, form coefficients, quaternion coordinates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MembershipError, NotPrimeError, ParseError

try:  # fast exact rationals; fractions.Fraction is a drop-in replacement
    from gmpy2 import mpq as _ratio
except ImportError:  # pragma: no cover
    from fractions import Fraction as _ratio

INFINITY = math.inf


def rational(num, den=1):
    """Exact rational from integers (or from another rational)."""
    return _ratio(num, den)


def parse_rational(text: str):
    """Parse "num" or "num/den" into an exact rational."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            d = int(den)
            if d == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return _ratio(int(num), d)
        return _ratio(int(text), 1)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def format_rational(q) -> str:
    """Serialize as "num/den", omitting the denominator when it is 1."""
    return str(q)


def int_valuation(n: int, p: int):
    """Exponent of p in the integer n; INFINITY for n = 0."""
    if n == 0:
        return INFINITY
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class DvrConfig:
    """The discrete valuation ring Z_(p) for a fixed prime p."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")

    @property
    def pi(self):
        """The uniformizer, as a scalar."""
        return _ratio(self.p, 1)

    def valuation(self, x):
        """v(x) = exponent of p in num minus exponent in den; v(0) = INFINITY."""
        num = int(x.numerator) if not isinstance(x, int) else x
        den = int(x.denominator) if not isinstance(x, int) else 1
        if num == 0:
            return INFINITY
        return int_valuation(num, self.p) - int_valuation(den, self.p)

    def in_ring(self, x) -> bool:
        """Membership in D: denominator coprime to p."""
        den = 1 if isinstance(x, int) else int(x.denominator)
        return den % self.p != 0

    def is_unit(self, x) -> bool:
        """Unit of D <=> valuation zero.  Rejects elements outside D."""
        if not self.in_ring(x):
            raise MembershipError(f"{x} is not in Z_({self.p})")
        return self.valuation(x) == 0

    def residue(self, x, m: int) -> int:
        """Unique r in [0, p^m) with x = r mod pi^m D (x must lie in D)."""
        if m < 0:
            raise ValueError("modulus exponent must be nonnegative")
        if not self.in_ring(x):
            raise MembershipError(f"{x} is not in Z_({self.p})")
        modulus = self.p**m
        if isinstance(x, int):
            return x % modulus
        num = int(x.numerator)
        den = int(x.denominator)
        return (num * pow(den, -1, modulus)) % modulus if m > 0 else 0

    def unit_residues(self, m: int) -> tuple[int, ...]:
        """D^x intersected with the canonical system {0, ..., p^m - 1}."""
        return tuple(r for r in range(self.p**m) if r % self.p != 0)

    def element(self, num, den=1) -> "DvrElement":
        return DvrElement(_ratio(num, den), self)

    def parse(self, text: str) -> "DvrElement":
        return DvrElement(parse_rational(text), self)


class DvrElement:
    """An exact element of K = Q tagged with its localization prime.

    The D/K distinction is the derived flag `in_ring` (denominator coprime
    to p); arithmetic never leaves K and recomputes the flag on demand.
    """

    __slots__ = ("value", "dvr")

    def __init__(self, value, dvr: DvrConfig):
        self.value = _ratio(value)
        self.dvr = dvr

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, DvrElement):
            if other.dvr.p != self.dvr.p:
                raise ValueError("mixed localization primes")
            return other.value
        if isinstance(other, int):
            return _ratio(other, 1)
        return other

    def __add__(self, other):
        return DvrElement(self.value + self._coerce(other), self.dvr)

    __radd__ = __add__

    def __sub__(self, other):
        return DvrElement(self.value - self._coerce(other), self.dvr)

    def __rsub__(self, other):
        return DvrElement(self._coerce(other) - self.value, self.dvr)

    def __mul__(self, other):
        return DvrElement(self.value * self._coerce(other), self.dvr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = self._coerce(other)
        if q == 0:
            raise ZeroDivisionError("division by zero in K")
        return DvrElement(self.value / q, self.dvr)

    def __neg__(self):
        return DvrElement(-self.value, self.dvr)

    def __pow__(self, k: int):
        return DvrElement(self.value**k, self.dvr)

    def __eq__(self, other):
        if isinstance(other, DvrElement):
            return self.value == other.value and self.dvr.p == other.dvr.p
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((int(self.value.numerator), int(self.value.denominator)))

    def __bool__(self):
        return self.value != 0

    # -- DVR structure ------------------------------------------------

    @property
    def numerator(self) -> int:
        return int(self.value.numerator)

    @property
    def denominator(self) -> int:
        return int(self.value.denominator)

    @property
    def in_ring(self) -> bool:
        return self.dvr.in_ring(self.value)

    def valuation(self):
        return self.dvr.valuation(self.value)

    def is_unit(self) -> bool:
        return self.dvr.is_unit(self.value)

    def residue(self, m: int) -> "ResidueClass":
        return ResidueClass(m, self.dvr.residue(self.value, m), self.dvr.p)

    def __str__(self):
        return format_rational(self.value)

    def __repr__(self):
        return f"DvrElement({self.value}, p={self.dvr.p})"


@dataclass(frozen=True)
class ResidueClass:
    """Image in D / pi^m D, named by its canonical representative."""

    modulus_exponent: int
    representative: int
    p: int

    def __post_init__(self):
        if not 0 <= self.representative < self.p**self.modulus_exponent:
            raise ValueError("representative outside canonical system")
