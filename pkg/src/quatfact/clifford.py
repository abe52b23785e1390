"""Even Clifford algebras of ternary quadratic forms over D = Z_(p).

A form q(x,y,z) = a x^2 + b y^2 + c z^2 + u yz + v xz + w xy determines a
rank-4 algebra on the basis 1, i, j, k whose multiplication is the bilinear
extension of

    i*i = u*i - bc    j*k = a(u - i)    k*j = -vw + a*i + w*j + v*k
    j*j = v*j - ac    k*i = b(v - j)    i*k = -uw + w*i + b*j + u*k
    k*k = w*k - ab    i*j = c(w - k)    j*i = -uv + v*i + u*j + c*k

with standard involution conj(i) = u - i, conj(j) = v - j, conj(k) = w - k,
reduced norm nr(x) = x * conj(x) and reduced trace tr(x) = x + conj(x).
Every quaternion order over D arises this way, which is what makes the
radical case analysis over the residue field decisive for the non-split
(local) orders.

Radicals over F_p are found by brute enumeration of {x in A-perp : nr(x)=0}
(at most p^4 <= 2401 points for p <= 7) and then verified to be nilpotent
two-sided ideals; the predicted case table is checked against that
computation rather than trusted.  Ideal membership at the pi^2 level
(needed to separate J from J^2 inside the order itself) is decided in
R/pi^2 R, which is sound because pi R lies in J(R) and pi^2 R in J(R)^2, so
both ideals are preimages of their images mod pi^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .dvr import DvrConfig, format_rational, parse_rational, rational
from .errors import (
    DegenerateFormError,
    ExhaustiveSearchLimitError,
    IsotropyNotFoundError,
    MembershipError,
    NonLocalOrderError,
    NormalizationRequiredError,
    NotCancellativeError,
    ParseError,
    UnitInputError,
)
from .zmod import FpSpan, ZModModule, fp_kernel

_COEFF_NAMES = ("a", "b", "c", "u", "v", "w")


@dataclass(frozen=True)
class TernaryForm:
    """q(x,y,z) = a x^2 + b y^2 + c z^2 + u yz + v xz + w xy over Z_(p)."""

    dvr: DvrConfig
    a: object
    b: object
    c: object
    u: object
    v: object
    w: object

    def __post_init__(self):
        for name in _COEFF_NAMES:
            x = getattr(self, name)
            if not self.dvr.in_ring(x):
                raise MembershipError(f"coefficient {name}={x} is not in Z_({self.dvr.p})")

    @classmethod
    def of(cls, dvr: DvrConfig, a, b, c, u=0, v=0, w=0) -> "TernaryForm":
        return cls(dvr, *(rational(x) for x in (a, b, c, u, v, w)))

    @classmethod
    def from_strings(cls, dvr: DvrConfig, texts) -> "TernaryForm":
        if len(texts) != 6:
            raise ParseError("a ternary form needs six coefficients a,b,c,u,v,w")
        return cls(dvr, *(parse_rational(str(t)) for t in texts))

    def coefficients(self):
        return (self.a, self.b, self.c, self.u, self.v, self.w)

    def half_discriminant(self):
        a, b, c, u, v, w = self.coefficients()
        return 4 * a * b * c + u * v * w - a * u * u - b * v * v - c * w * w

    def is_degenerate(self) -> bool:
        return self.half_discriminant() == 0

    def apply(self, x, y, z):
        a, b, c, u, v, w = self.coefficients()
        return a * x * x + b * y * y + c * z * z + u * y * z + v * x * z + w * x * y

    def residue_form(self) -> "ResidueForm":
        p = self.dvr.p
        red = tuple(self.dvr.residue(x, 1) for x in self.coefficients())
        return ResidueForm(p, *red)

    def element(self, x0, x1=0, x2=0, x3=0) -> "C0Element":
        return C0Element(self, (rational(x0), rational(x1), rational(x2), rational(x3)))

    def one(self) -> "C0Element":
        return self.element(1)

    def gen_i(self) -> "C0Element":
        return self.element(0, 1)

    def gen_j(self) -> "C0Element":
        return self.element(0, 0, 1)

    def gen_k(self) -> "C0Element":
        return self.element(0, 0, 0, 1)

    def to_obj(self):
        return {
            name: format_rational(getattr(self, name)) for name in _COEFF_NAMES
        }

    def __str__(self):
        return "(" + ",".join(format_rational(x) for x in self.coefficients()) + ")"


def _mult_table(a, b, c, u, v, w, one, zero):
    """Basis products e_i * e_j as coordinate 4-tuples; index 0 is 1."""
    t = [[None] * 4 for _ in range(4)]
    for s in range(4):
        unit = [zero] * 4
        unit[s] = one
        t[0][s] = tuple(unit)
        t[s][0] = tuple(unit)
    t[1][1] = (-b * c, u, zero, zero)
    t[1][2] = (c * w, zero, zero, -c)
    t[1][3] = (-u * w, w, b, u)
    t[2][1] = (-u * v, v, u, c)
    t[2][2] = (-a * c, zero, v, zero)
    t[2][3] = (a * u, -a, zero, zero)
    t[3][1] = (b * v, zero, -b, zero)
    t[3][2] = (-v * w, a, w, v)
    t[3][3] = (-a * b, zero, zero, w)
    return t


@lru_cache(maxsize=None)
def _form_table(form: TernaryForm):
    a, b, c, u, v, w = form.coefficients()
    return _mult_table(a, b, c, u, v, w, rational(1), rational(0))


class C0Element:
    """Coordinate vector on the basis 1, i, j, k of the even Clifford algebra."""

    __slots__ = ("form", "x")

    def __init__(self, form: TernaryForm, coords):
        self.form = form
        self.x = tuple(coords)

    def _check(self, other):
        if self.form != other.form:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return C0Element(self.form, tuple(s + t for s, t in zip(self.x, other.x)))

    def __sub__(self, other):
        self._check(other)
        return C0Element(self.form, tuple(s - t for s, t in zip(self.x, other.x)))

    def __neg__(self):
        return C0Element(self.form, tuple(-s for s in self.x))

    def scale(self, r):
        return C0Element(self.form, tuple(s * r for s in self.x))

    def __mul__(self, other):
        if not isinstance(other, C0Element):
            return NotImplemented
        self._check(other)
        table = _form_table(self.form)
        x, y = self.x, other.x
        acc = [
            x[0] * y[0],
            x[0] * y[1] + x[1] * y[0],
            x[0] * y[2] + x[2] * y[0],
            x[0] * y[3] + x[3] * y[0],
        ]
        for i in (1, 2, 3):
            xi = x[i]
            if not xi:
                continue
            for j in (1, 2, 3):
                coef = xi * y[j]
                if coef:
                    row = table[i][j]
                    acc[0] += coef * row[0]
                    acc[1] += coef * row[1]
                    acc[2] += coef * row[2]
                    acc[3] += coef * row[3]
        return C0Element(self.form, tuple(acc))

    def conj(self) -> "C0Element":
        _a, _b, _c, u, v, w = self.form.coefficients()
        x0, x1, x2, x3 = self.x
        return C0Element(self.form, (x0 + u * x1 + v * x2 + w * x3, -x1, -x2, -x3))

    def trace(self):
        _a, _b, _c, u, v, w = self.form.coefficients()
        x0, x1, x2, x3 = self.x
        return 2 * x0 + u * x1 + v * x2 + w * x3

    def norm(self):
        a, b, c, u, v, w = self.form.coefficients()
        x0, x1, x2, x3 = self.x
        return (
            x0 * x0
            + b * c * x1 * x1
            + a * c * x2 * x2
            + a * b * x3 * x3
            + u * x0 * x1
            + v * x0 * x2
            + w * x0 * x3
            + (u * v - c * w) * x1 * x2
            + (u * w - b * v) * x1 * x3
            + (v * w - a * u) * x2 * x3
        )

    def nr_tr_conj(self):
        """(reduced norm, reduced trace, conjugate); x * conj(x) = nr(x)
        and x^2 - tr(x) x + nr(x) = 0 hold exactly."""
        return self.norm(), self.trace(), self.conj()

    def is_zero(self) -> bool:
        return not any(self.x)

    def is_nilpotent(self) -> bool:
        """nr = tr = 0; cross-checked against the square vanishing."""
        flag = self.norm() == 0 and self.trace() == 0
        if flag and not (self * self).is_zero():
            raise AssertionError(f"characteristic identity violated at {self}")
        return flag

    def in_order(self) -> bool:
        return all(self.form.dvr.in_ring(t) for t in self.x)

    def residue_vector(self, m: int):
        if not self.in_order():
            raise MembershipError(f"{self} has coordinates outside Z_({self.form.dvr.p})")
        return tuple(self.form.dvr.residue(t, m) for t in self.x)

    def __eq__(self, other):
        if not isinstance(other, C0Element):
            return NotImplemented
        return self.form == other.form and self.x == other.x

    def __hash__(self):
        return hash(tuple((int(t.numerator), int(t.denominator)) for t in self.x))

    def to_strings(self):
        return [format_rational(t) for t in self.x]

    def __str__(self):
        names = ("", "i", "j", "k")
        parts = []
        for t, name in zip(self.x, names):
            if t:
                parts.append(f"{format_rational(t)}{name}" if name else format_rational(t))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"C0Element({self.x})"


# -- the residue algebra over F_p ----------------------------------------


@dataclass(frozen=True)
class ResidueForm:
    """Reduction of a ternary form modulo p (coefficients in [0, p))."""

    p: int
    a: int
    b: int
    c: int
    u: int
    v: int
    w: int

    def coefficients(self):
        return (self.a, self.b, self.c, self.u, self.v, self.w)


@lru_cache(maxsize=None)
def residue_algebra(rform: ResidueForm) -> "ResidueAlgebra":
    return ResidueAlgebra(rform)


class ResidueAlgebra:
    """C0 of a reduced form over F_p, with its radical chain precomputed.

    The radical is found by exhaustive search (p <= 7), certified to be a
    nilpotent two-sided ideal, and the powers are closed spans of basis
    products.
    """

    EXHAUSTIVE_LIMIT = 7

    def __init__(self, rform: ResidueForm):
        p = rform.p
        if p > self.EXHAUSTIVE_LIMIT:
            raise ExhaustiveSearchLimitError(
                f"exhaustive radical search supports p <= {self.EXHAUSTIVE_LIMIT}"
            )
        self.rform = rform
        self.p = p
        a, b, c, u, v, w = rform.coefficients()
        self.table = _mult_table(a, b, c, u, v, w, 1, 0)
        self.table = [
            [tuple(x % p for x in cell) for cell in row] for row in self.table
        ]
        self._radical_chain = None

    # element ops on int 4-tuples

    def mul(self, x, y):
        p = self.p
        acc = [
            x[0] * y[0],
            x[0] * y[1] + x[1] * y[0],
            x[0] * y[2] + x[2] * y[0],
            x[0] * y[3] + x[3] * y[0],
        ]
        for i in (1, 2, 3):
            if not x[i]:
                continue
            for j in (1, 2, 3):
                coef = x[i] * y[j]
                if coef:
                    row = self.table[i][j]
                    for s in range(4):
                        acc[s] += coef * row[s]
        return tuple(t % p for t in acc)

    def add(self, x, y):
        return tuple((s + t) % self.p for s, t in zip(x, y))

    def trace(self, x):
        _a, _b, _c, u, v, w = self.rform.coefficients()
        return (2 * x[0] + u * x[1] + v * x[2] + w * x[3]) % self.p

    def norm(self, x):
        a, b, c, u, v, w = self.rform.coefficients()
        x0, x1, x2, x3 = x
        val = (
            x0 * x0
            + b * c * x1 * x1
            + a * c * x2 * x2
            + a * b * x3 * x3
            + u * x0 * x1
            + v * x0 * x2
            + w * x0 * x3
            + (u * v - c * w) * x1 * x2
            + (u * w - b * v) * x1 * x3
            + (v * w - a * u) * x2 * x3
        )
        return val % self.p

    def conj(self, x):
        _a, _b, _c, u, v, w = self.rform.coefficients()
        return (
            (x[0] + u * x[1] + v * x[2] + w * x[3]) % self.p,
            (-x[1]) % self.p,
            (-x[2]) % self.p,
            (-x[3]) % self.p,
        )

    def elements(self):
        p = self.p
        for n in range(p**4):
            yield (n % p, (n // p) % p, (n // p**2) % p, (n // p**3) % p)

    def basis(self):
        return ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

    # radical machinery

    def gram_matrix(self):
        """Gram matrix of B(x, y) = nr(x+y) - nr(x) - nr(y)."""
        basis = self.basis()
        rows = []
        for e in basis:
            row = []
            for f in basis:
                s = self.add(e, f)
                row.append((self.norm(s) - self.norm(e) - self.norm(f)) % self.p)
            rows.append(row)
        return rows

    def perp_space(self) -> FpSpan:
        return FpSpan(self.p, 4, fp_kernel(self.gram_matrix(), self.p))

    def radical(self) -> FpSpan:
        """J(A) = {x in A-perp : nr(x) = 0}, by brute enumeration."""
        return self.radical_chain()[0]

    def radical_chain(self):
        """[J, J^2, J^3, ...] down to (and excluding) the zero ideal."""
        if self._radical_chain is not None:
            return self._radical_chain
        p = self.p
        perp = self.perp_space()
        members = []
        # enumerate the perp space via coefficient combinations of its basis
        basis = perp.basis()
        for n in range(p ** len(basis)):
            coeffs = []
            t = n
            for _ in basis:
                coeffs.append(t % p)
                t //= p
            vec = [0, 0, 0, 0]
            for cf, bv in zip(coeffs, basis):
                for s in range(4):
                    vec[s] = (vec[s] + cf * bv[s]) % p
            vec = tuple(vec)
            if self.norm(vec) == 0:
                members.append(vec)
        rad = FpSpan(p, 4, members)
        self._verify_ideal(rad)
        chain = [rad]
        while not chain[-1].is_zero():
            prev = chain[-1].basis()
            first = chain[0].basis()
            prods = [self.mul(x, y) for x in prev for y in first]
            nxt = FpSpan(p, 4, prods)
            if nxt.is_zero():
                break
            chain.append(nxt)
        self._radical_chain = chain
        return chain

    def _verify_ideal(self, span: FpSpan):
        for vec in span.basis():
            for e in self.basis():
                if not span.contains(self.mul(vec, e)) or not span.contains(self.mul(e, vec)):
                    raise AssertionError("radical candidate is not a two-sided ideal")
        # nilpotency: some power of every member must vanish
        for vec in span.basis():
            acc = vec
            for _ in range(4):
                acc = self.mul(acc, vec)
            if any(acc):
                raise AssertionError("radical candidate is not nil")

    def nilpotency_index(self) -> int:
        """Minimal N with J^N = 0 (N = 1 when the radical vanishes)."""
        chain = self.radical_chain()
        if chain[0].is_zero():
            return 1
        return len(chain) + 1

    def quotient_dimension(self) -> int:
        return 4 - self.radical().fp_dimension

    def quotient_descriptor(self):
        """(dimension, kind) of A/J: kind is "field", "split", or "quaternion"."""
        dim = self.quotient_dimension()
        if dim == 1:
            return (1, "field")
        if dim == 4:
            return (4, "quaternion")
        rad = self.radical()
        reps = self._quotient_representatives(rad)
        zero = (0, 0, 0, 0)
        one = (1, 0, 0, 0)
        for x in reps:
            xx = tuple(rad.reduce(self.mul(x, x)))
            if xx == tuple(rad.reduce(x)) and x != zero and x != tuple(rad.reduce(one)):
                return (2, "split")
        return (2, "field")

    def _quotient_representatives(self, rad: FpSpan):
        """All p^dim coset representatives of A/J, reduced against J."""
        p = self.p
        pivots = {row[0] for row in rad.rows}
        free = [s for s in range(4) if s not in pivots]
        reps = []
        for n in range(p ** len(free)):
            vec = [0, 0, 0, 0]
            t = n
            for s in free:
                vec[s] = t % p
                t //= p
            reps.append(tuple(rad.reduce(tuple(vec))))
        return reps


# -- case classification --------------------------------------------------


def _sqrt_mod(x: int, p: int):
    x %= p
    for y in range(p):
        if (y * y) % p == x:
            return y
    return None


@dataclass(frozen=True)
class ResidueClassification:
    case: str
    radical_basis: tuple
    radical_sq_basis: tuple
    radical_cube_basis: tuple
    quotient: tuple  # (dimension, kind)
    quotient_detail: str


def classify_residue(rform: ResidueForm) -> ResidueClassification:
    """Predicted radical chain and quotient type for a normalized shape.

    Supported shapes: diagonal with abc != 0; diagonal with ab != 0, c = 0;
    a x^2 alone; and in characteristic 2 the shapes with u != 0 and a != 0
    or a = 0.  Anything else must be normalized by the caller first.
    """
    p = rform.p
    a, b, c, u, v, w = rform.coefficients()
    if v or w:
        raise NormalizationRequiredError("normalize first: v and w must vanish")

    if u == 0:
        if a and b and c:
            if p != 2:
                return ResidueClassification("1a", (), (), (), (4, "quaternion"), "quaternion algebra")
            y0 = _sqrt_mod(b * c, p)
            z0 = _sqrt_mod(a * c, p)
            if y0 is not None and z0 is not None:
                jb = (
                    (y0, 1, 0, 0),
                    (z0, 0, 1, 0),
                    ((y0 * z0) % p, 0, 0, c % p),
                )
                j2 = (((y0 * z0) % p, z0, y0, c % p),)
                return ResidueClassification(
                    "1b-i", jb, j2, (), (1, "field"), "residue field"
                )
            sol = _binary_isotropy(b * c % p, a * c % p, p)
            if sol is not None:
                yy0, y1, y2 = sol
                jb = (
                    (yy0, y1, y2, 0),
                    ((y1 * b * c) % p, yy0, 0, (y2 * c) % p),
                )
                return ResidueClassification(
                    "1b-ii", jb, (), (), (2, "field"), "quadratic extension"
                )
            return ResidueClassification(
                "1b-iii", (), (), (), (4, "quaternion"), "biquadratic field"
            )
        if a and b and not c:
            if p != 2:
                jb = ((0, 1, 0, 0), (0, 0, 1, 0))
                if _sqrt_mod(-a * b, p) is not None:
                    return ResidueClassification(
                        "2a", jb, (), (), (2, "split"), "split: X^2 + ab has distinct roots"
                    )
                return ResidueClassification(
                    "2a", jb, (), (), (2, "field"), "field: X^2 + ab irreducible"
                )
            y0 = _sqrt_mod(a * b, p)
            if y0 is not None:
                jb = ((0, 1, 0, 0), (0, 0, 1, 0), (y0, 0, 0, 1))
                j2 = ((0, y0, b % p, 0),)
                return ResidueClassification("2b-i", jb, j2, (), (1, "field"), "residue field")
            jb = ((0, 1, 0, 0), (0, 0, 1, 0))
            return ResidueClassification(
                "2b-ii", jb, (), (), (2, "field"), "inseparable quadratic extension"
            )
        if not b and not c:
            jb = ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
            j2 = ((0, 1, 0, 0),) if a else ()
            return ResidueClassification("3", jb, j2, (), (1, "field"), "residue field")
        raise NormalizationRequiredError(
            "normalize first: diagonal zeros must trail (a, then b, then c)"
        )

    # u != 0 is a characteristic-2 shape
    if p != 2:
        raise NormalizationRequiredError("normalize first: u != 0 needs residue characteristic 2")
    if a:
        return ResidueClassification("4", (), (), (), (4, "quaternion"), "quaternion algebra")
    jb = ((0, 0, 1, 0), (0, 0, 0, 1))
    split = any((y * y + u * y - b * c) % p == 0 for y in range(p))
    if split:
        return ResidueClassification(
            "5", jb, (), (), (2, "split"), "split: X^2 + uX + bc has a root"
        )
    return ResidueClassification(
        "5", jb, (), (), (2, "field"), "separable quadratic extension"
    )


def _binary_isotropy(s: int, t: int, p: int):
    """Nonzero (y0, y1, y2) with s*y1^2 + t*y2^2 = y0^2 over F_p, or None."""
    for y1 in range(p):
        for y2 in range(p):
            if (y1, y2) == (0, 0):
                continue
            y0 = _sqrt_mod(s * y1 * y1 + t * y2 * y2, p)
            if y0 is not None:
                return (y0, y1, y2)
    return None


# -- order-level structure -------------------------------------------------


def order_predicates(form: TernaryForm):
    """(residue dimension, is_local, is_maximal_hint, is_eichler_hint)."""
    if form.is_degenerate():
        raise DegenerateFormError(f"form {form} has vanishing half-discriminant")
    alg = residue_algebra(form.residue_form())
    dim, kind = alg.quotient_descriptor()
    return {
        "residue_dimension": dim,
        "is_local": kind == "field",
        "is_maximal_hint": dim == 4,
        "is_eichler_hint": kind == "split",
    }


@lru_cache(maxsize=None)
def pi2_context(form: TernaryForm) -> "Pi2Context":
    return Pi2Context(form)


class Pi2Context:
    """J(R) and J(R)^2 as canonical modules inside R / pi^2 R.

    pi R lies in J(R) and pi^2 R in J(R)^2, so both ideals are the full
    preimages of their images mod pi^2 and membership can be decided there.
    J(R) is spanned by pi-multiples of the basis together with lifts of the
    residue radical; J(R)^2 by the pairwise products of those generators.
    """

    def __init__(self, form: TernaryForm):
        p = form.dvr.p
        self.form = form
        self.p = p
        a, b, c, u, v, w = (form.dvr.residue(x, 2) for x in form.coefficients())
        q2 = p * p
        self.table2 = [
            [tuple(x % q2 for x in cell) for cell in row]
            for row in _mult_table(a, b, c, u, v, w, 1, 0)
        ]
        alg = residue_algebra(form.residue_form())
        self.algebra = alg
        gens = [tuple(p if s == t else 0 for s in range(4)) for t in range(4)]
        gens += [tuple(x % q2 for x in vec) for vec in alg.radical().basis()]
        self.j_module = ZModModule(p, 2, 4, gens)
        prods = [self._mul2(g, h) for g in gens for h in gens]
        self.j2_module = ZModModule(p, 2, 4, prods)
        if not self.j_module.contains_module(self.j2_module):
            raise AssertionError("J^2 escaped J at the pi^2 level")

    def _mul2(self, x, y):
        q2 = self.p * self.p
        acc = [
            x[0] * y[0],
            x[0] * y[1] + x[1] * y[0],
            x[0] * y[2] + x[2] * y[0],
            x[0] * y[3] + x[3] * y[0],
        ]
        for i in (1, 2, 3):
            if not x[i]:
                continue
            for j in (1, 2, 3):
                coef = x[i] * y[j]
                if coef:
                    row = self.table2[i][j]
                    for s in range(4):
                        acc[s] += coef * row[s]
        return tuple(t % q2 for t in acc)

    def in_radical(self, x: C0Element) -> bool:
        return self.algebra.radical().contains(x.residue_vector(1))

    def in_radical_squared(self, x: C0Element) -> bool:
        return self.j2_module.contains(x.residue_vector(2))


# -- isotropy and the nilpotent construction -------------------------------


def find_isotropic(form: TernaryForm, bound: int = 6):
    """Vector (z0, z2, z3) in D with z0^2 + a(b z3^2 + c z2^2 + u z2 z3) = 0,
    normalized to minimal valuation 0 (then min(v(z2), v(z3)) = 0 holds).

    Deterministic bounded search: scan (z2, z3) boxes of radius p^t, solve
    for z0 by an exact square test, and return the candidate minimizing
    (max coordinate size, z0, z2, z3); a semi-decision only -- exhausting
    the bound proves nothing about anisotropy.
    """
    if form.is_degenerate():
        raise DegenerateFormError(f"form {form} has vanishing half-discriminant")
    if form.v or form.w:
        raise NormalizationRequiredError("normalize first: v and w must vanish")
    a, b, c, u = form.a, form.b, form.c, form.u
    p = form.dvr.p
    best = None

    def consider(z0, z2, z3):
        nonlocal best
        radius = max(abs(z0), abs(z2), abs(z3))
        key = (radius, z0, z2, abs(z3), 0 if z3 >= 0 else 1, z3)
        if best is None or key < best:
            best = key

    for t in range(1, bound + 1):
        r = p**t
        for z2 in range(r):
            for z3 in range(-r + 1, r):
                if z2 == 0 and z3 == 0:
                    continue
                m = -a * (b * z3 * z3 + c * z2 * z2 + u * z2 * z3)
                if m < 0:
                    continue
                num, den = int(m.numerator), int(m.denominator)
                rn, rd = math.isqrt(num), math.isqrt(den)
                if rn * rn != num or rd * rd != den:
                    continue
                consider(rational(rn, rd), z2, z3)
        if best is not None and best[0] < r:
            break
    if best is None:
        raise IsotropyNotFoundError(
            f"no isotropic vector for {form} within residues mod {p}^{bound}"
        )
    z0, z2, z3 = best[1], best[2], best[5]
    z0, z2, z3 = rational(z0), rational(z2), rational(z3)
    val = min(form.dvr.valuation(t) for t in (z0, z2, z3) if t)
    if val:
        scale = rational(1, p**val)
        z0, z2, z3 = z0 * scale, z2 * scale, z3 * scale
    if min(form.dvr.valuation(z2), form.dvr.valuation(z3)) != 0:
        raise AssertionError("normalized isotropic vector kept positive j/k valuations")
    return (z0, z2, z3)


def find_nilpotent_in_radical(form: TernaryForm, bound: int = 6) -> C0Element:
    """z = z0 + z2 j - z3 k with nr(z) = 0, inside J(R) but outside J(R)^2."""
    preds = order_predicates(form)
    if not preds["is_local"]:
        raise NonLocalOrderError(f"form {form} does not give a local order")
    z0, z2, z3 = find_isotropic(form, bound)
    z = form.element(z0, 0, z2, -z3)
    if z.norm() != 0:
        raise AssertionError("isotropic vector gave a nonzero reduced norm")
    ctx = pi2_context(form)
    if not ctx.in_radical(z):
        raise AssertionError("nilpotent candidate escaped the radical")
    if ctx.in_radical_squared(z):
        raise AssertionError("nilpotent candidate fell into the radical square")
    return z


def long_atom_family(form: TernaryForm, z: C0Element, k: int) -> C0Element:
    """pi^k + z for k >= 2: an atom whose norm valuation is 2k when
    tr(z) = 0 (and k + v(tr z) for large k otherwise)."""
    if k < 2:
        raise ValueError("k must be at least 2 so that pi^k falls into J^2")
    p = form.dvr.p
    x = form.element(rational(p) ** k) + z
    expected = rational(p) ** (2 * k) + rational(p) ** k * z.trace()
    if x.norm() != expected:
        raise AssertionError("norm identity for pi^k + z failed")
    ctx = pi2_context(form)
    if not ctx.in_radical(x) or ctx.in_radical_squared(x):
        raise AssertionError("pi^k + z escaped J \\ J^2")
    return x


def is_atom_local(form: TernaryForm, x: C0Element):
    """Tri-state atom test in a local order.

    True on the provably atomic region J \\ J^2; False when x is an
    exhibited product of two radical elements (currently: pi divides x and
    the quotient stays in the radical); None (undetermined) for the
    remaining sliver of J^2.
    """
    preds = order_predicates(form)
    if not preds["is_local"]:
        raise NonLocalOrderError(f"form {form} does not give a local order")
    if not x.in_order():
        raise MembershipError(f"{x} is not in the order")
    if x.norm() == 0:
        raise NotCancellativeError(f"{x} is a zero divisor")
    ctx = pi2_context(form)
    if not ctx.in_radical(x):
        raise UnitInputError(f"{x} is a unit; atom test undefined")
    if not ctx.in_radical_squared(x):
        return True
    quotient = x.scale(rational(1, form.dvr.p))
    if quotient.in_order() and ctx.in_radical(quotient):
        return False
    return None


def nilpotency_index(form: TernaryForm) -> int:
    """Minimal N with J(R/pi R)^N = 0; products of N atoms are then
    divisible by pi."""
    return residue_algebra(form.residue_form()).nilpotency_index()


def radical_report(form: TernaryForm):
    """Classification cross-checked against the brute-force radical chain."""
    rform = form.residue_form()
    alg = residue_algebra(rform)
    pred = classify_residue(rform)
    chain = alg.radical_chain()
    brute = {
        "radical_basis": [list(v) for v in alg.radical().basis()],
        "radical_dimension": alg.radical().fp_dimension,
        "nilpotency_index": alg.nilpotency_index(),
        "quotient": list(alg.quotient_descriptor()),
    }
    agreement = _classification_matches(alg, pred, chain)
    return {
        "case": pred.case,
        "predicted_radical_basis": [list(v) for v in pred.radical_basis],
        "predicted_quotient": list(pred.quotient),
        "quotient_detail": pred.quotient_detail,
        "brute_force": brute,
        "agrees": agreement,
    }


def _classification_matches(alg: ResidueAlgebra, pred: ResidueClassification, chain) -> bool:
    p = alg.p
    empty = FpSpan(p, 4, [])
    wanted = [
        FpSpan(p, 4, vecs)
        for vecs in (pred.radical_basis, pred.radical_sq_basis, pred.radical_cube_basis)
    ]
    for s, want in enumerate(wanted):
        got = chain[s] if s < len(chain) else empty
        if not want.equals(got):
            return False
    return tuple(pred.quotient) == alg.quotient_descriptor()
