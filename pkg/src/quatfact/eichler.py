"""Eichler orders of level n in the 2x2 matrix algebra over K = Q.

The order R consists of matrices [[a, b],[c, d]] with a, c, d in D = Z_(p)
and v(b) >= n; the (1,2) entry is stored literally (the normalized
coefficient is b / pi^n).  Reduced norm = determinant, conjugation =
adjugate.  Levels n <= 1 are hereditary; arithmetic works there, but every
factorization-theoretic routine refuses them with `HereditaryLevelError`.

For n >= 2 the cancellative atoms are exactly
  (I)  v(det A) = 1, or
  (II) v(b/pi^n) = v(c) = 0 and v(a) > 0 < v(d),
and every atom is right associated to precisely one member of eight
canonical families.  `canonical_right_associate` realizes that normal form
constructively (column scaling followed by residue reduction of the two
diagonal entries modulo pi^(v(det))), and `enumerate_atoms` lists the
families exhaustively up to a norm-valuation bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .dvr import DvrConfig, format_rational, int_valuation, parse_rational, rational
from .errors import (
    HereditaryLevelError,
    MembershipError,
    NotCancellativeError,
    ParseError,
    UnitInputError,
)

_ZERO = rational(0)
_ONE = rational(1)


class Mat2:
    """Exact 2x2 matrix over Q.  `b` is the literal (1,2) entry."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def of(cls, a, b, c, d):
        return cls(rational(a), rational(b), rational(c), rational(d))

    @classmethod
    def identity(cls):
        return cls(_ONE, _ZERO, _ZERO, _ONE)

    @classmethod
    def diagonal(cls, x, y):
        return cls(rational(x), _ZERO, _ZERO, rational(y))

    @classmethod
    def scalar(cls, x):
        return cls.diagonal(x, x)

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other):
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, r):
        return Mat2(self.a * r, self.b * r, self.c * r, self.d * r)

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def nr_tr_adj(self):
        """(reduced norm, reduced trace, conjugate) = (det, trace, adjugate);
        A * adj(A) = det(A) * Id holds exactly."""
        return self.det(), self.trace(), self.adjugate()

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def is_integral(self) -> bool:
        return all(int(x.denominator) == 1 for x in self.entries())

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (
            self.a == other.a and self.b == other.b and self.c == other.c and self.d == other.d
        )

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Deterministic sort/hash key."""
        return tuple(
            (int(x.numerator), int(x.denominator)) for x in (self.a, self.b, self.c, self.d)
        )

    def to_strings(self):
        return [
            [format_rational(self.a), format_rational(self.b)],
            [format_rational(self.c), format_rational(self.d)],
        ]

    @classmethod
    def from_strings(cls, obj) -> "Mat2":
        try:
            (sa, sb), (sc, sd) = obj
        except (TypeError, ValueError) as exc:
            raise ParseError(f"matrix must be [[a,b],[c,d]], got {obj!r}") from exc
        return cls(
            parse_rational(str(sa)),
            parse_rational(str(sb)),
            parse_rational(str(sc)),
            parse_rational(str(sd)),
        )

    def __str__(self):
        rows = self.to_strings()
        return f"[[{rows[0][0]}, {rows[0][1]}], [{rows[1][0]}, {rows[1][1]}]]"

    def __repr__(self):
        return f"Mat2({self.a}, {self.b}, {self.c}, {self.d})"


#: class identifiers in canonical order
ATOM_CLASS_IDS = ("I-upper", "I-lower", "II-3", "II-4", "II-5", "II-6", "II-7", "II-8")
_CLASS_INDEX = {cid: i for i, cid in enumerate(ATOM_CLASS_IDS)}


@dataclass(frozen=True)
class AtomClassTag:
    """Which canonical family an atom belongs to, with its parameters.

    Parameter layout: (lam,) for I-upper/I-lower; (m, m', eps, delta) for
    II-3/II-4; (m, eps) for II-5; (m', delta) for II-6; () for II-7;
    (m, m', eps, delta, k) for II-8.
    """

    class_id: str
    params: tuple

    def sort_key(self):
        return (_CLASS_INDEX[self.class_id], self.params)

    def __str__(self):
        inner = ",".join(str(x) for x in self.params)
        return f"{self.class_id}({inner})"


@dataclass(frozen=True)
class EichlerOrder:
    """The Eichler order of level `level` over Z_(p)."""

    dvr: DvrConfig
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")

    # -- basic structure ------------------------------------------------

    @property
    def p(self) -> int:
        return self.dvr.p

    def pi_element(self) -> Mat2:
        """The central element pi = diag(p, p)."""
        return Mat2.scalar(self.p)

    def require_nonhereditary(self):
        if self.level < 2:
            raise HereditaryLevelError(
                f"level {self.level} is hereditary; factorization routines need level >= 2"
            )

    def _v(self, x):
        return self.dvr.valuation(x)

    def corner_valuations(self, A: Mat2):
        """(v11, v12, v21, v22) of the literal entries."""
        return (self._v(A.a), self._v(A.b), self._v(A.c), self._v(A.d))

    def contains(self, A: Mat2) -> bool:
        v = self.dvr.valuation
        return (
            v(A.a) >= 0 and v(A.c) >= 0 and v(A.d) >= 0 and v(A.b) >= self.level
        )

    def _require_member(self, A: Mat2):
        if not self.contains(A):
            raise MembershipError(f"{A} is not in the level-{self.level} order over Z_({self.p})")

    def norm_valuation(self, A: Mat2):
        """v(nr A) = v(det A); INFINITY for zero determinant."""
        return self._v(A.det())

    def is_unit(self, A: Mat2) -> bool:
        self._require_member(A)
        return self._v(A.a) == 0 and self._v(A.d) == 0

    def is_cancellative(self, A: Mat2) -> bool:
        self._require_member(A)
        return A.det() != 0

    def in_jacobson(self, A: Mat2) -> bool:
        self._require_member(A)
        return self._v(A.a) >= 1 and self._v(A.d) >= 1

    def multiply(self, A: Mat2, B: Mat2) -> Mat2:
        return A * B

    # -- atoms ------------------------------------------------------------

    def is_atom(self, A: Mat2) -> bool:
        """Atom test: v(det) = 1, or unit corners off the diagonal with
        both diagonal valuations positive."""
        self.require_nonhereditary()
        self._require_member(A)
        det = A.det()
        if det == 0:
            raise NotCancellativeError(f"{A} is a zero divisor")
        if self._v(A.a) == 0 and self._v(A.d) == 0:
            raise UnitInputError(f"{A} is a unit; atom test undefined")
        if self._v(det) == 1:
            return True
        return (
            self._v(A.b) == self.level
            and self._v(A.c) == 0
            and self._v(A.a) >= 1
            and self._v(A.d) >= 1
        )

    def unit_decompose(self, E: Mat2):
        """Split a unit as E = L * Delta * U (unitriangular, diagonal)."""
        if not self.is_unit(E):
            raise UnitInputError(f"{E} is not a unit of the order")
        L = Mat2(_ONE, _ZERO, E.c / E.a, _ONE)
        Delta = Mat2.diagonal(E.a, E.d - E.c * E.b / E.a)
        U = Mat2(_ONE, E.b / E.a, _ZERO, _ONE)
        return L, Delta, U

    def long_atom(self, a) -> Mat2:
        """An atom with determinant a, for any non-unit a in D^bullet."""
        self.require_nonhereditary()
        a = rational(a)
        s = self._v(a)
        if not self.dvr.in_ring(a) or a == 0 or s == 0:
            raise MembershipError(f"{a} is not a non-unit of D^bullet")
        if s == 1:
            return Mat2.diagonal(a, 1)
        p = rational(self.p)
        return Mat2(a / p + p ** (self.level - 1), p**self.level, _ONE, p)

    # -- canonical right associates --------------------------------------

    def right_associated(self, U: Mat2, V: Mat2) -> bool:
        """True iff U = V * E for a unit E of the order."""
        det = V.det()
        if det == 0:
            raise NotCancellativeError("right association needs cancellative elements")
        E = V.adjugate() * U
        E = E.scale(1 / det)
        return self.contains(E) and self._v(E.a) == 0 and self._v(E.d) == 0

    def left_associated(self, U: Mat2, V: Mat2) -> bool:
        """True iff U = E * V for a unit E of the order."""
        det = V.det()
        if det == 0:
            raise NotCancellativeError("left association needs cancellative elements")
        E = U * V.adjugate()
        E = E.scale(1 / det)
        return self.contains(E) and self._v(E.a) == 0 and self._v(E.d) == 0

    def canonical_right_associate(self, U: Mat2):
        """(tag, V, E) with V the unique canonical right associate, U = V * E.

        Type I reduces by clearing the off-diagonal entry and scaling a
        column; type II scales both columns to put the matrix in the shape
        [[a, pi^n],[1, d]] and then reduces a and d modulo pi^(v(det U)) to
        the canonical residue system (the modulus is n + k in the balanced
        family II-8, where the reduced first diagonal fixes the unit part of
        the second one up to pi^k * delta).
        """
        if not self.is_atom(U):
            raise ValueError(f"{U} is not an atom")
        p, n = self.p, self.level
        pr = rational(p)
        pn = pr**n
        s = self._v(U.det())
        if s == 1:
            if self._v(U.a) == 1:
                # [[pi, lam*pi^n],[0,1]]: lam is the mod-p residue of b/(d*pi^n)
                lam = self.dvr.residue(U.b / (U.d * pn), 1)
                tag = AtomClassTag("I-upper", (lam,))
                V = Mat2(pr, lam * pn, _ZERO, _ONE)
            else:
                # [[1,0],[lam,pi]]: lam is the mod-p residue of c/a
                lam = self.dvr.residue(U.c / U.a, 1)
                tag = AtomClassTag("I-lower", (lam,))
                V = Mat2(_ONE, _ZERO, rational(lam), pr)
        else:
            bhat = U.b / pn
            a1 = U.a / U.c
            d1 = U.d / bhat
            m = self._v(a1)
            mp = self._v(d1)
            if m + mp < n:
                a2 = self.dvr.residue(a1, s)
                d2 = self.dvr.residue(d1, s)
                eps = a2 // p**m
                delta = d2 // p**mp
                tag = AtomClassTag("II-3", (m, mp, eps, delta))
                V = Mat2(rational(a2), pn, _ONE, rational(d2))
            elif m + mp > n:
                a2 = self.dvr.residue(a1, n)
                d2 = self.dvr.residue(d1, n)
                V = Mat2(rational(a2), pn, _ONE, rational(d2))
                if a2 and d2:
                    tag = AtomClassTag("II-4", (m, mp, a2 // p**m, d2 // p**mp))
                elif a2:
                    tag = AtomClassTag("II-5", (m, a2 // p**m))
                elif d2:
                    tag = AtomClassTag("II-6", (mp, d2 // p**mp))
                else:
                    tag = AtomClassTag("II-7", ())
            else:
                k = s - n
                eps = self.dvr.residue(a1 / pr**m, mp + k)
                delta = self.dvr.residue((d1 / pr**mp - rational(1, eps)) / pr**k, m)
                tag = AtomClassTag("II-8", (m, mp, eps, delta, k))
                V = Mat2(
                    eps * pr**m,
                    pn,
                    _ONE,
                    (rational(1, eps) + pr**k * delta) * pr**mp,
                )
        E = (V.adjugate() * U).scale(1 / V.det())
        if not (self.contains(E) and self._v(E.a) == 0 and self._v(E.d) == 0):
            raise AssertionError(f"canonicalization produced a non-unit cofactor for {U}")
        return tag, V, E

    def canonical_left_associate(self, U: Mat2):
        """(V, E) with U = E * V; V canonical within the left-association
        class (the adjugate of the canonical right associate of adj U)."""
        tag, W, Ew = self.canonical_right_associate(U.adjugate())
        del tag
        return W.adjugate(), Ew.adjugate()

    # -- enumeration ------------------------------------------------------

    def enumerate_atoms(self, max_norm_val: int):
        """All canonical atoms with v(nr) <= max_norm_val, sorted by
        (class, parameters).  Complete and duplicate-free."""
        self.require_nonhereditary()
        if max_norm_val < 1:
            raise ValueError("max_norm_val must be >= 1")
        return _enumerate_atoms_cached(self.p, self.level, max_norm_val)

    # -- divisors ---------------------------------------------------------

    def exact_left_divide(self, V: Mat2, A: Mat2):
        """Cofactor C with A = V * C if it lies in the order, else None."""
        det = V.det()
        if det == 0:
            raise NotCancellativeError("left division by a zero divisor")
        C = (V.adjugate() * A).scale(1 / det)
        return C if self.contains(C) else None

    def left_divisor_atoms(self, A: Mat2):
        """All (canonical atom V, cofactor C) with A = V * C in the order.

        Families I-upper/I-lower are resolved by a direct congruence on the
        parameter lam; families II-3..II-8 are scanned from the enumerated
        table with corner-valuation pruning (the top-left and bottom-right
        valuations are additive on products while they stay below n, and a
        type-II divisor forces A into the radical).
        """
        self.require_nonhereditary()
        self._require_member(A)
        det = A.det()
        if det == 0:
            raise NotCancellativeError(f"{A} is a zero divisor")
        if self._v(A.a) == 0 and self._v(A.d) == 0:
            raise UnitInputError(f"{A} is a unit")
        p, n = self.p, self.level
        pr = rational(p)
        pn = pr**n
        nv = self._v(det)
        va, vb, vc, vd = self.corner_valuations(A)
        out = []

        # family I-upper [[pi, lam*pi^n],[0,1]] divides iff v(a) >= 1 and
        # b/pi^n = lam*d (mod pi)
        if va >= 1:
            lams = ()
            if vd == 0:
                lams = (self.dvr.residue(A.b / (A.d * pn), 1),)
            elif vb >= n + 1:
                lams = tuple(range(p))
            for lam in lams:
                V = Mat2(pr, lam * pn, _ZERO, _ONE)
                C = Mat2((A.a - lam * pn * A.c) / pr, (A.b - lam * pn * A.d) / pr, A.c, A.d)
                out.append((V, C))

        # family I-lower [[1,0],[lam,pi]] divides iff v(d) >= 1 and c = lam*a (mod pi)
        if vd >= 1:
            lams = ()
            if va == 0:
                lams = (self.dvr.residue(A.c / A.a, 1),)
            elif vc >= 1:
                lams = tuple(range(p))
            for lam in lams:
                V = Mat2(_ONE, _ZERO, rational(lam), pr)
                C = Mat2(A.a, A.b, (A.c - lam * A.a) / pr, (A.d - lam * A.b) / pr)
                out.append((V, C))

        # families II-3..II-8 lie in the radical, so they can only divide
        # radical elements
        if va >= 1 and vd >= 1 and nv >= 2:
            integral = A.is_integral()
            if integral:
                ia, ib, ic, id_ = (int(x.numerator) for x in A.entries())
            for rec in _scan_atoms_cached(self.p, n, int(nv)):
                (tag, V, v11, v22, s, adj_int, det_int, lcm) = rec
                del tag
                # corner additivity: below level n the top-left/bottom-right
                # valuations of a divisor cannot exceed those of the product
                if (va < n and v11 > va) or (vd < n and v22 > vd):
                    continue
                if integral:
                    e, f, g, h = adj_int  # adjugate of the integral associate
                    ps = p**s
                    if (g * ia + h * ic) % ps:
                        continue
                    if (g * ib + h * id_) % ps:
                        continue
                    if (e * ia + f * ic) % ps:
                        continue
                    if (e * ib + f * id_) % (ps * p**n):
                        continue
                    # adj scales by lcm but det by lcm^2, hence the extra factor
                    C = Mat2(
                        rational((e * ia + f * ic) * lcm, det_int),
                        rational((e * ib + f * id_) * lcm, det_int),
                        rational((g * ia + h * ic) * lcm, det_int),
                        rational((g * ib + h * id_) * lcm, det_int),
                    )
                else:
                    C = (V.adjugate() * A).scale(1 / V.det())
                    if not self.contains(C):
                        continue
                out.append((V, C))
        return out

    # -- associates -------------------------------------------------------

    def special_associate(self, A: Mat2) -> Mat2:
        """An associate E*A*F whose entry valuations satisfy
        v(c) <= min(v(a), v(d)) <= v(b) <= min(v(a), v(d)) + n <= v(c) + 2n
        (valuations of literal entries; v(b) is the (1,2) valuation).

        Four reduction passes with unimodular row/column additions; each
        later pass preserves the inequalities established before it.
        """
        self._require_member(A)
        if A.det() == 0:
            raise NotCancellativeError(f"{A} is a zero divisor")
        n = self.level
        pn = rational(self.p) ** n
        X = A

        def v(x):
            return self._v(x)

        # pass 1: pull v11 and v22 below v12
        if v(X.a) > v(X.b):
            X = Mat2(X.a + X.b, X.b, X.c + X.d, X.d)  # col1 += col2
        if v(X.d) > v(X.b):
            X = Mat2(X.a, X.b, X.c + X.a, X.d + X.b)  # row2 += row1
        # pass 2: pull v21 below min(v11, v22)
        if v(X.c) > min(v(X.a), v(X.d)):
            if v(X.a) <= v(X.d):
                X = Mat2(X.a, X.b, X.c + X.a, X.d + X.b)  # row2 += row1
            else:
                X = Mat2(X.a + X.b, X.b, X.c + X.d, X.d)  # col1 += col2
        # pass 3: pull v11 and v22 below v21 + n
        if v(X.a) > v(X.c) + n:
            X = Mat2(X.a + pn * X.c, X.b + pn * X.d, X.c, X.d)  # row1 += pi^n row2
        if v(X.d) > v(X.c) + n:
            X = Mat2(X.a, X.b + pn * X.a, X.c, X.d + pn * X.c)  # col2 += pi^n col1
        # pass 4: pull v12 below min(v11, v22) + n
        if v(X.b) > min(v(X.a), v(X.d)) + n:
            if v(X.a) <= v(X.d):
                X = Mat2(X.a, X.b + pn * X.a, X.c, X.d + pn * X.c)  # col2 += pi^n col1
            else:
                X = Mat2(X.a + pn * X.c, X.b + pn * X.d, X.c, X.d)  # row1 += pi^n row2

        va, vb, vc, vd = self.corner_valuations(X)
        chain = vc <= min(va, vd) <= vb <= min(va, vd) + n <= vc + 2 * n
        if not chain:
            raise AssertionError(f"reduction failed to reach the valuation chain for {A}")
        return X


def _clear_denominators(V: Mat2):
    """Scale by the lcm of denominators (a unit of D for order elements)."""
    lcm = 1
    for x in V.entries():
        lcm = math.lcm(lcm, int(x.denominator))
    return V.scale(rational(lcm)), lcm


@lru_cache(maxsize=None)
def _enumerate_atoms_cached(p: int, n: int, bound: int):
    pr = rational(p)
    pn = pr**n
    units = lambda m: tuple(r for r in range(p**m) if r % p != 0)  # noqa: E731
    items = []

    if bound >= 1:
        for lam in range(p):
            items.append(
                (AtomClassTag("I-upper", (lam,)), Mat2(pr, lam * pn, _ZERO, _ONE))
            )
        for lam in range(p):
            items.append((AtomClassTag("I-lower", (lam,)), Mat2(_ONE, _ZERO, rational(lam), pr)))

    for m in range(1, n):
        for mp in range(1, n):
            if m + mp < n and m + mp <= bound:
                for eps in units(mp):
                    for delta in units(m):
                        items.append(
                            (
                                AtomClassTag("II-3", (m, mp, eps, delta)),
                                Mat2(rational(eps * p**m), pn, _ONE, rational(delta * p**mp)),
                            )
                        )
    if n <= bound:
        for m in range(1, n):
            for mp in range(1, n):
                if m + mp > n:
                    for eps in units(n - m):
                        for delta in units(n - mp):
                            items.append(
                                (
                                    AtomClassTag("II-4", (m, mp, eps, delta)),
                                    Mat2(
                                        rational(eps * p**m), pn, _ONE, rational(delta * p**mp)
                                    ),
                                )
                            )
        for m in range(1, n):
            for eps in units(n - m):
                items.append(
                    (AtomClassTag("II-5", (m, eps)), Mat2(rational(eps * p**m), pn, _ONE, _ZERO))
                )
        for mp in range(1, n):
            for delta in units(n - mp):
                items.append(
                    (
                        AtomClassTag("II-6", (mp, delta)),
                        Mat2(_ZERO, pn, _ONE, rational(delta * p**mp)),
                    )
                )
        items.append((AtomClassTag("II-7", ()), Mat2(_ZERO, pn, _ONE, _ZERO)))

    for k in range(0, bound - n + 1):
        for m in range(1, n):
            mp = n - m
            for eps in units(mp + k):
                for delta in units(m):
                    if k == 0 and (1 + eps * delta) % p == 0:
                        # eps^-1 + delta must stay a unit so that the second
                        # diagonal valuation is exactly mp
                        continue
                    d_entry = (rational(1, eps) + pr**k * delta) * pr**mp
                    items.append(
                        (
                            AtomClassTag("II-8", (m, mp, eps, delta, k)),
                            Mat2(eps * pr**m, pn, _ONE, d_entry),
                        )
                    )

    items.sort(key=lambda it: it[0].sort_key())
    return tuple(items)


@lru_cache(maxsize=None)
def _scan_atoms_cached(p: int, n: int, bound: int):
    """Precomputed divisor-scan records for the radical families II-3..II-8.

    Each record carries the adjugate and determinant of a denominator-free
    associate, so divisibility checks on integral matrices reduce to integer
    congruences modulo p^s (and p^(s+n) for the (1,2) entry).
    """
    if bound < 2:
        return ()
    dvr = DvrConfig(p)
    records = []
    for tag, V in _enumerate_atoms_cached(p, n, bound):
        if tag.class_id in ("I-upper", "I-lower"):
            continue
        Vint, lcm = _clear_denominators(V)
        det_int = int(Vint.det().numerator)
        assert int(Vint.det().denominator) == 1
        s = int(int_valuation(det_int, p))
        adj = Vint.adjugate()
        adj_int = tuple(int(x.numerator) for x in adj.entries())
        v11 = dvr.valuation(V.a)
        v22 = dvr.valuation(V.d)
        records.append((tag, V, v11, v22, s, adj_int, det_int, lcm))
    records.sort(key=lambda r: (r[4], r[0].sort_key()))
    return tuple(records)


class EichlerProvider:
    """Monoid-provider view of the cancellative elements of an Eichler order.

    All operations are pure; the instance only carries caches (canonical
    representatives, factorization suffixes), which makes repeated
    enumeration over the same order cheap.
    """

    def __init__(self, order: EichlerOrder):
        order.require_nonhereditary()
        self.order = order
        self._right_reps = {}
        self._left_reps = {}

    def one(self) -> Mat2:
        return Mat2.identity()

    def is_unit(self, x: Mat2) -> bool:
        return self.order.is_unit(x)

    def is_cancellative(self, x: Mat2) -> bool:
        return self.order.contains(x) and x.det() != 0

    def is_atom(self, x: Mat2) -> bool:
        return self.order.is_atom(x)

    def multiply(self, x: Mat2, y: Mat2) -> Mat2:
        return x * y

    def exact_left_divide(self, u: Mat2, a: Mat2):
        return self.order.exact_left_divide(u, a)

    def left_divisor_pairs(self, a: Mat2):
        return self.order.left_divisor_atoms(a)

    def canonical_right_associate(self, u: Mat2):
        got = self._right_reps.get(u)
        if got is None:
            got = self.order.canonical_right_associate(u)
            self._right_reps[u] = got
        return got

    def canonical_left_associate(self, u: Mat2):
        got = self._left_reps.get(u)
        if got is None:
            got = self.order.canonical_left_associate(u)
            self._left_reps[u] = got
        return got

    def central_normalize(self, a: Mat2):
        """(rep, s) with a = rep.scale(s); rep integral with p-coprime
        content, s a central unit scalar (None when a is already normal)."""
        p = self.order.p
        lcm = 1
        for x in a.entries():
            lcm = math.lcm(lcm, int(x.denominator))
        g = 0
        for x in a.entries():
            g = math.gcd(g, int(x.numerator) * (lcm // int(x.denominator)))
        if g:
            g //= p ** int(int_valuation(g, p))
        else:
            g = 1
        if lcm == g:
            return a, None
        u = rational(lcm, g)
        return a.scale(u), rational(g, lcm)

    def central_scale(self, x: Mat2, s) -> Mat2:
        return x.scale(s)

    def sort_key(self, x: Mat2):
        return x.key()


def common_right_multiples(order: EichlerOrder, U: Mat2, V: Mat2, count: int, rng):
    """Random nonzero elements of UR intersected with VR.

    Writing W = U*X, membership in VR says adj(V)*U*X = 0 modulo pi^s
    (pi^(s+n) in the (1,2) slot) with s = v(det V); the four congruences
    split into two 2-variable linear systems over Z/p^s, which are solved by
    exhaustive enumeration and then lifted with random multiples of p^s.
    """
    order.require_nonhereditary()
    p, n = order.p, order.level
    Uint, _ = _clear_denominators(U)
    Vint, _ = _clear_denominators(V)
    s = int(order.norm_valuation(V))
    ps = p**s
    P = Vint.adjugate() * Uint
    p11, p12, p21, p22 = (int(x.numerator) for x in P.entries())
    assert p12 % p**n == 0
    p12red = p12 // p**n

    sols_ac = [
        (xa, xc)
        for xa in range(ps)
        for xc in range(ps)
        if (p11 * xa + p12 * xc) % ps == 0 and (p21 * xa + p22 * xc) % ps == 0
    ]
    sols_bd = [
        (xb, xd)
        for xb in range(ps)
        for xd in range(ps)
        if (p11 * xb + p12red * xd) % ps == 0 and (p21 * p**n * xb + p22 * xd) % ps == 0
    ]
    out = []
    guard = 0
    while len(out) < count and guard < 100 * count:
        guard += 1
        xa, xc = sols_ac[rng.randrange(len(sols_ac))]
        xb, xd = sols_bd[rng.randrange(len(sols_bd))]
        lift = lambda t: t + ps * rng.randrange(-3, 4)  # noqa: E731
        X = Mat2.of(lift(xa), lift(xb) * p**n, lift(xc), lift(xd))
        if X.is_zero():
            continue
        W = Uint * X
        # exact two-sided verification of membership in UR and VR
        if order.exact_left_divide(Vint, W) is None:
            raise AssertionError("constructed multiple escaped VR")
        out.append(W)
    return out
