"""Rigid factorizations over an atomic monoid provider.

A rigid factorization is a leading unit followed by an ordered list of
atoms, taken up to the congruence that slides units across neighbouring
factors.  Each congruence class has a unique canonical form: atoms in all
positions but the last are canonical right-associate representatives, the
final atom absorbs every residual unit, and the leading unit is trivial
whenever at least one atom is present.  Enumeration therefore recurses on
canonical left-divisor atoms and produces every class exactly once, with no
quotienting pass.

The distance between two factorizations of the same element is the standard
rigid one: strip the longest matching prefix and suffix (prefix matching
compares canonical right representatives, suffix matching canonical left
representatives, which is exactly unit-propagation across the junctions) and
charge the longer leftover middle, with a floor of 1 when the middles
differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol

from .dvr import INFINITY
from .errors import EnumerationOverflowError, NotCancellativeError


class MonoidProvider(Protocol):
    """Operations `factorize` needs from a concrete monoid."""

    def one(self): ...

    def is_unit(self, x) -> bool: ...

    def is_cancellative(self, x) -> bool: ...

    def is_atom(self, x) -> bool: ...

    def multiply(self, x, y): ...

    def exact_left_divide(self, u, a): ...

    def left_divisor_pairs(self, a): ...

    def canonical_right_associate(self, u): ...

    def canonical_left_associate(self, u): ...

    def central_normalize(self, a): ...

    def central_scale(self, a, s): ...

    def sort_key(self, x): ...


@dataclass(frozen=True)
class RigidFactorization:
    """Canonical form of a rigid factorization: unit * atoms[0] * ... ."""

    leading_unit: object
    atoms: tuple

    @property
    def length(self) -> int:
        return len(self.atoms)

    def product(self, provider):
        acc = self.leading_unit
        for u in self.atoms:
            acc = provider.multiply(acc, u)
        return acc

    def __str__(self):
        if not self.atoms:
            return f"[{self.leading_unit}]"
        return " * ".join(str(u) for u in self.atoms)


def canonical_factorization(provider, leading_unit, atoms) -> RigidFactorization:
    """Refold an arbitrary representative into canonical form.

    The leading unit is pushed into the first atom; then every position but
    the last is replaced by its canonical right representative, the unit
    remainder rippling rightward into the next atom.
    """
    atoms = list(atoms)
    if not atoms:
        return RigidFactorization(leading_unit, ())
    cur = provider.multiply(leading_unit, atoms[0])
    out = []
    for nxt in atoms[1:]:
        _tag, V, E = provider.canonical_right_associate(cur)
        out.append(V)
        cur = provider.multiply(E, nxt)
    out.append(cur)
    return RigidFactorization(provider.one(), tuple(out))


def concat(provider, z: RigidFactorization, w: RigidFactorization) -> RigidFactorization:
    """Product z * w in the factorization monoid, in canonical form.

    The leading unit of w attaches to the final atom of z (or joins the
    leading unit when z has no atoms), exactly as in the monoid operation on
    factorizations.
    """
    if not w.atoms:
        if not z.atoms:
            return RigidFactorization(
                provider.multiply(z.leading_unit, w.leading_unit), ()
            )
        last = provider.multiply(z.atoms[-1], w.leading_unit)
        return canonical_factorization(provider, z.leading_unit, z.atoms[:-1] + (last,))
    if not z.atoms:
        unit = provider.multiply(z.leading_unit, w.leading_unit)
        first = provider.multiply(unit, w.atoms[0])
        return canonical_factorization(provider, provider.one(), (first,) + w.atoms[1:])
    junction = provider.multiply(z.atoms[-1], w.leading_unit)
    atoms = z.atoms[:-1] + (junction,) + w.atoms
    return canonical_factorization(provider, z.leading_unit, atoms)


def _divisor_pairs(provider, key):
    cache = _provider_cache(provider)["divisors"]
    pairs = cache.get(key)
    if pairs is None:
        pairs = tuple(provider.left_divisor_pairs(key))
        cache[key] = pairs
    return pairs


def count_factorizations(provider, a, max_count: int = 10**6) -> int:
    """Number of rigid factorizations of a, without materializing them."""
    if provider.is_unit(a):
        return 1
    _require_cancellative(provider, a)
    cache = _provider_cache(provider)["counts"]

    def rec(x) -> int:
        if provider.is_unit(x) or provider.is_atom(x):
            return 1
        key, _ = provider.central_normalize(x)
        got = cache.get(key)
        if got is not None:
            return got
        total = 0
        for _v, cof in _divisor_pairs(provider, key):
            total += rec(cof)
            if total > max_count:
                raise EnumerationOverflowError(max_count)
        cache[key] = total
        return total

    return rec(a)


def enumerate_factorizations(provider, a, max_count: int = 10**6):
    """The complete set of canonical rigid factorizations of a, sorted.

    Aborts with `EnumerationOverflowError` when the count exceeds
    max_count.  Cofactors are memoized per provider up to central unit
    scaling; a suffix computed for a scaled representative transfers to the
    actual cofactor by rescaling its final atom.
    """
    if provider.is_unit(a):
        return (RigidFactorization(a, ()),)
    _require_cancellative(provider, a)
    count_factorizations(provider, a, max_count)  # early abort on blowup
    cache = _provider_cache(provider)["suffixes"]

    def rec(x):
        """Atom tuples for all canonical factorizations of x (non-unit)."""
        if provider.is_atom(x):
            return ((x,),)
        key, scale = provider.central_normalize(x)
        suffixes = cache.get(key)
        if suffixes is None:
            acc = []
            for V, cof in _divisor_pairs(provider, key):
                for tail in rec(cof):
                    acc.append((V,) + tail)
            suffixes = tuple(acc)
            cache[key] = suffixes
        if scale is None:
            return suffixes
        return tuple(t[:-1] + (provider.central_scale(t[-1], scale),) for t in suffixes)

    one = provider.one()
    facts = [RigidFactorization(one, t) for t in rec(a)]
    facts.sort(key=lambda z: (z.length, tuple(provider.sort_key(u) for u in z.atoms)))
    return tuple(facts)


def _require_cancellative(provider, a):
    if not provider.is_cancellative(a):
        raise NotCancellativeError("factorization requires a cancellative element")


def _provider_cache(provider):
    cache = getattr(provider, "_factorize_cache", None)
    if cache is None:
        cache = {"counts": {}, "suffixes": {}, "divisors": {}, "rw": {}, "lw": {}, "prod": {}}
        provider._factorize_cache = cache
    return cache


def _product(provider, z: RigidFactorization):
    cache = _provider_cache(provider)["prod"]
    val = cache.get(z)
    if val is None:
        val = z.product(provider)
        cache[z] = val
    return val


# -- distances ---------------------------------------------------------


def _right_rep_array(provider, z: RigidFactorization):
    """Per-position canonical right representatives (positions before the
    last are already canonical; the last is replaced by its representative)."""
    cache = _provider_cache(provider)["rw"]
    arr = cache.get(z)
    if arr is None:
        atoms = z.atoms
        arr = atoms[:-1] + (provider.canonical_right_associate(atoms[-1])[1],)
        cache[z] = arr
    return arr


def _left_rep_array(provider, z: RigidFactorization):
    """Left-canonical representatives, folding the unit remainders leftward;
    position t records the left class of atom t after absorbing everything
    that rippled in from the right."""
    cache = _provider_cache(provider)["lw"]
    arr = cache.get(z)
    if arr is None:
        out = []
        carry = None
        for u in reversed(z.atoms):
            if carry is not None:
                u = provider.multiply(u, carry)
            V, E = provider.canonical_left_associate(u)
            out.append(V)
            carry = E
        arr = tuple(reversed(out))
        cache[z] = arr
    return arr


def rigid_distance(provider, z: RigidFactorization, zp: RigidFactorization) -> int:
    """Distance between two factorizations of the same element.

    Equals max(|z|, |z'|, 1) minus the longest combined matching prefix and
    suffix (0 when the factorizations coincide).  Satisfies the distance
    axioms: reflexivity, symmetry, triangle inequality, two-sided
    translation invariance, and the length sandwich
    | |z| - |z'| | <= d <= max(|z|, |z'|, 1).
    """
    if _product(provider, z) != _product(provider, zp):
        raise ValueError("rigid distance needs factorizations of the same element")
    if z == zp:
        return 0
    k, l = z.length, zp.length
    rw_z, rw_zp = _right_rep_array(provider, z), _right_rep_array(provider, zp)
    lw_z, lw_zp = _left_rep_array(provider, z), _left_rep_array(provider, zp)
    prefix = 0
    while prefix < min(k, l) and rw_z[prefix] == rw_zp[prefix]:
        prefix += 1
    suffix = 0
    while suffix < min(k, l) and lw_z[k - 1 - suffix] == lw_zp[l - 1 - suffix]:
        suffix += 1
    matched = min(prefix + suffix, k, l)
    return max(max(k, l) - matched, 1)


def catenary_degree(provider, factorizations) -> int:
    """Minimal N such that the graph on Z*(a) with edges d <= N is connected.

    Kruskal-style sweep: sort all pairwise distances and union components in
    ascending order; the answer is the largest edge used (0 when there are
    at most one factorization).
    """
    facts = list(factorizations)
    m = len(facts)
    if m <= 1:
        return 0
    edges = []
    for i in range(m):
        for j in range(i + 1, m):
            edges.append((rigid_distance(provider, facts[i], facts[j]), i, j))
    edges.sort(key=lambda e: e[0])
    parent = list(range(m))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    components = m
    threshold = 0
    for d, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
            components -= 1
            threshold = d
            if components == 1:
                break
    return threshold


# -- length profiles ----------------------------------------------------


@dataclass(frozen=True)
class LengthProfile:
    """Per-element bundle: lengths, distance set, elasticity, catenary."""

    lengths: tuple
    delta: tuple
    elasticity: object  # Fraction, or 1 for units
    catenary: int
    factorization_count: int

    def to_obj(self):
        rho = self.elasticity
        return {
            "lengths": list(self.lengths),
            "delta": list(self.delta),
            "elasticity": "inf" if rho == INFINITY else str(Fraction(rho)),
            "catenary": self.catenary,
            "count": self.factorization_count,
        }


def length_profile(provider, a, max_count: int = 10**6) -> LengthProfile:
    facts = enumerate_factorizations(provider, a, max_count)
    lengths = tuple(sorted({z.length for z in facts}))
    delta = tuple(b - x for x, b in zip(lengths, lengths[1:]))
    if provider.is_unit(a):
        rho = Fraction(1)
    else:
        rho = Fraction(max(lengths), min(lengths))
    cat = catenary_degree(provider, facts)
    return LengthProfile(lengths, delta, rho, cat, len(facts))


# -- elasticity formulas -------------------------------------------------


def elasticity_formulas(m: int, max_norm_val, k: int):
    """Closed-form even elasticities and bounds from the extremal atom norm
    valuations: with D = 2M/m, the 2k-th elasticity is k*D, the (2k+1)-st
    lies in [1 + k*D, k*D + floor(D/2)], and the elasticity is D/2.
    Propagates M = INFINITY.
    """
    if m not in (1, 2):
        raise ValueError("minimal atom norm valuation must be 1 or 2")
    if k < 1:
        raise ValueError("k must be positive")
    if max_norm_val == INFINITY or max_norm_val is None:
        return {
            "rho_even": INFINITY,
            "rho_odd_bounds": (INFINITY, INFINITY),
            "rho": INFINITY,
        }
    M = int(max_norm_val)
    if M < m:
        raise ValueError("maximal norm valuation cannot be below the minimal one")
    D = Fraction(2 * M, m)
    assert D.denominator == 1
    rho_even = k * D
    return {
        "rho_even": rho_even,
        "rho_odd_bounds": (1 + rho_even, rho_even + D // 2),
        "rho": D / 2,
    }


def scan_atom_norm_valuations(order, max_norm_val: int):
    """(m, M_observed): the minimum and the largest observed norm valuation
    among canonical atoms up to the bound.  M_observed is a certified lower
    bound for the supremum, which may be infinite."""
    atoms = order.enumerate_atoms(max_norm_val)
    vals = [int(order.norm_valuation(V)) for _tag, V in atoms]
    return min(vals), max(vals)
