"""Seeded verification suite for the structural claims the library rests on.

Each check draws its instances from a deterministic RNG, so a fixed
configuration reproduces a byte-identical report.  The checks cross-validate
independent routes wherever one exists: the valuation-based atom test
against a divisor-search oracle, the predicted radical case table against
brute-force radicals, enumerated canonical atoms against pairwise
association tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import clifford
from .dvr import DvrConfig, rational
from .eichler import EichlerOrder, EichlerProvider, Mat2, common_right_multiples
from .factorize import (
    RigidFactorization,
    concat,
    enumerate_factorizations,
    length_profile,
    rigid_distance,
)

EICHLER_GRID = ((2, 2), (2, 3), (3, 2), (3, 3))


@dataclass
class VerifyConfig:
    seed: int = 1789
    sample_scale: float = 1.0
    max_count: int = 10**6
    emit_progress: bool = False

    def scaled(self, base: int) -> int:
        return max(1, int(round(base * self.sample_scale)))


@dataclass
class CheckResult:
    check_id: str
    claim: str
    instances: int
    passed: bool
    counterexample: object = None

    def to_obj(self):
        return {
            "id": self.check_id,
            "claim": self.claim,
            "instances": self.instances,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass
class _Context:
    config: VerifyConfig
    providers: dict = field(default_factory=dict)
    factorization_pools: dict = field(default_factory=dict)
    atom_pools: dict = field(default_factory=dict)

    def provider(self, p: int, n: int) -> EichlerProvider:
        key = (p, n)
        if key not in self.providers:
            self.providers[key] = EichlerProvider(EichlerOrder(DvrConfig(p), n))
        return self.providers[key]


# -- random generators -----------------------------------------------------


def _rand_scalar(rng, p, span, allow_fraction=False):
    num = rng.randint(-span, span)
    if allow_fraction and rng.random() < 0.15:
        den = rng.choice([2, 3, 5, 7])
        if den % p == 0:
            den += 2 if p != 2 else 1
        return rational(num, den)
    return rational(num)


def rand_member(rng, order: EichlerOrder, *, in_radical, min_nv, max_nv, fractions=False):
    """Seeded cancellative non-unit of the order with v(nr) in range."""
    p, n = order.p, order.level
    span = p**4
    while True:
        mul = rational(p) if in_radical else rational(1)
        A = Mat2(
            mul * _rand_scalar(rng, p, span, fractions),
            rational(p**n) * _rand_scalar(rng, p, span, fractions),
            _rand_scalar(rng, p, span, fractions),
            mul * _rand_scalar(rng, p, span, fractions),
        )
        if A.det() == 0 or not order.contains(A):
            continue
        nv = order.norm_valuation(A)
        if not in_radical and order.in_jacobson(A):
            continue
        if min_nv <= nv <= max_nv and not order.is_unit(A):
            return A


def rand_unit(rng, order: EichlerOrder) -> Mat2:
    """Seeded unit, via the lower/diagonal/upper decomposition."""
    p, n = order.p, order.level
    while True:
        e, h = rng.randint(-p**2, p**2), rng.randint(-p**2, p**2)
        if e % p and h % p:
            break
    x, y = rng.randint(-p**2, p**2), rng.randint(-p**2, p**2)
    return Mat2.of(1, 0, x, 1) * Mat2.of(e, 0, 0, h) * Mat2.of(1, y * p**n, 0, 1)


# -- individual checks -------------------------------------------------------


def check_min_delta_witness(ctx: _Context) -> CheckResult:
    failures = []
    count = 0
    for p, n in EICHLER_GRID:
        prov = ctx.provider(p, n)
        A = Mat2.of(p, p**n, p, p**2 + p**n)
        prof = length_profile(prov, A, ctx.config.max_count)
        count += 1
        ctx.factorization_pools.setdefault((p, n), []).append(
            (A, enumerate_factorizations(prov, A, ctx.config.max_count))
        )
        if prof.lengths != (2, 3):
            failures.append({"p": p, "n": n, "lengths": list(prof.lengths)})
    return CheckResult(
        "min-delta-witness",
        "the matrix [[pi, pi^n],[pi, pi^2+pi^n]] has length set exactly {2, 3}",
        count,
        not failures,
        failures or None,
    )


def check_unique_off_radical(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 2)
    per_grid = ctx.config.scaled(50)
    failures = []
    count = 0
    for p, n in EICHLER_GRID:
        prov = ctx.provider(p, n)
        order = prov.order
        for _ in range(per_grid):
            A = rand_member(rng, order, in_radical=False, min_nv=1, max_nv=4, fractions=True)
            facts = enumerate_factorizations(prov, A, ctx.config.max_count)
            count += 1
            ctx.factorization_pools.setdefault((p, n), []).append((A, facts))
            nv = int(order.norm_valuation(A))
            lengths = sorted({z.length for z in facts})
            if len(facts) != 1 or lengths != [nv]:
                failures.append(
                    {"p": p, "n": n, "matrix": A.to_strings(), "count": len(facts)}
                )
    return CheckResult(
        "unique-factorization-off-radical",
        "outside the radical there is exactly one rigid factorization, of length v(nr)",
        count,
        not failures,
        failures[:3] or None,
    )


def _oracle_is_atom(order: EichlerOrder, A: Mat2) -> bool:
    """Divisor-search oracle: every canonical atom dividing A leaves a unit."""
    nv = int(order.norm_valuation(A))
    divisors = []
    for _tag, V in order.enumerate_atoms(nv):
        C = order.exact_left_divide(V, A)
        if C is not None:
            divisors.append(C)
    if not divisors:
        raise AssertionError(f"{A} has no atom divisor; the monoid must be atomic")
    return all(order.is_unit(C) for C in divisors)


def check_atom_classification(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 3)
    per_grid = ctx.config.scaled(200)
    failures = []
    count = 0
    for p, n in EICHLER_GRID:
        order = ctx.provider(p, n).order
        pool = ctx.atom_pools.setdefault((p, n), [])
        for _ in range(per_grid):
            A = rand_member(
                rng,
                order,
                in_radical=rng.random() < 0.5,
                min_nv=1,
                max_nv=5,
                fractions=True,
            )
            fast = order.is_atom(A)
            slow = _oracle_is_atom(order, A)
            count += 1
            if fast:
                pool.append(A)
            if fast != slow:
                failures.append({"p": p, "n": n, "matrix": A.to_strings(), "fast": fast})
    return CheckResult(
        "atom-classification",
        "the valuation-based atom test agrees with the divisor-search oracle",
        count,
        not failures,
        failures[:3] or None,
    )


def pairwise_non_right_associated(order: EichlerOrder, atoms) -> list:
    """Offending pairs among the given canonical atoms (empty = all good)."""
    bad = []
    for (t1, v1), (t2, v2) in itertools.combinations(atoms, 2):
        if order.right_associated(v1, v2):
            bad.append((str(t1), str(t2)))
    return bad


def check_canonical_completeness(ctx: _Context) -> CheckResult:
    failures = []
    count = 0
    for p, n in EICHLER_GRID:
        order = ctx.provider(p, n).order
        for A in ctx.atom_pools.get((p, n), []):
            tag, V, E = order.canonical_right_associate(A)
            count += 1
            table = order.enumerate_atoms(int(order.norm_valuation(A)))
            hits = [t for t, W in table if W == V]
            if len(hits) != 1 or hits[0] != tag or V * E != A:
                failures.append({"p": p, "n": n, "matrix": A.to_strings(), "hits": len(hits)})
        bad = pairwise_non_right_associated(order, order.enumerate_atoms(3))
        count += 1
        if bad:
            failures.append({"p": p, "n": n, "associated_pairs": bad[:3]})
    return CheckResult(
        "canonical-associate-completeness",
        "atoms map onto exactly one enumerated representative; representatives are"
        " pairwise non-right-associated",
        count,
        not failures,
        failures[:3] or None,
    )


def check_radical_min_length(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 5)
    per_grid = ctx.config.scaled(50)
    failures = []
    count = 0
    for p, n in EICHLER_GRID:
        prov = ctx.provider(p, n)
        for _ in range(per_grid):
            A = rand_member(rng, prov.order, in_radical=True, min_nv=2, max_nv=6)
            facts = enumerate_factorizations(prov, A, ctx.config.max_count)
            count += 1
            ctx.factorization_pools.setdefault((p, n), []).append((A, facts))
            if min(z.length for z in facts) > n + 5:
                failures.append({"p": p, "n": n, "matrix": A.to_strings()})
    return CheckResult(
        "radical-min-length",
        "every sampled radical element has a factorization of length at most n + 5",
        count,
        not failures,
        failures[:3] or None,
    )


def check_catenary_delta_bounds(ctx: _Context) -> CheckResult:
    from .factorize import catenary_degree

    failures = []
    count = 0
    for (p, n), pool in sorted(ctx.factorization_pools.items()):
        prov = ctx.provider(p, n)
        for A, facts in pool:
            lengths = sorted({z.length for z in facts})
            gaps = [b - a for a, b in zip(lengths, lengths[1:])]
            cat = catenary_degree(prov, facts)
            count += 1
            if cat > n + 6 or (gaps and max(gaps) > n + 4):
                failures.append(
                    {"p": p, "n": n, "matrix": A.to_strings(), "catenary": cat, "gaps": gaps}
                )
    return CheckResult(
        "catenary-delta-bounds",
        "catenary degree at most n + 6 and distance gaps at most n + 4 on all pools",
        count,
        not failures,
        failures[:3] or None,
    )


def check_elasticity_witnesses(ctx: _Context) -> CheckResult:
    failures = []
    count = 0
    for p, n in EICHLER_GRID:
        order = ctx.provider(p, n).order
        up, down = Mat2.of(p, 0, 0, 1), Mat2.of(1, 0, 0, p)
        for m in (1, 2, 3):
            count += 1
            target = Mat2.scalar(p**m)
            U = order.long_atom(p**m)
            W = U.adjugate()
            short_ok = U * W == target and order.is_atom(U) and order.is_atom(W)
            prod = Mat2.identity()
            for _ in range(m):
                prod = prod * up * down
            long_ok = (
                prod == target and order.is_atom(up) and order.is_atom(down)
            )
            if not (short_ok and long_ok):
                failures.append({"p": p, "n": n, "m": m})
    return CheckResult(
        "elasticity-witnesses",
        "pi^m factors into 2 and into 2m atoms, certifying elasticity at least m"
        " for m = 1, 2, 3",
        count,
        not failures,
        failures or None,
    )


def check_distance_axioms(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 8)
    target = ctx.config.scaled(500)
    failures = []
    pools = []
    for (p, n), pool in sorted(ctx.factorization_pools.items()):
        for A, facts in pool:
            if len(facts) >= 2:
                pools.append(((p, n), facts))
    count = 0
    while count < target and pools:
        (p, n), facts = pools[rng.randrange(len(pools))]
        prov = ctx.provider(p, n)
        z, zp = rng.sample(list(facts), 2)
        d = rigid_distance(prov, z, zp)
        ok = rigid_distance(prov, z, z) == 0
        ok = ok and rigid_distance(prov, zp, z) == d
        ok = ok and abs(z.length - zp.length) <= d <= max(z.length, zp.length, 1)
        zpp = rng.choice(list(facts))
        ok = ok and d <= rigid_distance(prov, z, zpp) + rigid_distance(prov, zpp, zp)
        x = RigidFactorization(
            Mat2.identity(), (prov.order.long_atom(p ** rng.randint(1, 2)),)
        )
        ok = ok and rigid_distance(prov, concat(prov, x, z), concat(prov, x, zp)) == d
        ok = ok and rigid_distance(prov, concat(prov, z, x), concat(prov, zp, x)) == d
        count += 1
        if not ok:
            failures.append({"p": p, "n": n, "z": str(z), "zp": str(zp)})
    return CheckResult(
        "distance-axioms",
        "the rigid distance is reflexive, symmetric, triangular, translation"
        " invariant, and length-sandwiched",
        count,
        not failures,
        failures[:3] or None,
    )


def _rand_form(rng, dvr: DvrConfig) -> clifford.TernaryForm:
    span = dvr.p**2 + 5
    while True:
        coeffs = [rng.randint(-span, span) for _ in range(6)]
        form = clifford.TernaryForm.of(dvr, *coeffs)
        if not form.is_degenerate():
            return form


def check_clifford_identities(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 9)
    forms = ctx.config.scaled(10)
    triples = ctx.config.scaled(1000)
    failures = []
    count = 0

    for idx in range(forms):
        dvr = DvrConfig((2, 3, 5)[idx % 3])
        form = _rand_form(rng, dvr)
        one = form.one()
        for _ in range(triples):
            xs = [
                form.element(*(rng.randint(-9, 9) for _ in range(4))) for _ in range(3)
            ]
            x, y, z = xs
            count += 1
            ok = ((x * y) * z) == (x * (y * z))
            ok = ok and (x * y).conj() == y.conj() * x.conj() and x.conj().conj() == x
            ok = ok and (x * y).norm() == x.norm() * y.norm()
            ok = ok and (x * x - x.scale(x.trace()) + one.scale(x.norm())).is_zero()
            bl = (x + y).norm() - x.norm() - y.norm()
            ok = ok and bl == (x * y.conj()).trace()
            if not ok:
                failures.append({"form": str(form), "x": str(x), "y": str(y)})
                break
        # residue-field side
        alg = clifford.residue_algebra(form.residue_form())
        p = alg.p
        for _ in range(triples):
            xs = [tuple(rng.randrange(p) for _ in range(4)) for _ in range(3)]
            x, y, z = xs
            count += 1
            ok = alg.mul(alg.mul(x, y), z) == alg.mul(x, alg.mul(y, z))
            ok = ok and alg.conj(alg.mul(x, y)) == alg.mul(alg.conj(y), alg.conj(x))
            ok = ok and alg.norm(alg.mul(x, y)) == (alg.norm(x) * alg.norm(y)) % p
            sq = alg.mul(x, x)
            tr, nr = alg.trace(x), alg.norm(x)
            char = tuple(
                (sq[s] - tr * x[s] + (nr if s == 0 else 0)) % p for s in range(4)
            )
            ok = ok and char == (0, 0, 0, 0)
            if not ok:
                failures.append({"form": str(form), "p": p, "x": x})
                break
    return CheckResult(
        "clifford-identities",
        "associativity, conjugation anti-automorphism, norm multiplicativity, and"
        " the characteristic identity hold over Q and over F_p",
        count,
        not failures,
        failures[:3] or None,
    )


def _case_shape_seeds(p: int):
    """Representative residue shapes per reachable case of the table."""
    if p == 2:
        return {
            "1b-i": (1, 1, 1, 0, 0, 0),
            "2b-i": (1, 1, 0, 0, 0, 0),
            "3": (1, 0, 0, 0, 0, 0),
            "3-degenerate": (0, 0, 0, 0, 0, 0),
            "4": (1, 1, 1, 1, 0, 0),
            "5-split": (0, 0, 0, 1, 0, 0),
            "5-field": (0, 1, 1, 1, 0, 0),
        }
    shapes = {
        "1a": (1, 1, 1, 0, 0, 0),
        "3": (1, 0, 0, 0, 0, 0),
        "3-degenerate": (0, 0, 0, 0, 0, 0),
    }
    # split vs field quotient in the rank-2 diagonal case
    for b in range(1, p):
        label = "2a-split" if any((y * y + b) % p == 0 for y in range(p)) else "2a-field"
        shapes.setdefault(label, (1, b, 0, 0, 0, 0))
    return shapes


def check_radical_case_table(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 10)
    per_shape = ctx.config.scaled(5)
    failures = []
    count = 0
    for p in (2, 3, 5):
        dvr = DvrConfig(p)
        for label, base in _case_shape_seeds(p).items():
            for _ in range(per_shape):
                coeffs = [x + p * rng.randint(-p, p) for x in base]
                form = clifford.TernaryForm.of(dvr, *coeffs)
                report = clifford.radical_report(form)
                count += 1
                dim = report["brute_force"]["quotient"][0]
                if not report["agrees"] or dim not in (1, 2, 4):
                    failures.append({"p": p, "shape": label, "form": str(form)})
    return CheckResult(
        "radical-case-table",
        "brute-force radical chains match the predicted case table, with quotient"
        " dimension in {1, 2, 4}",
        count,
        not failures,
        failures[:3] or None,
    )


def _seeded_local_isotropic_forms(rng, p: int, how_many: int):
    """Nondegenerate forms giving local orders, with a planted trace-zero
    isotropic vector (0, 1, t)."""
    dvr = DvrConfig(p)
    forms = []
    guard = 0
    while len(forms) < how_many and guard < 200 * how_many:
        guard += 1
        t = p * rng.randint(1, p * p)
        if rng.random() < 0.5:
            b = rational(1 + p * rng.randint(0, p))  # unit: rank-2 reduction
        else:
            b = rational(p * rng.randint(1, p))  # divisible: rank-1 reduction
        form = clifford.TernaryForm(dvr, rational(1), b, -b * t * t, rational(0), rational(0), rational(0))
        if form.is_degenerate():
            continue
        preds = clifford.order_predicates(form)
        if not preds["is_local"]:
            continue
        z = clifford.find_nilpotent_in_radical(form)
        if z.trace() != 0:
            continue
        forms.append((form, z))
    if len(forms) < how_many:
        raise AssertionError(f"could not seed {how_many} local isotropic forms for p={p}")
    return forms


def check_noneichler_atoms(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 11)
    per_prime = ctx.config.scaled(10)
    failures = []
    count = 0
    for p in (2, 3):
        for form, z in _seeded_local_isotropic_forms(rng, p, per_prime):
            dvr = form.dvr
            ok = z.norm() == 0 and z.trace() == 0
            pctx = clifford.pi2_context(form)
            ok = ok and pctx.in_radical(z) and not pctx.in_radical_squared(z)
            for k in range(2, 6):
                x = clifford.long_atom_family(form, z, k)
                ok = ok and clifford.is_atom_local(form, x) is True
                ok = ok and dvr.valuation(x.norm()) == 2 * k
            count += 1
            if not ok:
                failures.append({"p": p, "form": str(form), "z": str(z)})
    return CheckResult(
        "noneichler-nilpotent-atoms",
        "local orders from isotropic forms contain z in J \\ J^2 with nr(z) = 0,"
        " and pi^k + z is an atom of norm valuation 2k for k in [2, 5]",
        count,
        not failures,
        failures[:3] or None,
    )


def check_intersection_property(ctx: _Context) -> CheckResult:
    rng = random.Random(ctx.config.seed + 12)
    per_grid = ctx.config.scaled(50)
    multiples_each = ctx.config.scaled(20)
    failures = []
    count = 0
    for p, n in EICHLER_GRID:
        order = ctx.provider(p, n).order
        atoms = [V for _tag, V in order.enumerate_atoms(3)]
        for _ in range(per_grid):
            U, V = rng.sample(atoms, 2)
            if order.right_associated(U, V):
                failures.append({"p": p, "n": n, "pair": "unexpectedly associated"})
                continue
            for W in common_right_multiples(order, U, V, multiples_each, rng):
                count += 1
                if not order.in_jacobson(W):
                    failures.append(
                        {"p": p, "n": n, "U": U.to_strings(), "V": V.to_strings(),
                         "W": W.to_strings()}
                    )
    return CheckResult(
        "intersection-in-radical",
        "common right multiples of non-right-associated atoms lie in the radical",
        count,
        not failures,
        failures[:3] or None,
    )


CHECKS = (
    check_min_delta_witness,
    check_unique_off_radical,
    check_atom_classification,
    check_canonical_completeness,
    check_radical_min_length,
    check_catenary_delta_bounds,
    check_elasticity_witnesses,
    check_distance_axioms,
    check_clifford_identities,
    check_radical_case_table,
    check_noneichler_atoms,
    check_intersection_property,
)


def run_verification(config: VerifyConfig | None = None) -> dict:
    """Run all checks; the report is fully determined by the config."""
    config = config or VerifyConfig()
    ctx = _Context(config)
    results = []
    for fn in CHECKS:
        result = fn(ctx)
        results.append(result)
        if config.emit_progress:
            import sys

            status = "ok" if result.passed else "FAIL"
            print(f"{result.check_id}: {status} ({result.instances} instances)", file=sys.stderr)
    return {
        "config": {
            "seed": config.seed,
            "sample_scale": config.sample_scale,
            "max_count": config.max_count,
        },
        "checks": [r.to_obj() for r in results],
        "all_passed": all(r.passed for r in results),
    }
