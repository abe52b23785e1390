import itertools
import random

from quatfact.zmod import FpSpan, ZModModule, fp_kernel, fp_rref


def _brute_span(generators, q, dim):
    """All Z/q-linear combinations, by exhaustive coefficient enumeration."""
    members = {tuple([0] * dim)}
    for coeffs in itertools.product(range(q), repeat=len(generators)):
        vec = [0] * dim
        for cf, g in zip(coeffs, generators):
            for s in range(dim):
                vec[s] = (vec[s] + cf * g[s]) % q
        members.add(tuple(vec))
    return members


def test_howell_membership_matches_brute_force():
    rng = random.Random(5)
    for p, m, dim in ((2, 2, 3), (3, 2, 3), (2, 3, 3), (3, 2, 4)):
        q = p**m
        for _ in range(20):
            gens = [tuple(rng.randrange(q) for _ in range(dim)) for _ in range(rng.randint(1, 3))]
            module = ZModModule(p, m, dim, gens)
            brute = _brute_span(gens, q, dim)
            for _ in range(60):
                vec = tuple(rng.randrange(q) for _ in range(dim))
                assert module.contains(vec) == (vec in brute), (gens, vec)
            for member in list(brute)[:20]:
                assert module.contains(member)


def test_module_equality_and_zero():
    m1 = ZModModule(3, 2, 3, [(3, 0, 0), (0, 1, 0)])
    m2 = ZModModule(3, 2, 3, [(0, 1, 0), (6, 0, 0), (3, 1, 0)])
    assert m1.equals(m2)
    assert not m1.equals(ZModModule(3, 2, 3, [(1, 0, 0)]))
    assert ZModModule(3, 2, 3, []).is_zero()
    assert ZModModule(3, 2, 3, [(9, 0, 0)]).is_zero()  # 9 = 0 mod 9


def test_fp_span_dimension():
    span = FpSpan(3, 4, [(1, 2, 0, 0), (2, 4, 0, 0), (0, 0, 1, 1)])
    assert span.fp_dimension == 2
    assert span.contains((0, 0, 2, 2))
    assert not span.contains((0, 0, 1, 2))


def test_fp_kernel_annihilates():
    rng = random.Random(6)
    for p in (2, 3, 5):
        for _ in range(30):
            rows = [
                [rng.randrange(p) for _ in range(4)] for _ in range(rng.randint(1, 4))
            ]
            kernel = fp_kernel(rows, p)
            for vec in kernel:
                for row in rows:
                    assert sum(r * v for r, v in zip(row, vec)) % p == 0
            # rank-nullity
            rank = len(fp_rref(rows, p))
            assert rank + len(kernel) == 4
