import random

import pytest

from quatfact.clifford import (
    Pi2Context,
    ResidueForm,
    TernaryForm,
    classify_residue,
    find_isotropic,
    find_nilpotent_in_radical,
    is_atom_local,
    long_atom_family,
    nilpotency_index,
    order_predicates,
    pi2_context,
    radical_report,
    residue_algebra,
)
from quatfact.dvr import DvrConfig, rational
from quatfact.errors import (
    DegenerateFormError,
    IsotropyNotFoundError,
    NonLocalOrderError,
    NormalizationRequiredError,
    NotCancellativeError,
    UnitInputError,
)
from quatfact.zmod import FpSpan

D2, D3, D5 = DvrConfig(2), DvrConfig(3), DvrConfig(5)
Q111 = TernaryForm.of(D3, 1, 1, 1)
Q119 = TernaryForm.of(D3, 1, 1, -9)


def test_half_discriminant_examples():
    assert Q111.half_discriminant() == 4
    assert Q119.half_discriminant() == -36
    assert TernaryForm.of(D3, 0, 1, 1, 1).half_discriminant() == 0
    # diagonal forms: half-discriminant is 4abc
    assert TernaryForm.of(D5, 2, 3, 7).half_discriminant() == 4 * 2 * 3 * 7


def test_basis_product_examples():
    i, j, k = Q111.gen_i(), Q111.gen_j(), Q111.gen_k()
    assert i * i == Q111.element(-1)
    assert i * j == -k
    assert j * i == k
    # the remaining products for a generic form, straight from the relations
    form = TernaryForm.of(D3, 2, 3, 5, 7, 11, 13)
    a, b, c, u, v, w = form.coefficients()
    i, j, k = form.gen_i(), form.gen_j(), form.gen_k()
    assert i * i == form.element(-b * c, u, 0, 0)
    assert j * j == form.element(-a * c, 0, v, 0)
    assert k * k == form.element(-a * b, 0, 0, w)
    assert j * k == form.element(a * u, -a, 0, 0)
    assert k * i == form.element(b * v, 0, -b, 0)
    assert i * j == form.element(c * w, 0, 0, -c)
    assert k * j == form.element(-v * w, a, w, v)
    assert i * k == form.element(-u * w, w, b, u)
    assert j * i == form.element(-u * v, v, u, c)


def test_norm_trace_conj_examples():
    x = Q111.element(3, 4, 0, 0)
    assert x.norm() == 9 + 16 and x.trace() == 6
    i = Q111.gen_i()
    assert (i * i - i.scale(i.trace()) + Q111.one().scale(i.norm())).is_zero()
    one = Q111.one()
    assert one.norm() == 1 and one.trace() == 2 and one.conj() == one
    y = Q111.element(1, 2, 3, 4)
    assert y * y.conj() == Q111.one().scale(y.norm())
    assert y.conj() * y == Q111.one().scale(y.norm())


def test_algebra_identities_random():
    rng = random.Random(91)
    for p in (2, 3, 5):
        dvr = DvrConfig(p)
        form = TernaryForm.of(
            dvr, *(rng.randint(-6, 6) for _ in range(6))
        )
        one = form.one()
        for _ in range(150):
            x, y, z = (
                form.element(*(rational(rng.randint(-9, 9), rng.choice([1, 1, 2 if p != 2 else 1])) for _ in range(4)))
                for _ in range(3)
            )
            assert (x * y) * z == x * (y * z)
            assert (x * y).conj() == y.conj() * x.conj()
            assert x.conj().conj() == x
            assert (x * y).norm() == x.norm() * y.norm()
            assert (x * x - x.scale(x.trace()) + one.scale(x.norm())).is_zero()
            assert (x + y).norm() - x.norm() - y.norm() == (x * y.conj()).trace()


def test_is_nilpotent_examples():
    assert Q119.element(0).is_nilpotent()
    z = Q119.element(0, 0, 1, -3)  # j - 3k: nr = ac + 9ab = 0
    assert z.norm() == 0 and z.trace() == 0
    assert z.is_nilpotent()
    assert not Q111.one().is_nilpotent()


def test_residue_radical_examples():
    alg = residue_algebra(ResidueForm(3, 1, 1, 0, 0, 0, 0))
    assert alg.radical().equals(FpSpan(3, 4, [(0, 1, 0, 0), (0, 0, 1, 0)]))
    assert len(alg.radical_chain()) == 1  # J^2 = 0

    alg2 = residue_algebra(ResidueForm(2, 1, 1, 1, 0, 0, 0))
    want_j = FpSpan(2, 4, [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)])
    assert alg2.radical().equals(want_j)
    chain = alg2.radical_chain()
    assert chain[1].equals(FpSpan(2, 4, [(1, 1, 1, 1)]))
    assert len(chain) == 2  # J^3 = 0

    alg3 = residue_algebra(ResidueForm(3, 1, 1, 1, 0, 0, 0))
    assert alg3.radical().is_zero()


def test_classification_examples():
    c = classify_residue(ResidueForm(3, 1, 1, 0, 0, 0, 0))
    assert c.case == "2a" and c.quotient == (2, "field")  # -1 is not a square mod 3
    c = classify_residue(ResidueForm(5, 1, 1, 0, 0, 0, 0))
    assert c.case == "2a" and c.quotient == (2, "split")  # -1 = 4 mod 5 is a square
    assert classify_residue(ResidueForm(2, 1, 1, 1, 0, 0, 0)).case == "1b-i"
    c3 = classify_residue(ResidueForm(3, 1, 0, 0, 0, 0, 0))
    assert c3.case == "3"
    assert set(c3.radical_basis) == {(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}
    assert c3.radical_sq_basis == ((0, 1, 0, 0),)
    with pytest.raises(NormalizationRequiredError):
        classify_residue(ResidueForm(3, 1, 1, 1, 0, 1, 0))
    with pytest.raises(NormalizationRequiredError):
        classify_residue(ResidueForm(3, 0, 1, 1, 0, 0, 0))


def test_classification_matches_brute_force_everywhere():
    rng = random.Random(92)
    shapes = {
        2: [(1, 1, 1, 0, 0, 0), (1, 1, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0),
            (0, 0, 0, 0, 0, 0), (1, 1, 1, 1, 0, 0), (0, 0, 1, 1, 0, 0), (0, 1, 1, 1, 0, 0)],
        3: [(1, 1, 1, 0, 0, 0), (1, 2, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0),
            (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0), (2, 0, 0, 0, 0, 0)],
        5: [(1, 1, 1, 0, 0, 0), (1, 1, 0, 0, 0, 0), (1, 2, 0, 0, 0, 0),
            (3, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0)],
    }
    for p, cases in shapes.items():
        dvr = DvrConfig(p)
        for base in cases:
            # lifts over D must reduce to the same classification
            lift = TernaryForm.of(dvr, *(x + p * rng.randint(0, p) for x in base))
            rform = lift.residue_form()
            assert rform == ResidueForm(p, *base)
            pred = classify_residue(rform)
            alg = residue_algebra(rform)
            dim = alg.quotient_dimension()
            assert dim in (1, 2, 4)
            assert alg.radical().equals(FpSpan(p, 4, pred.radical_basis))
            chain = alg.radical_chain()
            sq = chain[1] if len(chain) > 1 else FpSpan(p, 4, [])
            assert sq.equals(FpSpan(p, 4, pred.radical_sq_basis))
            assert alg.quotient_descriptor() == pred.quotient


def test_order_predicates_examples():
    preds = order_predicates(Q111)
    assert preds["residue_dimension"] == 4 and preds["is_maximal_hint"]
    preds = order_predicates(Q119)
    assert preds["residue_dimension"] == 2 and preds["is_local"]
    preds = order_predicates(TernaryForm.of(D3, 1, 3, 3))
    assert preds["residue_dimension"] == 1 and preds["is_local"]
    split = order_predicates(TernaryForm.of(D5, 1, 1, 5))
    assert split["is_eichler_hint"] and not split["is_local"]
    with pytest.raises(DegenerateFormError):
        order_predicates(TernaryForm.of(D3, 0, 1, 1, 1))


def test_find_isotropic_examples():
    assert find_isotropic(Q119) == (0, 1, 3)
    sol = find_isotropic(TernaryForm.of(D3, 1, -1, 1))
    z0, z2, z3 = sol
    assert z0 * z0 + (-1 * z3 * z3 + 1 * z2 * z2) == 0
    # (1, 0, 1) is always a solution for (1, -1, c), whatever c is
    for c in (1, 7, -5):
        form = TernaryForm.of(D3, 1, -1, c)
        assert 1 + 1 * (-1 * 1) == 0
        got = find_isotropic(form)
        g0, g2, g3 = got
        assert g0 * g0 + (-(g3 * g3) + c * g2 * g2) == 0
    with pytest.raises(IsotropyNotFoundError):
        find_isotropic(Q111, bound=3)
    with pytest.raises(NormalizationRequiredError):
        find_isotropic(TernaryForm.of(D3, 1, 1, -9, 0, 1, 0))


def test_find_nilpotent_in_radical():
    z = find_nilpotent_in_radical(Q119)
    assert z == Q119.element(0, 0, 1, -3)
    assert z.norm() == 0 and z.trace() == 0
    assert (z * z).is_zero()
    ctx = pi2_context(Q119)
    assert ctx.in_radical(z) and not ctx.in_radical_squared(z)
    with pytest.raises(NonLocalOrderError):
        find_nilpotent_in_radical(TernaryForm.of(D3, 1, -1, 1))


def test_long_atom_family_and_atom_test():
    z = find_nilpotent_in_radical(Q119)
    x2 = long_atom_family(Q119, z, 2)
    assert x2 == Q119.element(9, 0, 1, -3)
    assert x2.norm() == 81 and D3.valuation(x2.norm()) == 4
    for k in range(2, 6):
        xk = long_atom_family(Q119, z, k)
        assert D3.valuation(xk.norm()) == 2 * k
        assert is_atom_local(Q119, xk) is True
    # pi * (pi^2 + z) is a product of two radical elements
    assert is_atom_local(Q119, x2.scale(3)) is False
    with pytest.raises(ValueError):
        long_atom_family(Q119, z, 1)
    with pytest.raises(UnitInputError):
        is_atom_local(Q119, Q119.one())
    with pytest.raises(NotCancellativeError):
        is_atom_local(Q119, z)


def test_nilpotency_index_examples():
    assert nilpotency_index(TernaryForm.of(D2, 1, 1, 1)) == 3
    assert nilpotency_index(TernaryForm.of(D3, 1, 1, 3)) == 2
    assert nilpotency_index(Q111) == 1


def test_pi2_context_soundness_anchors():
    ctx = Pi2Context(Q119)
    # pi R sits inside J at the pi^2 level
    for t in range(4):
        vec = tuple(3 if s == t else 0 for s in range(4))
        assert ctx.j_module.contains(vec)
    assert ctx.j_module.contains_module(ctx.j2_module)
    # pi^2 * 1 reduces to zero mod pi^2, hence trivially in J^2
    assert ctx.j2_module.contains((9, 0, 0, 0))


def test_radical_report_shapes():
    rep = radical_report(Q119)
    assert rep["agrees"] and rep["case"] == "2a"
    rep2 = radical_report(TernaryForm.of(D2, 1, 1, 1))
    assert rep2["agrees"] and rep2["case"] == "1b-i"
    assert rep2["brute_force"]["nilpotency_index"] == 3


def test_form_parsing_and_membership():
    form = TernaryForm.from_strings(D3, ["1", "1", "-9", "0", "0", "0"])
    assert form == Q119
    with pytest.raises(Exception):
        TernaryForm.of(D3, rational(1, 3), 1, 1)
    x = Q119.element(1, 2, 3, 4)
    assert x.in_order()
    assert x.residue_vector(1) == (1, 2, 0, 1)
    frac = Q119.element(rational(1, 2), 0, 0, 0)
    assert frac.in_order()  # 1/2 lies in Z_(3)
    bad = Q119.element(rational(1, 3), 0, 0, 0)
    assert not bad.in_order()


def test_radical_equals_largest_nil_right_ideal():
    """Independent route: over a finite-dimensional algebra the radical is
    exactly {x : x*y is nilpotent for every y} (the largest nil right
    ideal), which needs no bilinear form at all."""
    import itertools

    shapes = [
        ResidueForm(2, 1, 1, 1, 0, 0, 0),
        ResidueForm(2, 0, 1, 1, 1, 0, 0),
        ResidueForm(3, 1, 1, 0, 0, 0, 0),
        ResidueForm(3, 1, 0, 0, 0, 0, 0),
        ResidueForm(3, 2, 1, 2, 0, 0, 0),
        ResidueForm(3, 1, 2, 2, 1, 2, 1),  # arbitrary, not normalized
    ]
    for rform in shapes:
        alg = residue_algebra(rform)
        p = alg.p
        everything = list(itertools.product(range(p), repeat=4))

        def nilpotent(x):
            acc = x
            for _ in range(3):
                acc = alg.mul(acc, x)
            return not any(acc)

        nil_ideal = {
            x for x in everything if all(nilpotent(alg.mul(x, y)) for y in everything)
        }
        rad = alg.radical()
        assert {x for x in everything if rad.contains(x)} == nil_ideal


def test_is_atom_local_undetermined_case():
    # j*k lands in J^2 without being pi-divisible: a genuine product of two
    # radical elements that the demonstrator does not exhibit, so the
    # tri-state test must answer "undetermined" rather than guess
    form = TernaryForm.of(D3, 1, 3, -27)
    preds = order_predicates(form)
    assert preds["is_local"]
    x = form.gen_j() * form.gen_k()
    assert x == form.element(0, -1, 0, 0)  # j*k = a(u - i) = -i here
    assert x.norm() != 0
    ctx = pi2_context(form)
    assert ctx.in_radical(x) and ctx.in_radical_squared(x)
    assert is_atom_local(form, x) is None


def test_residue_algebra_guard():
    from quatfact.errors import ExhaustiveSearchLimitError

    with pytest.raises(ExhaustiveSearchLimitError):
        residue_algebra(ResidueForm(11, 1, 1, 1, 0, 0, 0))
