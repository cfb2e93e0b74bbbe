import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import QUIVERS, small_specs, spec_id
from oracles import lr_by_monomials
from framedquiver.chow import (
    ChowClass,
    ChowRing,
    FormalSeries,
    delta_quotient_expand,
    delta_schur,
    lr_coefficient,
    partitions_of,
    quotient_series,
    series_invert,
)
from framedquiver.errors import NonUnitConstantTerm
from framedquiver.moduli import ModuliSpec, betti_numbers, chow_basis, partitions_in_box
from sympy import expand, symbols

A1, A2 = QUIVERS["A1"], QUIVERS["A2"]
c1, c2, x = symbols("c1 c2 x")


# ------------------------------------------------------------- series and Schur

def test_invert_geometric():
    inv = series_invert(FormalSeries([1, c1]), 4)
    assert [expand(inv[k]) for k in range(5)] == [1, -c1, c1**2, -c1**3, c1**4]


def test_invert_identity():
    assert series_invert(FormalSeries([1]), 3).coeffs == (1, 0, 0, 0)


def test_invert_second_coefficient():
    inv = series_invert(FormalSeries([1, c1, c2]), 2)
    assert expand(inv[2] - (c1**2 - c2)) == 0


def test_invert_rejects_non_unit():
    with pytest.raises(NonUnitConstantTerm):
        series_invert(FormalSeries([2, 1]), 3)


def test_delta_examples():
    s = FormalSeries([1, c1, c2])
    assert delta_schur((), s) == 1
    assert delta_schur((1,), s) == c1
    assert expand(delta_schur((1, 1), s) - (c1**2 - c2)) == 0


def test_delta_needs_enough_terms():
    with pytest.raises(ValueError):
        delta_schur((2, 1), FormalSeries([1, c1], order=1))


# ----------------------------------------------------------------- LR oracle

def test_lr_examples():
    assert lr_coefficient((1,), (1,), (2,)) == 1
    assert lr_coefficient((1,), (1,), (1, 1)) == 1
    assert lr_coefficient((1,), (2,), (2, 1)) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((1,), (1,), (3,)) == 0
    assert lr_coefficient((2,), (1,), (1, 1, 1)) == 0


PAIRS = [(mu, nu) for a in range(7) for b in range(7 - a) for mu in partitions_of(a) for nu in partitions_of(b)]


@pytest.mark.parametrize("mu,nu", PAIRS)
def test_lr_against_monomial_expansion(mu, nu):
    expected = lr_by_monomials(mu, nu)
    for lam in partitions_of(sum(mu) + sum(nu)):
        assert lr_coefficient(mu, nu, lam) == expected.get(lam, 0), lam


partitions = st.integers(0, 5).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@given(partitions, partitions, partitions)
def test_lr_symmetric(mu, nu, lam):
    assert lr_coefficient(mu, nu, lam) == lr_coefficient(nu, mu, lam)


# --------------------------------------------------- quotient expansion identity

def random_series(rng, order):
    return FormalSeries([1] + [rng.randint(-5, 5) for _ in range(order)])


@pytest.mark.parametrize("seed", range(100))
def test_quotient_expansion_identity(seed):
    rng = random.Random(seed)
    lam = rng.choice([p for n in range(5) for p in partitions_of(n)])
    order = lam[0] + len(lam) - 1 if lam else 0
    e, f = random_series(rng, rng.randint(1, 4)), random_series(rng, rng.randint(1, 4))
    direct = delta_schur(lam, quotient_series(e, f, max(order, 0)))
    assert delta_quotient_expand(lam, e, f) == direct


def test_quotient_expansion_trivial_cases():
    e = FormalSeries([1, 3, -2])
    assert delta_quotient_expand((), e, FormalSeries([1])) == 1
    # F = 1: only nu = empty survives
    assert delta_quotient_expand((2, 1), e, FormalSeries([1])) == delta_schur((2, 1), series_invert(e, 3))


# ------------------------------------------------------------------ Chow rings

CHOW_SPECS = [item for item in small_specs(max_d=3, max_n=3) if sum(betti_numbers(item[1])) > 0]


@pytest.mark.parametrize("item", [i for i in CHOW_SPECS if len(betti_numbers(i[1])) <= 7], ids=spec_id)
def test_ranks_match_betti(item):
    _, spec = item
    ring = ChowRing(spec)
    betti = betti_numbers(spec)
    assert [ring.graded_rank(k) for k in range(len(betti))] == betti
    for k in range(len(betti)):
        keys = ring.schur_basis(k)
        m = ring.change_of_basis(k)
        from framedquiver.linalg import rref_rational

        assert len(rref_rational(m)[1]) == len(keys)


def test_a1_relations():
    ring = ChowRing(ModuliSpec(A1, (1,), (2,)))
    rels = ring.relation_ideal()
    c = ring.chern(0, 1)
    assert rels[0][1] == 2 and rels[0][2] == c**2
    assert ring.normal_form(c**2, 2) == ()
    assert ring.normal_form(ring.ring.one, 0) == (1,)


def test_zero_dimension_vector_has_no_relations():
    assert ChowRing(ModuliSpec(A2, (0, 0), (1, 0))).relation_ideal() == []


def test_degree_above_dimension_is_zero():
    ring = ChowRing(ModuliSpec(A1, (1,), (2,)))
    assert ring.normal_form(ring.chern(0, 1) ** 3, 3) == ()


def test_grassmannian_pieri():
    ring = ChowRing(ModuliSpec(A1, (2,), (4,)))
    box = ChowClass.basis(((1,),))
    assert ring.multiply(box, box) == ChowClass({((2,),): 1, ((1, 1),): 1})


def test_p1_square_vanishes():
    ring = ChowRing(ModuliSpec(A1, (1,), (2,)))
    box = ChowClass.basis(((1,),))
    assert ring.multiply(box, box).is_zero()


@pytest.mark.parametrize("d,n", [(1, 3), (2, 4), (2, 5), (3, 5), (3, 6)])
def test_grassmannian_structure_constants_are_lr(d, n):
    ring = ChowRing(ModuliSpec(A1, (d,), (n,)))
    box = partitions_in_box(d, n - d)
    for a in box:
        for b in box:
            prod = ring.basis_product((a,), (b,))
            for lam in box:
                if sum(lam) == sum(a) + sum(b):
                    assert prod.terms.get((lam,), 0) == lr_coefficient(a, b, lam)
            assert all(key[0] in box for key in prod.terms)


@pytest.mark.parametrize("item", [i for i in CHOW_SPECS if len(betti_numbers(i[1])) <= 5], ids=spec_id)
def test_ring_axioms_on_basis(item):
    _, spec = item
    ring = ChowRing(spec)
    keys = chow_basis(spec)
    one = ring.unit()
    rng = random.Random(spec_id(item))
    for a in keys:
        xa = ChowClass.basis(a)
        assert ring.multiply(xa, one) == xa
        for b in keys:
            ab = ring.basis_product(a, b)
            assert ab == ring.basis_product(b, a)
            assert all(v.denominator == 1 for v in ab.terms.values())
            assert ab.is_zero() or ab.degrees == {sum(map(sum, a)) + sum(map(sum, b))}
    for _ in range(10):
        a, b, c = (ChowClass.basis(rng.choice(keys)) for _ in range(3))
        assert ring.multiply(ring.multiply(a, b), c) == ring.multiply(a, ring.multiply(b, c))


def test_to_schur_round_trip():
    ring = ChowRing(ModuliSpec(QUIVERS["A2"], (1, 1), (1, 2)))
    for key in chow_basis(ring.spec):
        assert ring.to_schur_basis(ring.schur_element(key)) == ChowClass.basis(key)
