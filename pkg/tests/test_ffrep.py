from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import QUIVERS, small_specs, spec_id
from framedquiver.errors import NotASubrepresentation, SearchSpaceTooLarge, ValidationError
from framedquiver.ffrep import (
    FramedPair,
    GradedSubspace,
    Rep,
    an_orbit_count,
    build_injective_sum,
    count_moduli_points,
    count_stable_points,
    embedding_condition,
    enumerate_points,
    enumerate_reps,
    ext_simple_into,
    gr_subrep_count,
    hom_into_simple,
    hom_simple_into,
    injective_coresolution_dims,
    is_projective,
    is_stable,
    is_stable_slope,
    iso_classes,
    iter_embedded_points,
    max_subrep_in_ker,
    moduli_points,
    phi_injective,
    phi_map,
    quotient_rep,
    restricted_classes,
)
from framedquiver.moduli import ModuliSpec, poincare_polynomial
from framedquiver.quiver import euler_form, path_counts, paths_from, path_end

A1, A2, A3, K2 = (QUIVERS[k] for k in ("A1", "A2", "A3", "K2"))


def pair_a2(m, f1, f2, q=2):
    rep = Rep(A2, (1, 1), (((m,),),), q)
    return FramedPair(rep, (((f1,),), ((f2,),)))


def projective(quiver, i, q):
    """P_i spanned by paths starting at i; an arrow appends itself to a path."""
    basis = [[] for _ in range(quiver.size)]
    for path in paths_from(quiver, i):
        basis[path_end(quiver, i, path)].append(path)
    dims = tuple(len(b) for b in basis)
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        m = [[0] * dims[s] for _ in range(dims[t])]
        for c, path in enumerate(basis[s]):
            m[basis[t].index(path + (a,))][c] = 1
        maps.append(tuple(tuple(r) for r in m))
    return Rep(quiver, dims, tuple(maps), q)


# --------------------------------------------------------------- enumeration

def test_enumeration_sizes():
    assert sum(1 for _ in enumerate_points(ModuliSpec(A2, (1, 1), (1, 1)), 2)) == 8
    assert sum(1 for _ in enumerate_points(ModuliSpec(A2, (0, 0), (1, 1)), 3)) == 1
    pts = list(enumerate_points(ModuliSpec(A2, (1, 1), (1, 1)), 3))
    assert len(set(pts)) == len(pts) == 27


def test_guard():
    with pytest.raises(SearchSpaceTooLarge):
        next(enumerate_points(ModuliSpec(K2, (3, 3), (3, 3)), 5))


def test_prime_check():
    with pytest.raises(ValidationError):
        next(enumerate_points(ModuliSpec(A1, (1,), (1,)), 4))


def test_shape_validation():
    with pytest.raises(ValidationError):
        Rep(A2, (1, 1), (((1, 0),),), 2)


# ------------------------------------------------------------- Phi and kernels

def test_phi_examples():
    phi = phi_map(pair_a2(1, 1, 1))
    assert phi[1] == ((1,),)
    assert phi[0] == ((1,), (1,))
    zero = phi_map(pair_a2(0, 0, 0))
    assert all(not any(map(any, m)) for m in zero.values())


def test_max_subrep_examples():
    assert max_subrep_in_ker(pair_a2(1, 1, 1)).is_zero()
    whole = max_subrep_in_ker(pair_a2(1, 0, 0))
    assert whole.dims == (1, 1)
    assert max_subrep_in_ker(pair_a2(0, 0, 1)).bases == (((1,),), ())


def test_a2_stable_count():
    spec = ModuliSpec(A2, (1, 1), (1, 1))
    assert sum(is_stable(p) for p in enumerate_points(spec, 2)) == 3


def test_trivial_stability():
    d0 = next(enumerate_points(ModuliSpec(A2, (0, 0), (1, 0)), 2))
    assert is_stable(d0) and is_stable_slope(d0)
    rep = Rep(A1, (1,), (), 2)
    assert not is_stable(FramedPair(rep, (((0,),),)))


@pytest.mark.parametrize("item", small_specs(max_d=2, max_n=1, nonempty=False), ids=spec_id)
def test_stability_notions_agree(item):
    _, spec = item
    for pair in enumerate_points(spec, 2):
        s = is_stable(pair)
        assert s == phi_injective(pair) == is_stable_slope(pair)


# ------------------------------------------------------------------- counting

def test_count_examples():
    assert count_moduli_points(ModuliSpec(A2, (1, 1), (1, 1)), 2) == 3
    assert count_moduli_points(ModuliSpec(A1, (1,), (2,)), 3) == 4
    assert count_moduli_points(ModuliSpec(K2, (0, 0), (2, 2)), 3) == 1


def test_injective_sum_examples():
    x = build_injective_sum(A2, (1, 1), 2)
    assert x.dims == (2, 1) and x.maps == (((0, 1),),)
    assert build_injective_sum(A1, (3,), 2).dims == (3,)
    k = build_injective_sum(K2, (0, 1), 3)
    assert k.dims == (2, 1) and set(k.maps) == {((1, 0),), ((0, 1),)}


def test_injective_sum_dimensions(quiver):
    n = tuple(range(1, quiver.size + 1))
    counts = path_counts(quiver)
    x = build_injective_sum(quiver, n, 2)
    assert x.dims == tuple(sum(counts[i][j] * n[j] for j in range(quiver.size)) for i in range(quiver.size))


def test_gr_count_basics():
    x = build_injective_sum(A3, (1, 1, 1), 3)
    assert gr_subrep_count(x, (0, 0, 0)) == 1
    zero = Rep.zero(A2, (2, 1), 3)
    assert gr_subrep_count(zero, (1, 1)) == 4 * 1
    assert gr_subrep_count(Rep.zero(K2, (2, 2), 2), (1, 1)) == 9


@pytest.mark.parametrize("item", small_specs(max_d=2, max_n=2), ids=spec_id)
def test_point_count_identities(item):
    _, spec = item
    for q in (2, 3):
        expected = poincare_polynomial(spec)(q)
        x = build_injective_sum(spec.quiver, spec.n, q)
        assert gr_subrep_count(x, spec.d) == expected
        assert sum(1 for _ in iter_embedded_points(spec, q)) == expected
    assert count_moduli_points(spec, 2) == poincare_polynomial(spec)(2)


def test_subreps_pass_embedding_condition():
    spec = ModuliSpec(A3, (1, 1, 1), (1, 1, 1))
    for pt in moduli_points(spec, 2):
        assert embedding_condition(pt, spec, 2)


def test_embedding_counterexample():
    spec = ModuliSpec(A2, (1, 0), (1, 1))
    bad = GradedSubspace((((0, 1),), ()), (2, 1))
    good = GradedSubspace((((1, 0),), ()), (2, 1))
    assert not embedding_condition(bad, spec, 2)
    assert embedding_condition(good, spec, 2)
    assert embedding_condition(GradedSubspace(((), ()), (2, 1)), ModuliSpec(A2, (0, 0), (1, 1)), 2)


@pytest.mark.parametrize("item", small_specs(max_d=2, max_n=2, quivers={"A2": A2, "K2": K2}, nonempty=False), ids=spec_id)
def test_nonempty_iff_stable_point(item):
    from framedquiver.moduli import is_nonempty

    _, spec = item
    assert is_nonempty(spec) == (count_stable_points(spec, 2) > 0)


# -------------------------------------------------------- Hom and Ext to simples

def test_hom_examples():
    e1 = Rep(A2, (1, 0), ((),), 2)
    assert hom_simple_into(e1, 0) == 1
    p1 = Rep(A2, (1, 1), (((1,),),), 2)
    assert hom_simple_into(p1, 0) == 0 and ext_simple_into(p1, 0) == 0
    split = Rep(A2, (1, 1), (((0,),),), 2)
    assert hom_simple_into(split, 0) == 1 and ext_simple_into(split, 0) == 1


def test_coresolution_examples():
    i2 = build_injective_sum(A2, (0, 1), 2)
    assert injective_coresolution_dims(i2) == ((0, 1), (0, 0))
    # for 1 -> 2 the simple at the source is injective; 0 -> E_2 -> I_2 -> I_1 -> 0
    e1 = Rep(A2, (1, 0), ((),), 2)
    assert injective_coresolution_dims(e1) == ((1, 0), (0, 0))
    e2 = Rep(A2, (0, 1), (((),),), 2)
    assert injective_coresolution_dims(e2) == ((0, 1), (1, 0))
    assert injective_coresolution_dims(Rep.zero(A3, (0, 0, 0), 2)) == ((0, 0, 0), (0, 0, 0))


def test_projective_examples():
    for q in (A2, A3, K2):
        for i in range(q.size):
            assert is_projective(projective(q, i, 2))
    assert not is_projective(Rep(A2, (1, 1), (((0,),),), 2))
    assert is_projective(Rep.zero(K2, (0, 0), 2))


@pytest.mark.parametrize("name,d", [("A2", (1, 1)), ("A2", (2, 1)), ("A2", (1, 2)), ("A3", (1, 1, 1)), ("K2", (1, 2)), ("K2", (2, 2)), ("A2", (1, 0))])
def test_projective_iff_sum_of_indecomposable_projectives(name, d):
    quiver = QUIVERS[name]
    table = iso_classes(quiver, d, 2)
    proj = [projective(quiver, i, 2) for i in range(quiver.size)]
    sums = set()
    for mult in product(range(3), repeat=quiver.size):
        m = Rep.zero(quiver, (0,) * quiver.size, 2)
        for p, k in zip(proj, mult):
            for _ in range(k):
                m = m.direct_sum(p)
        if m.dims == d:
            sums.add(table.class_of(m))
    for cid, rep in enumerate(table.reps):
        assert is_projective(rep) == (cid in sums)


@pytest.mark.parametrize("name", ["A2", "A3", "K2"])
def test_euler_identity_on_simples(name):
    quiver = QUIVERS[name]
    for d in product(range(3), repeat=quiver.size):
        if sum(d) > 3:
            continue
        for rep in enumerate_reps(quiver, d, 2):
            for i in range(quiver.size):
                assert hom_simple_into(rep, i) - ext_simple_into(rep, i) == euler_form(quiver, quiver.unit(i), d)
            injective_coresolution_dims(rep)


# -------------------------------------------------------------- quotients

def test_quotient_examples():
    p1 = Rep(A2, (1, 1), (((1,),),), 2)
    assert quotient_rep(p1, GradedSubspace(((), ()), (1, 1))) == p1
    assert quotient_rep(p1, GradedSubspace((((1,),), ((1,),)), (1, 1))).dims == (0, 0)
    q = quotient_rep(p1, GradedSubspace(((), ((1,),)), (1, 1)))
    assert q.dims == (1, 0)
    with pytest.raises(NotASubrepresentation):
        quotient_rep(p1, GradedSubspace((((1,),), ()), (1, 1)))


# ------------------------------------------------------------------ orbits

def test_iso_class_examples():
    t = iso_classes(A2, (1, 1), 2)
    assert len(t) == 2 and t.sizes == (1, 1)
    assert len(iso_classes(A1, (1,), 3)) == 1


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_dynkin_class_counts_do_not_depend_on_q(name):
    quiver = QUIVERS[name]
    for d in product(range(4), repeat=quiver.size):
        if 0 < sum(d) <= 3:
            t2, t3 = iso_classes(quiver, d, 2), iso_classes(quiver, d, 3)
            assert len(t2) == len(t3)
            assert sum(t3.sizes) == 3 ** sum(d[s] * d[t] for s, t in quiver.arrows)


def test_kronecker_classes_grow_with_q():
    # a P^1 family of regular modules: q + 1 of them, plus the decomposable classes
    assert len(iso_classes(K2, (1, 1), 3)) - len(iso_classes(K2, (1, 1), 2)) == 1


def test_an_orbit_examples():
    assert an_orbit_count(ModuliSpec(A2, (1, 1), (1, 1)), 2) == 2
    assert an_orbit_count(ModuliSpec(A1, (1,), (2,)), 2) == 1
    assert an_orbit_count(ModuliSpec(A2, (0, 0), (1, 1)), 2) == 1


@pytest.mark.parametrize("name,d,n", [("A1", (1,), (2,)), ("A2", (1, 1), (1, 1)), ("A2", (1, 0), (1, 1)), ("A2", (0, 1), (0, 2)), ("K2", (1, 0), (1, 1)), ("A3", (0, 1, 1), (0, 1, 1))])
def test_an_orbits_match_restricted_classes(name, d, n):
    spec = ModuliSpec(QUIVERS[name], d, n)
    assert an_orbit_count(spec, 2) == len(restricted_classes(spec.quiver, d, n, 2))
