import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl2act import linear_category as lc
from sl2act import tl_diagram as tl
from sl2act.clebsch_gordan import hom_dimension, tensor_power_multiplicities
from sl2act.linear_category import CMorphism, CObject, CSummand, HomElement

I1 = tl.identity(1)


def h(d, c=1):
    return HomElement.from_diagram(d, c)


def random_element(rng, m, n):
    basis = lc.hom_basis(m, n)
    return HomElement(m, n, {d: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for d in basis})


def test_hom_basis_sizes():
    assert len(lc.hom_basis(2, 2)) == 2
    assert lc.hom_basis(0, 2) == (tl.cup(),)
    assert len(lc.hom_basis(3, 3)) == 5


@pytest.mark.parametrize("m,n", list(itertools.product(range(7), repeat=2)))
def test_hom_dimension_oracle(m, n):
    assert len(lc.hom_basis(m, n)) == hom_dimension(m, n)


def test_relations_linear():
    assert lc.compose_linear(h(tl.cap()), h(tl.cup())) == HomElement.identity(0)
    zig = lc.compose_linear(h(tl.tensor(I1, tl.cap())), h(tl.tensor(tl.cup(), I1)))
    assert zig.is_zero()
    half = h(I1, Fraction(1, 2))
    third = h(I1, Fraction(1, 3))
    assert half @ third == h(I1, Fraction(1, 6))


def test_zero_coefficients_dropped():
    x = HomElement(1, 1, {I1: 0})
    assert x.is_zero() and x.coeffs == {}
    assert (h(I1) - h(I1)).coeffs == {}
    with pytest.raises(ValueError):
        HomElement(2, 2, {I1: 1})


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_bilinear_interchange(seed):
    rng = random.Random(seed)
    m0, n0, m1, n1 = (rng.randint(0, 3) for _ in range(4))
    a0 = random_element(rng, m0, m0 + 2 * rng.randint(0, 1))
    b0 = random_element(rng, m1, m1)
    a1 = random_element(rng, a0.n, a0.n % 2 + 2 * rng.randint(0, 1))
    b1 = random_element(rng, b0.n, b0.n)
    left = lc.compose_linear(lc.tensor_linear(a1, b1), lc.tensor_linear(a0, b0))
    right = lc.tensor_linear(lc.compose_linear(a1, a0), lc.compose_linear(b1, b0))
    assert left == right


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_composition_is_bilinear(seed):
    rng = random.Random(seed)
    f, f2 = random_element(rng, 2, 2), random_element(rng, 2, 2)
    g = random_element(rng, 2, 4)
    c = Fraction(rng.randint(-4, 4), 3)
    assert g @ (f + f2.scale(c)) == (g @ f) + (g @ f2).scale(c)


def test_split_identity():
    p, i = lc.split_idempotent(HomElement.identity(2))
    assert p.blocks == ((HomElement.identity(2),),)
    assert lc.compose_c(i, p) == CMorphism.identity(CObject.power(2))


def test_split_zero_gives_zero_summand():
    p, i = lc.split_idempotent(HomElement.zero(2, 2))
    assert lc.compose_c(p, i).blocks[0][0].is_zero()
    assert lc.summand_type(HomElement.zero(2, 2)) == {}


def test_split_cup_cap():
    e = h(tl.compose(tl.cup(), tl.cap()))
    assert e @ e == e
    p, i = lc.split_idempotent(e)
    whole = lc.compose_c(i, p)
    assert whole.blocks[0][0] == e
    part = lc.compose_c(p, i)
    assert part == CMorphism.identity(p.target)
    assert lc.summand_type(e) == {0: 1}


def test_non_idempotent_rejected():
    with pytest.raises(ValueError):
        lc.split_idempotent(h(I1, 2))
    with pytest.raises(ValueError):
        CSummand(2, h(tl.identity(2), 3))


def test_karoubi_morphism_condition():
    e = h(tl.compose(tl.cup(), tl.cap()))
    src = CObject((CSummand(2, e),))
    with pytest.raises(ValueError):
        CMorphism(src, CObject.power(2), [[HomElement.identity(2)]])


def test_decompose_examples():
    assert [(n, e) for n, e in lc.decompose_object(1)] == [(1, HomElement.identity(1))]
    two = lc.decompose_object(2)
    assert [n for n, _ in two] == [0, 2]
    assert two[0][1] == h(tl.compose(tl.cup(), tl.cap()))
    assert sorted(n for n, _ in lc.decompose_object(3)) == [1, 1, 3]


@pytest.mark.parametrize("m", range(6))
def test_decomposition_is_complete_and_orthogonal(m):
    family = lc.decompose_object(m)
    counts = {}
    for n, _ in family:
        counts[n] = counts.get(n, 0) + 1
    assert counts == tensor_power_multiplicities(m)
    total = HomElement.zero(m, m)
    for a, (na, ea) in enumerate(family):
        total = total + ea
        assert lc.summand_type(ea) == {na: 1}
        for b, (_, eb) in enumerate(family):
            assert ea @ eb == (ea if a == b else HomElement.zero(m, m))
    assert total == HomElement.identity(m)


def test_json_round_trip():
    x = h(tl.identity(2), Fraction(1, 2)) + h(tl.compose(tl.cup(), tl.cap()), -3)
    obj = lc.to_json(x)
    assert obj["terms"][0]["coeff"] in ("1/2", "-3")
    assert lc.from_json(obj) == x
    with pytest.raises(ValueError):
        lc.from_json({"m": 1})
