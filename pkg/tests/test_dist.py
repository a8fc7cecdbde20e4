from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from urntubes.dist import (
    Dist,
    NatDist,
    condition,
    constant,
    flrn,
    from_json,
    indicator,
    pred_product,
    tensor,
    tensor_all,
    tensor_pow,
    to_json,
    validity,
)
from urntubes.errors import ConditioningError, DomainError
from urntubes.multiset import EMPTY, Multiset

from conftest import distributions, multisets

F = Fraction


def test_construction_checks_total():
    with pytest.raises(DomainError, match="sum to 2/3"):
        Dist({"a": F(1, 3), "b": F(1, 3)})
    with pytest.raises(DomainError):
        Dist({"a": F(3, 2), "b": F(-1, 2)})
    d = Dist([("b", F(1, 2)), ("a", F(1, 4)), ("a", F(1, 4)), ("c", F(0))])
    assert d.support() == ("a", "b") and d("c") == 0


def test_flrn_example_and_empty():
    assert flrn(Multiset.of(a=1, b=2)) == Dist({"a": F(1, 3), "b": F(2, 3)})
    with pytest.raises(DomainError):
        flrn(EMPTY)


@given(multisets(), st.integers(1, 5))
def test_flrn_is_scale_invariant(phi, k):
    assert flrn(phi.scale(k)) == flrn(phi)


@given(distributions(max_colours=3), distributions(max_colours=2), distributions(max_colours=2))
def test_tensor_associativity(a, b, c):
    left = tensor(tensor(a, b), c).map(lambda o: (o[0][0], o[0][1], o[1]))
    right = tensor(a, tensor(b, c)).map(lambda o: (o[0], o[1][0], o[1][1]))
    assert left == right == tensor_all([a, b, c])


def test_tensor_pow():
    coin = Dist.uniform(["H", "T"])
    assert tensor_pow(coin, 3)(("H", "T", "H")) == F(1, 8)
    with pytest.raises(DomainError):
        tensor_pow(coin, 0)


def test_condition_example():
    die = Dist.uniform(range(1, 7))
    even = indicator(lambda n: n % 2 == 0)
    assert validity(die, even) == F(1, 2)
    assert condition(die, even) == Dist.uniform([2, 4, 6])
    with pytest.raises(ConditioningError):
        condition(die, indicator(lambda n: n > 6))
    with pytest.raises(DomainError):
        validity(die, constant(2))


@given(distributions(), st.lists(st.fractions(0, 1, max_denominator=9), min_size=4, max_size=4),
       st.lists(st.fractions(0, 1, max_denominator=9), min_size=4, max_size=4))
def test_conditioning_composes(omega, pv, qv):
    p = dict(zip("abcd", pv)).__getitem__
    q = dict(zip("abcd", qv)).__getitem__
    pq = pred_product(p, q)
    if validity(omega, pq) == 0:
        return
    assert condition(condition(omega, p), q) == condition(omega, pq)


@given(distributions())
def test_json_round_trip(omega):
    assert from_json(to_json(omega)) == omega


def test_natdist_conservation_and_lookup():
    d = NatDist({2: F(1, 2), 3: F(1, 4)}, 2, 4)
    assert d.residual == F(1, 4) and d.mass() + d.residual == 1
    assert d(4) == 0
    with pytest.raises(DomainError):
        d(5)
    with pytest.raises(DomainError):
        NatDist({2: F(1, 2), 3: F(3, 4)}, 2, 4)
    with pytest.raises(DomainError):
        NatDist({5: F(1)}, 2, 4)
    with pytest.raises(DomainError):
        d.to_dist()
    assert NatDist.from_json(d.to_json()) == d
    assert NatDist({2: F(1)}, 2, 2).to_dist() == Dist.point(2)
