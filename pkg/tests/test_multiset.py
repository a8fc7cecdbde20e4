from collections import Counter
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import distinct_orderings, labelled_subsets, multisets_count
from urntubes.errors import DomainError
from urntubes.multiset import (
    EMPTY,
    Multiset,
    acc,
    add,
    coefm,
    facto,
    fully_below,
    leq,
    mbinom,
    mmultichoose,
    multichoose,
    multisets_of_size,
    relate,
    sub,
    submultisets_of_size,
    unit,
)

from conftest import multisets


def test_construction_drops_zeros_and_merges():
    m = Multiset([("b", 2), ("a", 0), ("b", 1)])
    assert m == Multiset.of(b=3)
    assert m["a"] == 0 and "a" not in m
    assert str(Multiset.of(a=2, b=3)) == "2a+3b"
    assert str(EMPTY) == "0"


@pytest.mark.parametrize("bad", [{"a": -1}, {"a": 1.5}, {"a": "2"}])
def test_construction_rejects_bad_counts(bad):
    with pytest.raises(DomainError):
        Multiset(bad)


def test_counting_examples():
    phi = Multiset.of(a=2, b=3)
    assert phi.size == 5 and facto(phi) == 12 and coefm(phi) == 10
    assert mbinom(Multiset.of(a=4, b=6), Multiset.of(a=1, b=2)) == 4 * 15
    assert multichoose(3, 2) == 6
    assert mmultichoose(Multiset.of(a=1, b=1), Multiset.of(a=2)) == 1
    with pytest.raises(DomainError):
        multichoose(0, 2)
    with pytest.raises(DomainError):
        mbinom(Multiset.of(a=1), Multiset.of(a=2))


@given(multisets(max_count=3))
def test_coefm_counts_distinct_orderings(phi):
    assert coefm(phi) == distinct_orderings(dict(phi.items()))


@given(multisets(max_count=3), st.data())
def test_mbinom_counts_labelled_subsets(psi, data):
    k = data.draw(st.integers(0, psi.size))
    for phi in submultisets_of_size(psi, k):
        assert mbinom(psi, phi) == labelled_subsets(dict(psi.items()), dict(phi.items()))


@given(st.integers(1, 5), st.integers(0, 6))
def test_multichoose_counts_multisets(n, m):
    assert multichoose(n, m) == multisets_count(n, m)
    assert multichoose(n, m) == len(list(multisets_of_size(range(n), m)))


@given(st.integers(1, 20), st.integers(1, 20))
def test_pascal_and_multichoose_succession(n, m):
    assert comb(n + 1, m) == comb(n, m) + comb(n, m - 1)
    assert multichoose(n + 1, m) == multichoose(n, m) + multichoose(n + 1, m - 1)
    assert multichoose(n, m) == comb(n + m - 1, m)


@given(multisets(max_count=6, min_count=0), st.data())
def test_multiset_vandermonde(psi, data):
    k = data.draw(st.integers(0, psi.size))
    assert sum(mbinom(psi, phi) for phi in submultisets_of_size(psi, k)) == comb(psi.size, k)


@given(multisets(min_count=1, max_count=4), st.integers(0, 6))
def test_multichoose_vandermonde(psi, k):
    total = sum(mmultichoose(psi, phi) for phi in multisets_of_size(psi.support(), k))
    assert total == multichoose(psi.size, k)


@given(st.lists(st.sampled_from("abcd"), max_size=12), st.randoms())
def test_acc_is_permutation_invariant(seq, rnd):
    shuffled = list(seq)
    rnd.shuffle(shuffled)
    assert acc(seq) == acc(shuffled) == Multiset(Counter(seq))


@given(multisets(nonempty=False), multisets(nonempty=False))
def test_sub_undoes_add(phi, psi):
    assert sub(add(phi, psi), psi) == phi
    assert leq(psi, add(phi, psi))


def test_sub_requires_order():
    with pytest.raises(DomainError):
        sub(Multiset.of(a=1), Multiset.of(b=1))


def test_relations():
    tubes = Multiset.of(a=2, b=3)
    assert relate(Multiset.of(a=1, b=2), tubes) == (True, True, True)
    assert relate(Multiset.of(a=2, b=2), tubes) == (True, True, False)
    assert relate(tubes, tubes) == (True, False, False)
    assert fully_below(Multiset.of(b=1), tubes)
    assert not fully_below(Multiset.of(c=1), tubes)


def test_enumeration_order_is_deterministic():
    got = [str(phi) for phi in multisets_of_size(["a", "b"], 2)]
    assert got == ["2a", "1a+1b", "2b"]
    sub_sizes = [str(phi) for phi in submultisets_of_size(Multiset.of(a=1, b=2), 2)]
    assert sub_sizes == ["1a+1b", "2b"]
    assert list(submultisets_of_size(unit("a"), 2)) == []


def test_enumeration_of_empty_support():
    assert list(multisets_of_size([], 0)) == [EMPTY]
    with pytest.raises(DomainError):
        multisets_of_size([], 1)
