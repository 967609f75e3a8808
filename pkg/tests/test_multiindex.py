from collections import Counter

import pytest

from hopfmi.errors import WeightError
from hopfmi.linear import LinComb
from hopfmi.multiindex import (
    MonomialBag,
    MultiIndex,
    bags_of_degree,
    d_partial,
    dbar,
    dbar_pow,
    mi_admissible_cuts,
    monomials_of_weight,
    novikov,
    sigma_bag,
    weight_minus_one_monomials,
    weight_partitions,
)
from oracles import labelled_cut_counts, weight_minus_one_exponents


def x(*slots, a="a"):
    return MultiIndex(Counter((a, j) for j in slots))


def test_stats():
    k = x(-1, -1, 0, 1)
    assert (k.degree, k.weight, k.factorial) == (4, -1, 2)
    assert str(k) == "x{-1}^2 x{0} x{1}"
    assert MultiIndex().degree == 0


def test_negative_slot_rejected():
    with pytest.raises(ValueError):
        MultiIndex({("a", -2): 1})


def test_derivations():
    assert d_partial(x(-1)) == LinComb.basis(x(0))
    assert dbar(x(-1)) == LinComb.zero()
    assert dbar(x(0, 0)) == LinComb.basis(x(-1, 0), 2)
    assert dbar_pow(x(0, 1), 2) == LinComb.basis(x(-1, 0), 3)
    assert dbar_pow(x(-1, 0), 0) == LinComb.basis(x(-1, 0))


def test_novikov_examples():
    assert novikov(x(-1), x(-1)) == LinComb.basis(x(-1, 0))
    assert novikov(x(-1), x(-1, 0)) == LinComb({x(-1, 0, 0): 1, x(-1, -1, 1): 1})


def test_bag_requires_weight_minus_one():
    with pytest.raises(WeightError):
        MonomialBag([x(0)])
    B = MonomialBag([x(-1), x(-1)])
    assert sigma_bag(B) == (2, 2, 1)


def test_monomial_counts_against_oracle():
    for n in range(1, 7):
        ours = {tuple(sorted(k.as_dict().items())) for k in weight_minus_one_monomials(n)}
        theirs = {tuple(sorted((("a", j), c) for j, c in e.items())) for e in weight_minus_one_exponents(n)}
        assert ours == theirs
    assert [len(weight_minus_one_monomials(n)) for n in range(1, 7)] == [1, 1, 2, 3, 5, 7]


def test_monomials_of_weight():
    for n in range(1, 5):
        for w in range(-1, 3):
            for k in monomials_of_weight(n, w, ("a", "b")):
                assert (k.degree, k.weight) == (n, w)
    assert len(monomials_of_weight(3, 0)) == 3


def test_bag_counts():
    assert [len(bags_of_degree(n)) for n in range(0, 6)] == [1, 1, 2, 4, 8, 15]


def test_weight_partitions():
    parts = weight_partitions(x(-1, -1, 0))
    assert sorted(map(str, parts)) == ["x{-1} (.) x{-1} x{0}"]
    assert weight_partitions(MultiIndex()) == [MonomialBag()]


def test_golden_cuts():
    cuts = mi_admissible_cuts(x(-1, -1, 0, 1))
    assert len(cuts) == 7
    assert sorted(c.multiplicity for c in cuts) == [1, 1, 1, 1, 2, 2, 2]
    full = [c for c in cuts if c.is_full]
    assert len(full) == 1 and full[0].bag == MonomialBag([x(-1, -1, 0, 1)])
    assert sum(1 for c in cuts if c.is_empty) == 1


def test_cut_multiplicities_against_labelled_oracle():
    for n in range(1, 7):
        for k in weight_minus_one_monomials(n):
            slots = [j for (_, j), m in k.entries for _ in range(m)]
            oracle = labelled_cut_counts(slots)
            ours = {}
            for c in mi_admissible_cuts(k):
                blocks = tuple(sorted(tuple(sorted(j for (_, j), m in f.entries for _ in range(m))) for f in c.bag))
                rem = tuple(sorted(j for (_, j), m in c.remainder.entries for _ in range(m)))
                ours[(blocks, rem)] = c.multiplicity
            assert ours == oracle, k


def test_cuts_reject_wrong_weight():
    with pytest.raises(WeightError):
        mi_admissible_cuts(x(0))
    with pytest.raises(WeightError):
        mi_admissible_cuts(MultiIndex())
