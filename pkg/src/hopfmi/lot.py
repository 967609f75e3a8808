"""The Hopf algebra of decorated multi-indices.

Basis: monomial bags. The product is ⊙ and the coproduct is given on weight −1
monomials by admissible cuts,

    Δ(x^k) = Σ_c |c| · P^c ⊗ dbar^r(x^kbar),

extended multiplicatively. :func:`coproduct_dual_oracle` recomputes the same
coproduct from scratch as the transpose of the Grossman–Larson product under
the pairing ``<M, M'> = σ(M) δ``.
"""
from fractions import Fraction
from functools import lru_cache

from hopfmi.errors import WeightError
from hopfmi.linear import LinComb, accumulate, iterate_coproduct, legwise_product
from hopfmi.multiindex import (
    MonomialBag,
    MultiIndex,
    bags_of_degree,
    dbar_pow,
    mi_admissible_cuts,
    novikov,
    odot,
    sigma_bag,
    weight_partitions,
)
from hopfmi.prelie import SymmetricPreLie

UNIT_BAG = MonomialBag()
_UNIT_PAIR = LinComb.basis((UNIT_BAG, UNIT_BAG))

_BAGS = SymmetricPreLie(novikov, MonomialBag._make)


def as_bag(x):
    if isinstance(x, MultiIndex):
        return MonomialBag([x])
    return MonomialBag(x)


def as_lot(x):
    """Coerce a monomial, bag or combination to a combination of bags."""
    if isinstance(x, LinComb):
        return x
    return LinComb.basis(as_bag(x))


def go_bags(X, Y):
    """Guin–Oudom extension ``X ▷ Y`` of the Novikov product to bags."""
    return _BAGS.go(as_bag(X), as_bag(Y))


def gl_bags(X, Y):
    """Grossman–Larson product ``X ⋆ Y`` on bags."""
    return _BAGS.gl(as_bag(X), as_bag(Y))


@lru_cache(maxsize=None)
def _delta_monomial(k):
    acc = {}
    for cut in mi_admissible_cuts(k):
        if cut.is_full:
            accumulate(acc, (MonomialBag._make((k,)), UNIT_BAG), cut.multiplicity)
            continue
        right = dbar_pow(cut.remainder, cut.r)
        if not right:
            raise ArithmeticError(f"vanishing right leg for cut {cut} of {k}")
        for m, c in right.raw_items():
            accumulate(acc, (cut.bag, MonomialBag._make((m,))), cut.multiplicity * c)
    return LinComb.from_accumulator(acc)


@lru_cache(maxsize=None)
def _delta_bag(B):
    out = _UNIT_PAIR
    for k in B:
        out = legwise_product(out, _delta_monomial(k), odot)
    return out


def coproduct_lot(x, order=2):
    """Δ_LOT (or its order-``n`` iterate) of a monomial, bag or combination of bags."""
    x = as_lot(x)
    if order == 2:
        return x.map(_delta_bag)
    return iterate_coproduct(_delta_bag, x, order)


def counit_lot(x):
    return as_lot(x)[UNIT_BAG]


def reduced_coproduct_lot(x):
    return LinComb.from_accumulator(
        {(P, Q): c for (P, Q), c in coproduct_lot(x).raw_items() if P and Q}
    )


def is_primitive(B):
    B = as_bag(B)
    return coproduct_lot(B) == LinComb.from_accumulator({(B, UNIT_BAG): 1, (UNIT_BAG, B): 1})


def Lbar(k, a):
    """Transpose of the mock-cocycle ``L^a`` on a weight −1 monomial."""
    if k.weight != -1:
        raise WeightError(f"Lbar needs weight -1, got {k.weight} for {k}")
    acc = {}
    sk = k.factorial
    for (b, j), _ in k.entries:
        if b != a:
            continue
        root = MultiIndex.var(a, j)
        for B in weight_partitions(k.quotient(root)):
            if len(B) != j + 1:
                continue
            accumulate(acc, B, Fraction(sk, sigma_bag(B)[0]))
    return LinComb.from_accumulator(acc)


def Lbar_lin(x, a):
    """``Lbar^a`` on a combination of bags; zero on the unit and on bags of two or more factors."""

    def on_bag(B):
        if len(B) != 1:
            return LinComb.zero()
        return Lbar(B[0], a)

    return as_lot(x).map(on_bag)


def coproduct_dual_oracle(k):
    """Δ_LOT recomputed as the transpose of ⋆ under the σ-diagonal pairing.

    The coefficient of ``P ⊗ Q`` is ``σ(z)·[z](P ⋆ Q) / (σ(P)·σ(Q))`` where
    ``z`` is the bag being decomposed; the search runs over all pairs of bags
    whose degrees add up to the degree of ``z``.
    """
    z = as_bag(k)
    if isinstance(k, MultiIndex) and k.weight != -1:
        raise WeightError(f"oracle needs weight -1, got {k.weight} for {k}")
    alphabet = tuple(sorted({a for f in z for a in f.decorations()})) or ("a",)
    n = z.degree
    sz = sigma_bag(z)[0]
    acc = {}
    for p in range(n + 1):
        for P in bags_of_degree(p, alphabet):
            sP = sigma_bag(P)[0]
            for Q in bags_of_degree(n - p, alphabet):
                c = gl_bags(P, Q)[z]
                if c:
                    accumulate(acc, (P, Q), sz * c / (sP * sigma_bag(Q)[0]))
    return LinComb.from_accumulator(acc)


@lru_cache(maxsize=None)
def _antipode_monomial(k):
    acc = {MonomialBag._make((k,)): -1}
    for (P, Q), c in _delta_monomial(k).raw_items():
        if not P or not Q:
            continue
        for R, c2 in _antipode_bag(P).raw_items():
            accumulate(acc, R.odot(Q), -c * c2)
    return LinComb.from_accumulator(acc)


@lru_cache(maxsize=None)
def _antipode_bag(B):
    out = LinComb.basis(UNIT_BAG)
    for k in B:
        step = {}
        for R, c in out.raw_items():
            for R2, c2 in _antipode_monomial(k).raw_items():
                accumulate(step, R.odot(R2), c * c2)
        out = LinComb.from_accumulator(step)
    return out


def antipode_lot(x):
    """Antipode by the graded recursion ``S(z) = −z − Σ S(z')⊙z''``, extended multiplicatively."""
    return as_lot(x).map(_antipode_bag)


def convolution_check(x):
    """``m(S ⊗ id)Δ(x)``; equals ``ε(x)·𝟙`` in a Hopf algebra."""
    acc = {}
    for (P, Q), c in coproduct_lot(x).raw_items():
        for R, c2 in _antipode_bag(P).raw_items():
            accumulate(acc, R.odot(Q), c * c2)
    return LinComb.from_accumulator(acc)
