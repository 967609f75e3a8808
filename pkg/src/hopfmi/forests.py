"""Decorated rooted trees and forests: the Butcher–Connes–Kreimer side.

Trees are kept in canonical form (children sorted by the global tree order:
root decoration first, then the sorted child lists lexicographically), so
structural equality is isomorphism of decorated rooted trees.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial

from hopfmi.errors import BoundError
from hopfmi.kernels import crowns
from hopfmi.linear import (
    LinComb,
    accumulate,
    iterate_coproduct,
    legwise_product,
    multisets_of_degree,
)
from hopfmi.multiindex import DEFAULT_ALPHABET
from hopfmi.prelie import SymmetricPreLie

ENUMERATION_BOUND = 8


def _tree_key(t):
    return t._key


class Tree:
    __slots__ = ("decoration", "children", "size", "_key", "_hash")

    def __init__(self, decoration, children=()):
        children = tuple(sorted(children, key=_tree_key))
        self.decoration = decoration
        self.children = children
        self.size = 1 + sum(c.size for c in children)
        self._key = (decoration, tuple(c._key for c in children))
        self._hash = hash(self._key)

    @property
    def fertility(self):
        return len(self.children)

    def __eq__(self, other):
        return isinstance(other, Tree) and self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __gt__(self, other):
        return self._key > other._key

    def __le__(self, other):
        return self._key <= other._key

    def __ge__(self, other):
        return self._key >= other._key

    def vertices(self):
        """Preorder iterator over ``(decoration, fertility)`` pairs."""
        yield self.decoration, len(self.children)
        for c in self.children:
            yield from c.vertices()

    def to_text(self):
        if not self.children:
            return self.decoration
        return self.decoration + "[" + ",".join(c.to_text() for c in self.children) + "]"

    __str__ = to_text

    def __repr__(self):
        return f"Tree({self.to_text()})"


class Forest(tuple):
    """Multiset of trees, stored sorted; ``Forest()`` is the empty forest 𝟙."""

    __slots__ = ()

    def __new__(cls, trees=()):
        return super().__new__(cls, sorted(trees, key=_tree_key))

    @property
    def degree(self):
        return sum(t.size for t in self)

    def _key(self):
        return (self.degree, tuple(t._key for t in self))

    def __lt__(self, other):
        return self._key() < other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def mul(self, other):
        return Forest(tuple(self) + tuple(other))

    def to_text(self):
        return "·".join(t.to_text() for t in self) if self else "1"

    __str__ = to_text

    def __repr__(self):
        return f"Forest({self.to_text()})"


def forest_mul(F, G):
    return F.mul(G)


def tree(text_or_decoration, *children):
    return Tree(text_or_decoration, children)


# -- symmetry factors ------------------------------------------------------------


def _multiplicities(items):
    counts = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    return counts


@lru_cache(maxsize=None)
def tree_sigma(t):
    """Order of the automorphism group of a decorated rooted tree."""
    out = 1
    for s, m in _multiplicities(t.children).items():
        out *= factorial(m) * tree_sigma(s) ** m
    return out


def sigma_split(F):
    """``(total, external, internal)`` symmetry factors of a forest."""
    external = 1
    internal = 1
    for t, m in _multiplicities(F).items():
        external *= factorial(m)
        internal *= tree_sigma(t) ** m
    return external * internal, external, internal


def canonical_sigma(F):
    if isinstance(F, Tree):
        return tree_sigma(F)
    return sigma_split(F)[0]


# -- flat (labelled) form ---------------------------------------------------------------


def flatten(F):
    """Preorder labelling of a forest: ``(decorations, parents)``, parent -1 at roots."""
    decs = []
    parents = []

    def walk(t, parent):
        me = len(decs)
        decs.append(t.decoration)
        parents.append(parent)
        for c in t.children:
            walk(c, me)

    for t in F:
        walk(t, -1)
    return decs, parents


def build(decs, parents, mask=None, extra=None):
    """Canonical forest spanned by the vertices in ``mask`` (default: all).

    ``extra`` optionally maps a vertex to a list of trees to attach below it.
    """
    n = len(decs)
    if mask is None:
        mask = (1 << n) - 1
    kids = [[] for _ in range(n)]
    roots = []
    built = [None] * n
    for v in range(n - 1, -1, -1):
        if not mask >> v & 1:
            continue
        children = kids[v]
        if extra and v in extra:
            children = children + extra[v]
        built[v] = Tree(decs[v], children)
        p = parents[v]
        if p >= 0 and mask >> p & 1:
            kids[p].append(built[v])
        else:
            roots.append(built[v])
    return Forest(roots)


# -- grafting and Guin–Oudom ------------------------------------------------------------


def _graft_everywhere(s, t):
    yield Tree(t.decoration, t.children + (s,))
    for i, c in enumerate(t.children):
        for g in _graft_everywhere(s, c):
            yield Tree(t.decoration, t.children[:i] + (g,) + t.children[i + 1 :])


@lru_cache(maxsize=None)
def graft(s, t):
    """Pre-Lie grafting ``s → t``: attach the root of ``s`` to each vertex of ``t``."""
    acc = {}
    for g in _graft_everywhere(s, t):
        accumulate(acc, g, 1)
    return LinComb.from_accumulator(acc)


_FORESTS = SymmetricPreLie(graft, Forest)


def guin_oudom_forest(F, G):
    """Guin–Oudom extension ``F ▷ G`` of grafting, from its recursive definition."""
    return _FORESTS.go(Forest(F), Forest(G))


def multigraft(F, G):
    """``F ▷ G`` by direct enumeration: every component of F goes to some vertex of G."""
    F = Forest(F)
    decs, parents = flatten(G)
    n = len(decs)
    if not F:
        return LinComb.basis(Forest(G))
    acc = {}
    for targets in product(range(n), repeat=len(F)):
        extra = {}
        for t, v in zip(F, targets):
            extra.setdefault(v, []).append(t)
        accumulate(acc, build(decs, parents, extra=extra), 1)
    return LinComb.from_accumulator(acc)


def gl_forest(F, G):
    """Grossman–Larson product ``F ⋆ G = Σ F₁ (F₂ ▷ G)``."""
    return _FORESTS.gl(Forest(F), Forest(G))


def gl_graft_or_fall(F, G):
    """Grossman–Larson product by the graft-or-fall formula ``B₋(F → B₊(G))``."""
    root = Tree("", G)
    return multigraft(F, Forest([root])).map_keys(lambda H: Forest(H[0].children))


def bplus(F, a):
    return Tree(a, F)


def bminus(t, a):
    """Transpose of ``B₊^a`` on one basis forest: zero unless ``t`` is an a-rooted tree."""
    if isinstance(t, Forest):
        if len(t) != 1:
            return LinComb.zero()
        t = t[0]
    if t.decoration != a:
        return LinComb.zero()
    return LinComb.basis(Forest(t.children))


# -- admissible cuts and the coproduct -------------------------------------------------


@dataclass(frozen=True)
class ForestCut:
    pruning: Forest
    trunk: Forest


def bck_cuts(F):
    """One record per admissible cut (descendant-closed crown) of ``F``."""
    decs, parents = flatten(F)
    full = (1 << len(decs)) - 1
    return [
        ForestCut(build(decs, parents, m), build(decs, parents, full ^ m))
        for m in crowns(parents)
    ]


@lru_cache(maxsize=None)
def _delta_tree(t):
    acc = {}
    for cut in bck_cuts(Forest([t])):
        accumulate(acc, (cut.pruning, cut.trunk), 1)
    return LinComb.from_accumulator(acc)


_UNIT_PAIR = LinComb.basis((Forest(), Forest()))


@lru_cache(maxsize=None)
def _delta_forest(F):
    out = _UNIT_PAIR
    for t in F:
        out = legwise_product(out, _delta_tree(t), forest_mul)
    return out


def coproduct_bck(x, order=2):
    """Δ_BCK (or its order-``n`` iterate) of a forest or a combination of forests."""
    if not isinstance(x, LinComb):
        x = LinComb.basis(Forest(x) if not isinstance(x, Tree) else Forest([x]))
    if order == 2:
        return x.map(_delta_forest)
    return iterate_coproduct(_delta_forest, x, order)


def counit_bck(x):
    return x[Forest()]


@lru_cache(maxsize=None)
def _antipode_tree(t):
    acc = {Forest([t]): -1}
    for (P, Q), c in _delta_tree(t).raw_items():
        if not P or not Q:
            continue
        for R, c2 in _antipode_forest(P).raw_items():
            accumulate(acc, R.mul(Q), -c * c2)
    return LinComb.from_accumulator(acc)


@lru_cache(maxsize=None)
def _antipode_forest(F):
    out = LinComb.basis(Forest())
    for t in F:
        step = {}
        for R, c in out.raw_items():
            for R2, c2 in _antipode_tree(t).raw_items():
                accumulate(step, R.mul(R2), c * c2)
        out = LinComb.from_accumulator(step)
    return out


def antipode_bck(x):
    """Antipode of the forest Hopf algebra by the same graded recursion as on bags."""
    if not isinstance(x, LinComb):
        x = LinComb.basis(Forest(x) if not isinstance(x, Tree) else Forest([x]))
    return x.map(_antipode_forest)


# -- enumeration -------------------------------------------------------------------------


def _check_bound(n, bound):
    if n > bound:
        raise BoundError(f"degree {n} exceeds the enumeration bound {bound}")


@lru_cache(maxsize=None)
def _trees(n, alphabet):
    if n < 1:
        return ()
    out = [Tree(a, F) for F in _forests(n - 1, alphabet) for a in alphabet]
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _forests(n, alphabet):
    if n == 0:
        return (Forest(),)
    pool = [t for d in range(1, n + 1) for t in _trees(d, alphabet)]
    pool.sort()
    return tuple(sorted(Forest(m) for m in multisets_of_degree(pool, lambda t: t.size, n)))


def enumerate_trees(n, alphabet=DEFAULT_ALPHABET, bound=ENUMERATION_BOUND):
    _check_bound(n, bound)
    return list(_trees(n, tuple(sorted(alphabet))))


def enumerate_forests(n, alphabet=DEFAULT_ALPHABET, bound=ENUMERATION_BOUND):
    _check_bound(n, bound)
    return list(_forests(n, tuple(sorted(alphabet))))


# -- the cut/graft count identity ------------------------------------------------------------


def cut_counts(u):
    """``{(pruning, trunk): number of admissible cuts}`` for a forest ``u``."""
    counts = {}
    for cut in bck_cuts(u):
        key = (cut.pruning, cut.trunk)
        counts[key] = counts.get(key, 0) + 1
    return counts


def cut_graft_counts(u, v, w):
    """``(C, G)``: cuts of u with pruning v and trunk w; graftings of v on w giving u.

    Each component of v is either grafted onto a vertex of w or left as a new
    component (the graft-or-fall convention); this keeps the count identity
    valid for forests and for the cut with empty trunk.
    """
    u, v, w = Forest(u), Forest(v), Forest(w)
    C = cut_counts(u).get((v, w), 0)
    G = gl_graft_or_fall_counts(v, w).get(u, 0)
    return C, G


def gl_graft_or_fall_counts(v, w):
    return {F: int(c) for F, c in gl_graft_or_fall(v, w).items()}
