"""The fertility map Φ from trees to multi-indices, its fibers, and the embedding ȷ.

Φ sends a decorated tree to the product of ``x_{f(v)-1}^{d(v)}`` over its
vertices; ȷ is its transpose,

    ȷ(x^k) = Σ_{Φ(t) = x^k} σ(x^k)/σ(t) · t,

extended multiplicatively from monomials to bags.
"""
import json
import logging
from functools import lru_cache
from itertools import combinations_with_replacement, product

from hopfmi import __version__
from hopfmi.errors import WeightError
from hopfmi.forests import Forest, Tree, tree_sigma
from hopfmi.linear import LinComb, accumulate
from hopfmi.lot import as_lot
from hopfmi.multiindex import MonomialBag, MultiIndex, weight_partitions

log = logging.getLogger(__name__)

CACHE_FORMAT = "hopfmi-fiber-cache"
CACHE_VERSION = 1


@lru_cache(maxsize=None)
def phi_tree(t):
    counts = {}
    for a, f in t.vertices():
        counts[(a, f - 1)] = counts.get((a, f - 1), 0) + 1
    return MultiIndex(counts)


def phi(F):
    """Fertility map on a tree or forest; a forest maps to the bag of its components' images."""
    if isinstance(F, Tree):
        return MonomialBag._make((phi_tree(F),))
    return MonomialBag._make(tuple(phi_tree(t) for t in F))


def phi_lin(x):
    """Linear extension of :func:`phi` to a combination of forests."""
    return x.map_keys(phi)


# -- fibers ---------------------------------------------------------------------

_FIBERS = {}


def _compute_fiber(k):
    found = set()
    for (a, j), _ in k.entries:
        residual = k.quotient(MultiIndex.var(a, j))
        for B in weight_partitions(residual):
            if len(B) != j + 1:
                continue
            groups = {}
            for p in B:
                groups[p] = groups.get(p, 0) + 1
            options = [
                list(combinations_with_replacement(phi_preimage(p), m))
                for p, m in groups.items()
            ]
            for pick in product(*options):
                children = [t for chunk in pick for t in chunk]
                found.add(Tree(a, children))
    return tuple(sorted(found))


def phi_preimage(k):
    """All canonical trees ``t`` with ``Φ(t) = x^k`` (memoized)."""
    hit = _FIBERS.get(k)
    if hit is not None:
        return hit
    if k.weight != -1 or k.degree < 1:
        raise WeightError(f"fibers exist only over weight -1 monomials, got {k}")
    fiber = _compute_fiber(k)
    if not fiber:
        raise ArithmeticError(f"empty fiber over {k}")
    return _FIBERS.setdefault(k, fiber)


@lru_cache(maxsize=None)
def _jmath_monomial(k):
    sk = k.factorial
    acc = {}
    for t in phi_preimage(k):
        c, rem = divmod(sk, tree_sigma(t))
        if rem:
            raise ArithmeticError(f"non-integral embedding coefficient {sk}/{tree_sigma(t)}")
        accumulate(acc, Forest([t]), c)
    return LinComb.from_accumulator(acc)


@lru_cache(maxsize=None)
def _jmath_bag(B):
    out = {Forest(): 1}
    for k in B:
        step = {}
        for F, c in out.items():
            for G, c2 in _jmath_monomial(k).raw_items():
                accumulate(step, F.mul(G), c * c2)
        out = step
    return LinComb.from_accumulator(out)


def jmath(x):
    """The embedding ȷ of a monomial, bag, or combination of bags into forests."""
    return as_lot(x).map(_jmath_bag)


# -- cache persistence ----------------------------------------------------------------


def save_fiber_cache(path, alphabet=None):
    from hopfmi.textio import format_key

    entries = {
        format_key(k, show_decoration=True): [t.to_text() for t in trees]
        for k, trees in sorted(_FIBERS.items())
    }
    doc = {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "generator": f"hopfmi {__version__}",
        "alphabet": sorted(alphabet) if alphabet else None,
        "fibers": entries,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, ensure_ascii=False)


def load_fiber_cache(path):
    """Load fibers from ``path``; entries whose trees fail the Φ re-check are dropped.

    Returns the number of accepted entries.
    """
    from hopfmi.textio import parse_multiindex_any, parse_tree_any

    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != CACHE_FORMAT or doc.get("version") != CACHE_VERSION:
        raise ValueError(f"{path}: not a version {CACHE_VERSION} fiber cache")
    accepted = 0
    for key, trees in doc.get("fibers", {}).items():
        k = parse_multiindex_any(key)
        parsed = tuple(sorted(parse_tree_any(s) for s in trees))
        if k.weight != -1 or not parsed or any(phi_tree(t) != k for t in parsed):
            log.warning("dropping invalid fiber cache entry %s", key)
            continue
        if len(set(parsed)) != len(parsed):
            log.warning("dropping fiber cache entry %s with duplicate trees", key)
            continue
        _FIBERS.setdefault(k, parsed)
        accepted += 1
    return accepted
