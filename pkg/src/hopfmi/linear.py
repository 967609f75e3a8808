"""Exact finitely supported linear combinations over canonical bases.

A :class:`LinComb` maps basis keys to nonzero :class:`~fractions.Fraction`
coefficients. Keys must be hashable and totally ordered; iteration always
follows that order so every printed or serialized value is deterministic.
Tensors are LinCombs whose keys are tuples, one entry per leg.
"""
from fractions import Fraction
from itertools import groupby

from hopfmi.kernels import sub_vectors


class LinComb:
    """Immutable element of the free vector space on a canonical basis."""

    __slots__ = ("_terms", "_order", "_hash")

    def __init__(self, terms=()):
        acc = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for key, c in items:
            if c:
                acc[key] = acc.get(key, 0) + c
        self._terms = {k: Fraction(v) for k, v in acc.items() if v}
        self._order = None
        self._hash = None

    @classmethod
    def from_accumulator(cls, acc):
        """Wrap a dict filled by :func:`accumulate`; zero entries are dropped."""
        out = cls.__new__(cls)
        out._terms = {k: v if type(v) is Fraction else Fraction(v) for k, v in acc.items() if v}
        out._order = None
        out._hash = None
        return out

    @classmethod
    def basis(cls, key, coeff=1):
        return cls.from_accumulator({key: coeff})

    @classmethod
    def zero(cls):
        return cls.from_accumulator({})

    # -- mapping protocol ---------------------------------------------------
    def _sorted(self):
        if self._order is None:
            self._order = tuple(sorted(self._terms))
        return self._order

    def __iter__(self):
        return iter(self._sorted())

    def __len__(self):
        return len(self._terms)

    def __contains__(self, key):
        return key in self._terms

    def __getitem__(self, key):
        return self._terms.get(key, Fraction(0))

    coeff = __getitem__

    def keys(self):
        return self._sorted()

    def items(self):
        t = self._terms
        return [(k, t[k]) for k in self._sorted()]

    def raw_items(self):
        """Unordered ``(key, coeff)`` view, for hot loops that re-accumulate."""
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    # -- vector space -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LinComb):
            return NotImplemented
        return combine(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return combine(self, other, -1)

    def __neg__(self):
        return LinComb.from_accumulator({k: -v for k, v in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, LinComb):
            return NotImplemented
        if not c:
            return LinComb.zero()
        return LinComb.from_accumulator({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / Fraction(c))

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "LinComb(0)"
        return "LinComb(" + " + ".join(f"{c}*{k!r}" for k, c in self.items()) + ")"

    # -- linear maps ----------------------------------------------------------
    def map(self, f):
        """Linear extension of ``f: key -> LinComb`` (or any ``key -> coeff`` mapping)."""
        acc = {}
        for k, c in self._terms.items():
            image = f(k)
            items = image.raw_items() if isinstance(image, LinComb) else image.items()
            for k2, c2 in items:
                accumulate(acc, k2, c * c2)
        return LinComb.from_accumulator(acc)

    def map_keys(self, f):
        """Linear extension of a basis-to-basis map; ``f`` may return None for zero."""
        acc = {}
        for k, c in self._terms.items():
            k2 = f(k)
            if k2 is not None:
                accumulate(acc, k2, c)
        return LinComb.from_accumulator(acc)

    def is_integral(self, nonnegative=True):
        return all(
            c.denominator == 1 and (c >= 0 or not nonnegative) for c in self._terms.values()
        )


def accumulate(acc, key, c):
    acc[key] = acc.get(key, 0) + c


def combine(x, y, c):
    """``x + c*y``."""
    if not c:
        return x
    acc = dict(x._terms)
    for k, v in y._terms.items():
        accumulate(acc, k, c * v)
    return LinComb.from_accumulator(acc)


def bilinear_extend(f, x, y):
    """Bilinear extension of a basis-level map ``f(b1, b2) -> LinComb``."""
    acc = {}
    for k1, c1 in x._terms.items():
        for k2, c2 in y._terms.items():
            image = f(k1, k2)
            c = c1 * c2
            for k3, c3 in image.raw_items():
                accumulate(acc, k3, c * c3)
    return LinComb.from_accumulator(acc)


def tensor(*factors):
    """Tensor product; keys of the result are tuples with one key per factor."""
    acc = {(): Fraction(1)}
    for x in factors:
        nxt = {}
        for k, c in acc.items():
            for k2, c2 in x._terms.items():
                nxt[k + (k2,)] = c * c2
        acc = nxt
    return LinComb.from_accumulator(acc)


def legwise_product(s, t, mul):
    """Product of two tensors of equal rank; ``mul`` multiplies basis keys."""
    acc = {}
    for k1, c1 in s._terms.items():
        for k2, c2 in t._terms.items():
            key = tuple(mul(a, b) for a, b in zip(k1, k2))
            accumulate(acc, key, c1 * c2)
    return LinComb.from_accumulator(acc)


def apply_legs(t, maps):
    """``(f_1 ⊗ ... ⊗ f_n)(t)``; a ``None`` entry in ``maps`` is the identity."""
    acc = {}
    for key, c in t._terms.items():
        partial = {(): c}
        for leg, f in zip(key, maps):
            image = LinComb.basis(leg) if f is None else f(leg)
            nxt = {}
            for pk, pc in partial.items():
                for k2, c2 in image.raw_items():
                    accumulate(nxt, pk + (k2,), pc * c2)
            partial = nxt
        for pk, pc in partial.items():
            accumulate(acc, pk, pc)
    return LinComb.from_accumulator(acc)


def iterate_coproduct(delta, x, order):
    """Order-``n`` iterated coproduct ``(id^{n-2} ⊗ Δ)···Δ`` of ``x``.

    ``delta`` maps a basis key to a rank-2 tensor. Coassociativity makes the
    choice of leg immaterial; the last leg is expanded each time.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    current = x.map_keys(lambda k: (k,))
    for _ in range(order - 1):
        acc = {}
        for key, c in current.raw_items():
            for pair, c2 in delta(key[-1]).raw_items():
                accumulate(acc, key[:-1] + pair, c * c2)
        current = LinComb.from_accumulator(acc)
    return current


def multiset_splits(m):
    """Deshuffle a multiset into ``(part, complement, multiplicity)`` triples.

    ``m`` is any iterable of totally ordered keys. Each unordered split is
    listed once; its multiplicity is the number of position subsets realizing
    it, so the multiplicities sum to ``2**len(m)``.
    """
    groups = [(k, len(list(g))) for k, g in groupby(sorted(m))]
    keys = [k for k, _ in groups]
    counts = [n for _, n in groups]
    out = []
    for vec, mult in sub_vectors(counts):
        part = []
        rest = []
        for k, n, v in zip(keys, counts, vec):
            part.extend([k] * v)
            rest.extend([k] * (n - v))
        out.append((tuple(part), tuple(rest), mult))
    return out


def multisets_of_degree(items, degree_of, n):
    """All multisets (sorted tuples) of ``items`` whose degrees sum to ``n``.

    ``items`` must be sorted and every item must have positive degree.
    """
    pool = [(x, degree_of(x)) for x in items if 0 < degree_of(x) <= n]
    out = []
    chosen = []

    def rec(start, remaining):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for i in range(start, len(pool)):
            x, d = pool[i]
            if d <= remaining:
                chosen.append(x)
                rec(i, remaining - d)
                chosen.pop()

    rec(0, n)
    return out
