"""Monomials of the polynomial algebra on variables ``x_j^a`` (``j >= -1``).

A :class:`MultiIndex` is the exponent vector of one monomial; a
:class:`MonomialBag` is a commutative (⊙) product of weight −1 monomials,
i.e. a basis element of the symmetric algebra over the free Novikov algebra.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from hopfmi.errors import WeightError
from hopfmi.kernels import bounded_vectors
from hopfmi.linear import LinComb, accumulate, multisets_of_degree

DEFAULT_ALPHABET = ("a",)


class MultiIndex:
    """Finitely supported map ``(decoration, slot) -> multiplicity``.

    Entries are kept as a sorted tuple of ``((a, j), k)`` pairs with ``k > 0``.
    The empty multi-index is the unit monomial.
    """

    __slots__ = ("entries", "degree", "weight", "_key", "_hash")

    def __init__(self, counts=()):
        items = counts.items() if hasattr(counts, "items") else counts
        acc = {}
        for (a, j), k in items:
            if j < -1:
                raise ValueError(f"slot {j} below -1")
            if k < 0:
                raise ValueError(f"negative multiplicity for x_{j}^{a}")
            if k:
                acc[(a, j)] = acc.get((a, j), 0) + k
        self._set(tuple(sorted(acc.items())))

    def _set(self, entries):
        self.entries = entries
        self.degree = sum(k for _, k in entries)
        self.weight = sum(j * k for (_, j), k in entries)
        self._key = (self.degree, entries)
        self._hash = hash(entries)

    @classmethod
    def _from_entries(cls, entries):
        out = cls.__new__(cls)
        out._set(entries)
        return out

    @classmethod
    def var(cls, a, j, power=1):
        return cls({(a, j): power})

    # -- comparisons ----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.entries == other.entries

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

    # -- arithmetic -----------------------------------------------------------
    def as_dict(self):
        return dict(self.entries)

    def count(self, a, j):
        for key, k in self.entries:
            if key == (a, j):
                return k
        return 0

    def __mul__(self, other):
        """Internal (commutative) product of monomials."""
        if not other.entries:
            return self
        if not self.entries:
            return other
        acc = dict(self.entries)
        for key, k in other.entries:
            acc[key] = acc.get(key, 0) + k
        return MultiIndex._from_entries(tuple(sorted(acc.items())))

    def divides(self, other):
        big = dict(other.entries)
        return all(big.get(key, 0) >= k for key, k in self.entries)

    def quotient(self, other):
        """``self / other`` as monomials; ValueError unless ``other`` divides ``self``."""
        acc = dict(self.entries)
        for key, k in other.entries:
            left = acc.get(key, 0) - k
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            if left:
                acc[key] = left
            else:
                del acc[key]
        return MultiIndex._from_entries(tuple(sorted(acc.items())))

    @property
    def factorial(self):
        return prod(factorial(k) for _, k in self.entries)

    sigma = factorial

    def decorations(self):
        return {a for (a, _), _ in self.entries}

    # -- text -----------------------------------------------------------------
    def to_text(self, show_decoration=True):
        if not self.entries:
            return "1"
        parts = []
        for (a, j), k in self.entries:
            inner = f"{a},{j}" if show_decoration else f"{j}"
            parts.append("x{" + inner + "}" + (f"^{k}" if k != 1 else ""))
        return " ".join(parts)

    def __str__(self):
        return self.to_text(show_decoration=self.decorations() - {"a"} != set())

    def __repr__(self):
        return f"MultiIndex({self})"


UNIT = MultiIndex()


class MonomialBag(tuple):
    """Multiset of weight −1 monomials, stored sorted; ``()`` is the unit."""

    __slots__ = ()

    def __new__(cls, factors=(), check=True):
        factors = tuple(sorted(factors))
        if check:
            for f in factors:
                if f.weight != -1 or f.degree < 1:
                    raise WeightError(f"bag factor {f} has weight {f.weight}, expected -1")
        return super().__new__(cls, factors)

    @classmethod
    def _make(cls, factors):
        return tuple.__new__(cls, sorted(factors))

    @property
    def degree(self):
        return sum(f.degree for f in self)

    def _key(self):
        return (self.degree, tuple(f._key for f in self))

    def __lt__(self, other):
        return self._key() < other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def odot(self, other):
        return MonomialBag._make(tuple(self) + tuple(other))

    def to_text(self, show_decoration=True):
        if not self:
            return "1"
        return " (.) ".join(f.to_text(show_decoration) for f in self)

    def __str__(self):
        return " (.) ".join(str(f) for f in self) if self else "1"

    def __repr__(self):
        return f"MonomialBag({self})"


def odot(x, y):
    return x.odot(y)


def bag(*factors):
    return MonomialBag(factors)


def mi_stats(k):
    """``(degree, weight, factorial)`` of a multi-index."""
    return k.degree, k.weight, k.factorial


def sigma_bag(B):
    """Symmetry factor of a bag as ``(total, external, internal)``."""
    external = 1
    internal = 1
    i = 0
    while i < len(B):
        j = i
        while j < len(B) and B[j] == B[i]:
            j += 1
        external *= factorial(j - i)
        internal *= B[i].factorial ** (j - i)
        i = j
    return external * internal, external, internal


# -- derivations ----------------------------------------------------------------


def _shift(k, a, j, step):
    """Move one copy of ``x_j^a`` to slot ``j + step``."""
    acc = dict(k.entries)
    acc[(a, j)] -= 1
    if not acc[(a, j)]:
        del acc[(a, j)]
    acc[(a, j + step)] = acc.get((a, j + step), 0) + 1
    return MultiIndex._from_entries(tuple(sorted(acc.items())))


@lru_cache(maxsize=None)
def d_partial(k):
    """The raising derivation ``∂x_j^a = x_{j+1}^a`` applied to ``x^k``."""
    acc = {}
    for (a, j), m in k.entries:
        accumulate(acc, _shift(k, a, j, 1), m)
    return LinComb.from_accumulator(acc)


@lru_cache(maxsize=None)
def dbar(k):
    """The lowering derivation: ``x_j^a -> x_{j-1}^a`` for ``j >= 0``, ``x_{-1}^a -> 0``."""
    acc = {}
    for (a, j), m in k.entries:
        if j >= 0:
            accumulate(acc, _shift(k, a, j, -1), m)
    return LinComb.from_accumulator(acc)


@lru_cache(maxsize=None)
def dbar_pow(k, r):
    """``r``-fold iterate of :func:`dbar` on ``x^k``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return LinComb.basis(k)
    return dbar_pow(k, r - 1).map(dbar)


@lru_cache(maxsize=None)
def novikov(P, Q):
    """Novikov product ``P ▷ Q = P·∂Q``."""
    return d_partial(Q).map_keys(lambda m: P * m)


def L_op(B, a):
    """Mock-cocycle: the product of the bag's factors times ``x_{r-1}^a``."""
    out = MultiIndex.var(a, len(B) - 1)
    for f in B:
        out = out * f
    return out


# -- sub-monomials and partitions --------------------------------------------------


def sub_multi_indices(m, weight):
    """All ``d`` dividing ``x^m`` with ``wt(d) == weight``, in canonical order."""
    keys = [key for key, _ in m.entries]
    upper = [k for _, k in m.entries]
    slots = [j for (_, j), _ in m.entries]
    out = []
    for vec in bounded_vectors(upper, slots, weight):
        out.append(
            MultiIndex._from_entries(tuple((key, v) for key, v in zip(keys, vec) if v))
        )
    return out


@lru_cache(maxsize=None)
def _parts_at_most(m, bound):
    """Nonincreasing tuples of weight −1 monomials multiplying to ``m``, first part ≤ bound."""
    if not m.entries:
        return ((),)
    if m.weight >= 0:
        return ()
    # each weight −1 part needs one slot −1 variable
    if sum(k for (_, j), k in m.entries if j == -1) < -m.weight:
        return ()
    out = []
    for p in sub_multi_indices(m, -1):
        if bound is not None and p > bound:
            continue
        for rest in _parts_at_most(m.quotient(p), p):
            out.append((p,) + rest)
    return tuple(out)


def weight_partitions(m):
    """Every multiset partition of ``x^m`` into weight −1 factors (as bags)."""
    return [MonomialBag._make(parts) for parts in _parts_at_most(m, None)]


# -- admissible cuts -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class MICut:
    """One admissible cut of a monomial, up to the multiplicity ``|c|``."""

    r: int
    bag: MonomialBag
    remainder: MultiIndex
    multiplicity: int

    @property
    def is_full(self):
        return self.r == 1 and not self.remainder.entries

    @property
    def is_empty(self):
        return self.r == 0


@lru_cache(maxsize=None)
def _cuts(k):
    if k.weight != -1:
        raise WeightError(f"admissible cuts need weight -1, got {k.weight} for {k}")
    if k.degree < 1:
        raise WeightError("the unit monomial has no admissible cuts")
    kfact = k.factorial
    n_roots = sum(m for (_, j), m in k.entries if j == -1)
    out = []
    for r in range(n_roots + 1):
        for kbar in sub_multi_indices(k, r - 1):
            for B in weight_partitions(k.quotient(kbar)):
                denom = kbar.factorial * sigma_bag(B)[0]
                mult, rem = divmod(kfact, denom)
                if rem:
                    raise ArithmeticError(f"non-integral cut multiplicity for {k}, {B}")
                out.append(MICut(r, B, kbar, mult))
    out.sort()
    return tuple(out)


def mi_admissible_cuts(k):
    """All admissible cuts of the weight −1 monomial ``x^k``.

    Includes the empty cut (``r == 0``, remainder ``k``) and the full cut
    (bag ``{k}``, unit remainder, ``r == 1``).
    """
    return list(_cuts(k))


# -- enumeration -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _monomials(n, alphabet, weight=-1):
    if n < 1 or n + weight < 0:
        return ()
    alphabet = tuple(sorted(alphabet))
    excess = n + weight
    raised = [(a, j) for a in alphabet for j in range(0, excess)]
    out = []
    # Σ (j+1) k_j over slots j >= 0 equals degree + weight
    for vec in bounded_vectors([excess] * len(raised), [j + 1 for _, j in raised], excess):
        roots = n - sum(vec)
        if roots < 0:
            continue
        base = {key: v for key, v in zip(raised, vec) if v}
        for split in bounded_vectors([roots] * len(alphabet), [1] * len(alphabet), roots):
            counts = dict(base)
            for a, v in zip(alphabet, split):
                if v:
                    counts[(a, -1)] = v
            out.append(MultiIndex(counts))
    return tuple(sorted(out))


def monomials_of_weight(n, weight, alphabet=DEFAULT_ALPHABET):
    """All monomials of degree ``n`` and the given weight over ``alphabet``."""
    return list(_monomials(n, tuple(sorted(alphabet)), weight))


def weight_minus_one_monomials(n, alphabet=DEFAULT_ALPHABET):
    """All weight −1 monomials of degree ``n`` over ``alphabet``."""
    return list(_monomials(n, tuple(sorted(alphabet))))


@lru_cache(maxsize=None)
def _bags(n, alphabet):
    pool = [m for d in range(1, n + 1) for m in _monomials(d, alphabet)]
    return tuple(
        sorted(MonomialBag._make(t) for t in multisets_of_degree(pool, lambda m: m.degree, n))
    )


def bags_of_degree(n, alphabet=DEFAULT_ALPHABET):
    """All monomial bags of total degree ``n`` (``n == 0`` gives the unit bag)."""
    if n == 0:
        return [MonomialBag()]
    return list(_bags(n, tuple(sorted(alphabet))))
