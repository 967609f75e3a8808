"""Multi-index B-series for one-dimensional polynomial vector fields.

A family ``f = (f_a)`` of polynomials in ``y`` determines the Novikov
morphism ``F_f(x_{-1}^a) = f_a`` with ``P ▷ Q = P·∂Q`` mapped to ``F(P)·F(Q)'``.
On a monomial this is the product of derivatives

    F_f(x^k) = Π_{a,j} (f_a^{(j+1)})^{k_j^a}

and the truncated B-series is ``Σ_{|k| <= N} α(x^k)/k! · F_f(x^k)``.
"""
import random
import re
from fractions import Fraction

from hopfmi.errors import BoundError, ParseError, WeightError
from hopfmi.forests import ENUMERATION_BOUND, enumerate_trees
from hopfmi.fertility import phi_tree
from hopfmi.multiindex import novikov, weight_minus_one_monomials


class Poly:
    """Polynomial in ``y`` with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def y(cls):
        return cls([0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(-Fraction(other)))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * Fraction(other) for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self, times=1):
        cs = list(self.coeffs)
        for _ in range(times):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return Poly(cs)

    def __call__(self, y):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * y + c
        return out

    def to_text(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            cs = str(mag)
            if i == 0:
                body = cs
            else:
                mono = "y" if i == 1 else f"y^{i}"
                body = mono if mag == 1 else f"{cs}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Poly({self.to_text()})"


_POLY_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+(?:/\d+)?)\s*\*?\s*)?(?P<y>y(?:\s*\^\s*(?P<exp>\d+))?)?\s*"
)


def parse_poly(text):
    """Parse ``c0 + c1*y + c2*y^2 ...`` (any order, rational coefficients)."""
    out = Poly()
    pos = 0
    text = text.replace("−", "-")
    if not text.strip():
        raise ParseError("empty polynomial", text, 0)
    first = True
    while pos < len(text):
        m = _POLY_TERM.match(text, pos)
        if not m.group("num") and not m.group("y"):
            raise ParseError("expected a polynomial term", text, m.end() if m.end() > pos else pos)
        if not first and not m.group("sign"):
            raise ParseError("expected '+' or '-'", text, pos)
        first = False
        c = Fraction(m.group("num")) if m.group("num") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        e = 0
        if m.group("y"):
            e = int(m.group("exp") or 1)
        out = out + Poly([0] * e + [c])
        pos = m.end()
    return out


def parse_field(spec, alphabet):
    """``"y^2"`` (every decoration) or ``"a=y^2;b=1+y"`` into a field family."""
    family = {}
    if "=" not in spec:
        p = parse_poly(spec)
        return {a: p for a in alphabet}
    for chunk in spec.split(";"):
        if not chunk.strip():
            continue
        name, _, body = chunk.partition("=")
        family[name.strip()] = parse_poly(body)
    missing = [a for a in alphabet if a not in family]
    if missing:
        raise ValueError(f"field family has no entry for decoration(s) {','.join(missing)}")
    return family


def elementary_differential(k, f):
    """``F_f(x^k)``: the product of ``f_a^{(j+1)}`` over the entries of ``k``."""
    if k.weight != -1:
        raise WeightError(f"elementary differentials need weight -1, got {k.weight} for {k}")
    out = Poly.const(1)
    for (a, j), m in k.entries:
        out = out * f[a].derivative(j + 1) ** m
    return out


def elementary_differential_lin(x, f):
    out = Poly()
    for k, c in x.raw_items():
        out = out + elementary_differential(k, f) * c
    return out


def tree_elementary_differential(t, f):
    """Classical one-dimensional elementary differential ``Π_v f_{d(v)}^{(f(v))}``."""
    out = Poly.const(1)
    for a, fert in t.vertices():
        out = out * f[a].derivative(fert)
    return out


def bseries_truncated(alpha, f, N, default=0, bound=ENUMERATION_BOUND):
    """``Σ α(x^k)/k! · F_f(x^k)`` over weight −1 monomials of degree 1..N.

    ``alpha`` maps monomials to rationals; missing monomials take ``default``.
    """
    if N > bound:
        raise BoundError(f"degree {N} exceeds the enumeration bound {bound}")
    alphabet = tuple(sorted(f))
    out = Poly()
    for n in range(1, N + 1):
        for k in weight_minus_one_monomials(n, alphabet):
            a = Fraction(alpha.get(k, default))
            if a:
                out = out + elementary_differential(k, f) * (a / k.factorial)
    return out


def random_field(rng, alphabet, max_degree=3):
    return {
        a: Poly(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, max_degree + 1)))
        for a in alphabet
    }


def check_morphism_law(max_degree, alphabet, seed=0, fields=3):
    """Failures of ``F(P ▷ Q) = F(P)·F(Q)'`` over monomial pairs of degree <= max_degree each."""
    rng = random.Random(seed)
    monos = [k for n in range(1, max_degree + 1) for k in weight_minus_one_monomials(n, alphabet)]
    failures = []
    cases = 0
    for _ in range(fields):
        f = random_field(rng, alphabet)
        for P in monos:
            FP = elementary_differential(P, f)
            for Q in monos:
                cases += 1
                lhs = elementary_differential_lin(novikov(P, Q), f)
                if lhs != FP * elementary_differential(Q, f).derivative():
                    failures.append(f"morphism law fails for P={P}, Q={Q}")
    return cases, failures


def check_tree_consistency(max_degree, alphabet, seed=0, fields=3):
    """Failures of ``Π_v f^{(f(v))} = F_f(Φ(t))`` over trees of up to max_degree vertices."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for _ in range(fields):
        f = random_field(rng, alphabet)
        for n in range(1, max_degree + 1):
            for t in enumerate_trees(n, alphabet):
                cases += 1
                if tree_elementary_differential(t, f) != elementary_differential(phi_tree(t), f):
                    failures.append(f"tree differential mismatch for {t}")
    return cases, failures
