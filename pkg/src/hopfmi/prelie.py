"""Guin–Oudom extension of a pre-Lie product to the symmetric algebra.

Elements of the symmetric algebra are represented by a multiset class
``make`` (a sorted tuple subclass such as ``Forest`` or ``MonomialBag``)
whose items are the pre-Lie generators. The extension is computed from the
three defining rules:

* ``1 ▷ X = X``
* ``X ▷ (Y Z) = Σ (X₁ ▷ Y)(X₂ ▷ Z)`` over the deshuffle of ``X``
* ``(x Y) ▷ Z = x ▷ (Y ▷ Z) − (x ▷ Y) ▷ Z``

and the Grossman–Larson product is ``X ⋆ Y = Σ X₁ (X₂ ▷ Y)``.
"""
from hopfmi.linear import LinComb, accumulate, multiset_splits


class SymmetricPreLie:
    def __init__(self, prelie, make):
        self.prelie = prelie
        self.make = make
        self._go = {}
        self._gl = {}

    def go(self, X, Y):
        """Guin–Oudom product ``X ▷ Y`` of two basis multisets."""
        key = (X, Y)
        hit = self._go.get(key)
        if hit is not None:
            return hit
        make = self.make
        acc = {}
        if not X:
            acc[Y] = 1
        elif not Y:
            pass
        elif len(Y) > 1:
            head, tail = make(Y[:1]), make(Y[1:])
            for X1, X2, m in multiset_splits(X):
                left = self.go(make(X1), head)
                if not left:
                    continue
                right = self.go(make(X2), tail)
                for k1, c1 in left.raw_items():
                    for k2, c2 in right.raw_items():
                        accumulate(acc, make(k1 + k2), m * c1 * c2)
        elif len(X) == 1:
            for z, c in self.prelie(X[0], Y[0]).raw_items():
                accumulate(acc, make((z,)), c)
        else:
            x, rest = make(X[:1]), make(X[1:])
            for Z, c in self.go(rest, Y).raw_items():
                for W, c2 in self.go(x, Z).raw_items():
                    accumulate(acc, W, c * c2)
            for Z, c in self.go(x, rest).raw_items():
                for W, c2 in self.go(Z, Y).raw_items():
                    accumulate(acc, W, -c * c2)
        out = LinComb.from_accumulator(acc)
        self._go[key] = out
        return out

    def gl(self, X, Y):
        """Grossman–Larson product ``X ⋆ Y`` of two basis multisets."""
        key = (X, Y)
        hit = self._gl.get(key)
        if hit is not None:
            return hit
        make = self.make
        acc = {}
        for X1, X2, m in multiset_splits(X):
            for Z, c in self.go(make(X2), Y).raw_items():
                accumulate(acc, make(X1 + tuple(Z)), m * c)
        out = LinComb.from_accumulator(acc)
        self._gl[key] = out
        return out
