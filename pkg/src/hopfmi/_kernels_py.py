"""Pure-Python combinatorial kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them
one-for-one and must produce identical output (same values, same order).
"""
from math import comb


def bounded_vectors(upper, weights, target):
    """All integer vectors ``0 <= v <= upper`` with ``sum(w*v) == target``.

    Output is in lexicographically increasing order.
    """
    n = len(upper)
    if n != len(weights):
        raise ValueError("upper and weights differ in length")
    # smallest / largest weight reachable from position i onwards
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        span = weights[i] * upper[i]
        lo[i] = lo[i + 1] + min(0, span)
        hi[i] = hi[i + 1] + max(0, span)
    out = []
    vec = [0] * n

    def rec(i, remaining):
        if i == n:
            if remaining == 0:
                out.append(tuple(vec))
            return
        w = weights[i]
        for v in range(upper[i] + 1):
            rest = remaining - w * v
            if lo[i + 1] <= rest <= hi[i + 1]:
                vec[i] = v
                rec(i + 1, rest)
        vec[i] = 0

    if lo[0] <= target <= hi[0]:
        rec(0, target)
    return out


def sub_vectors(counts):
    """All ``0 <= v <= counts`` paired with ``prod(comb(c_i, v_i))``."""
    out = [((), 1)]
    for c in counts:
        out = [(v + (k,), m * comb(c, k)) for v, m in out for k in range(c + 1)]
    return out


def crowns(parents):
    """Descendant-closed vertex subsets of a forest, as sorted bitmasks.

    ``parents[i]`` is the parent of vertex ``i`` (``-1`` for a root) and
    every parent precedes its children.
    """
    n = len(parents)
    children = [[] for _ in range(n)]
    roots = []
    for v, p in enumerate(parents):
        if p < 0:
            roots.append(v)
        else:
            if p >= v:
                raise ValueError("parents must precede children")
            children[p].append(v)
    full = [1 << v for v in range(n)]
    for v in range(n - 1, -1, -1):
        for c in children[v]:
            full[v] |= full[c]

    def product(vertices):
        acc = [0]
        for u in vertices:
            opts = of_vertex(u)
            acc = [a | b for a in acc for b in opts]
        return acc

    def of_vertex(v):
        return [full[v]] + product(children[v])

    return sorted(product(roots))
