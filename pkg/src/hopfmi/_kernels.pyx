# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the kernels in ``_kernels_py``."""
from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from math import comb


def bounded_vectors(upper, weights, long target):
    cdef Py_ssize_t n = len(upper)
    if n != len(weights):
        raise ValueError("upper and weights differ in length")
    cdef vector[long] up = upper
    cdef vector[long] w = weights
    cdef vector[long] lo = vector[long](n + 1, 0)
    cdef vector[long] hi = vector[long](n + 1, 0)
    cdef vector[long] vec = vector[long](n, 0)
    cdef vector[long] rem = vector[long](n + 1, 0)
    cdef Py_ssize_t i
    cdef long span, rest
    for i in range(n - 1, -1, -1):
        span = w[i] * up[i]
        lo[i] = lo[i + 1] + (span if span < 0 else 0)
        hi[i] = hi[i + 1] + (span if span > 0 else 0)
    out = []
    if target < lo[0] or target > hi[0]:
        return out
    if n == 0:
        out.append(())
        return out
    # iterative depth-first odometer; vec[i] == -1 marks "not started"
    i = 0
    rem[0] = target
    vec[0] = -1
    while i >= 0:
        vec[i] += 1
        if vec[i] > up[i]:
            i -= 1
            continue
        rest = rem[i] - w[i] * vec[i]
        if rest < lo[i + 1] or rest > hi[i + 1]:
            continue
        if i == n - 1:
            if rest == 0:
                out.append(tuple([vec[j] for j in range(n)]))
            continue
        rem[i + 1] = rest
        i += 1
        vec[i] = -1
    return out


def sub_vectors(counts):
    cdef Py_ssize_t n = len(counts)
    cdef vector[long] c = counts
    cdef vector[long] v = vector[long](n, 0)
    cdef Py_ssize_t i
    binoms = [[comb(c[i], k) for k in range(c[i] + 1)] for i in range(n)]
    out = []
    while True:
        m = 1
        for i in range(n):
            m *= binoms[i][v[i]]
        out.append((tuple([v[i] for i in range(n)]), m))
        i = n - 1
        while i >= 0 and v[i] == c[i]:
            v[i] = 0
            i -= 1
        if i < 0:
            break
        v[i] += 1
    return out


cdef vector[uint64_t] _product(vector[long]& kids, vector[vector[long]]& children,
                               vector[uint64_t]& full):
    cdef vector[uint64_t] acc
    cdef vector[uint64_t] nxt
    cdef vector[uint64_t] mine
    cdef size_t a, b, k
    acc.push_back(0)
    for k in range(kids.size()):
        mine = _of_vertex(kids[k], children, full)
        nxt.clear()
        for a in range(acc.size()):
            for b in range(mine.size()):
                nxt.push_back(acc[a] | mine[b])
        acc.swap(nxt)
    return acc


cdef vector[uint64_t] _of_vertex(long v, vector[vector[long]]& children,
                                 vector[uint64_t]& full):
    cdef vector[uint64_t] res
    cdef vector[uint64_t] rest
    cdef size_t j
    res.push_back(full[v])
    rest = _product(children[v], children, full)
    for j in range(rest.size()):
        res.push_back(rest[j])
    return res


def crowns(parents):
    cdef Py_ssize_t n = len(parents)
    if n > 64:
        raise OverflowError("compiled crowns kernel handles at most 64 vertices")
    cdef vector[vector[long]] children = vector[vector[long]](n)
    cdef vector[long] roots
    cdef vector[uint64_t] full = vector[uint64_t](n, 0)
    cdef Py_ssize_t v, k
    cdef long p
    for v in range(n):
        p = parents[v]
        if p < 0:
            roots.push_back(v)
        else:
            if p >= v:
                raise ValueError("parents must precede children")
            children[p].push_back(v)
        full[v] = (<uint64_t> 1) << v
    for v in range(n - 1, -1, -1):
        for k in range(<Py_ssize_t> children[v].size()):
            full[v] |= full[children[v][k]]
    cdef vector[uint64_t] res = _product(roots, children, full)
    return sorted([res[k] for k in range(<Py_ssize_t> res.size())])
