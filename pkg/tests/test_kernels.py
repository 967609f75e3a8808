import os
import random
import subprocess
import sys

import pytest

from hopfmi import _kernels_py as py
from hopfmi import kernels

compiled = pytest.importorskip("hopfmi._kernels")


def _random_parents(rng, n):
    parents = []
    roots = 0
    for v in range(n):
        if v == 0 or rng.random() < 0.25:
            parents.append(-1)
            roots += 1
        else:
            parents.append(rng.randrange(v))
    return parents


def test_bounded_vectors_parity():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(0, 5)
        upper = [rng.randint(0, 4) for _ in range(n)]
        weights = [rng.randint(-1, 4) for _ in range(n)]
        target = rng.randint(-3, 8)
        assert list(map(tuple, compiled.bounded_vectors(upper, weights, target))) == list(
            map(tuple, py.bounded_vectors(upper, weights, target))
        )


def test_bounded_vectors_oracle():
    from itertools import product

    upper, weights = [2, 3, 1], [1, -1, 2]
    want = [v for v in product(*(range(u + 1) for u in upper)) if sum(a * b for a, b in zip(v, weights)) == 1]
    assert [tuple(v) for v in kernels.bounded_vectors(upper, weights, 1)] == want


def test_sub_vectors_parity():
    rng = random.Random(2)
    for _ in range(100):
        counts = [rng.randint(0, 4) for _ in range(rng.randint(0, 5))]
        a = [(tuple(v), c) for v, c in compiled.sub_vectors(counts)]
        b = [(tuple(v), c) for v, c in py.sub_vectors(counts)]
        assert a == b
        assert sum(c for _, c in b) == 2 ** sum(counts)


def test_crowns_parity_and_closure():
    rng = random.Random(3)
    for _ in range(100):
        parents = _random_parents(rng, rng.randint(1, 9))
        masks = list(py.crowns(parents))
        assert list(compiled.crowns(parents)) == masks
        for m in masks:
            for v, p in enumerate(parents):
                if p >= 0 and m >> p & 1:
                    assert m >> v & 1


def test_crowns_brute_force():
    parents = [-1, 0, 0, 2]
    n = len(parents)
    want = []
    for m in range(1 << n):
        if all(not (p >= 0 and m >> p & 1) or m >> v & 1 for v, p in enumerate(parents)):
            want.append(m)
    assert list(kernels.crowns(parents)) == sorted(want)


def test_large_forest_falls_back():
    # more than 64 vertices does not fit a bitmask word in the compiled kernel
    chain = [-1] + list(range(69))
    assert len(kernels.crowns(chain)) == 71


def test_pure_python_switch():
    env = dict(os.environ, HOPFMI_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import hopfmi.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
