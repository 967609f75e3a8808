"""Compare the compiled and pure-Python integer kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Prints one row per kernel workload, then an end-to-end timing of a few CLI
workloads with and without HOPFMI_PURE_PYTHON=1.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from hopfmi import _kernels_py as pure

try:
    from hopfmi import _kernels as compiled
except ImportError:
    compiled = None


def workloads():
    rng = random.Random(0)
    bv = [
        ([rng.randint(0, 6) for _ in range(7)], [rng.randint(-1, 5) for _ in range(7)], rng.randint(0, 10))
        for _ in range(200)
    ]
    sv = [[rng.randint(0, 3) for _ in range(rng.randint(2, 6))] for _ in range(200)]
    forests = []
    for _ in range(200):
        n = rng.randint(6, 14)
        forests.append([-1] + [rng.randrange(v) for v in range(1, n)])
    return {
        "bounded_vectors": ("bounded_vectors", [(u, w, t) for u, w, t in bv]),
        "sub_vectors": ("sub_vectors", [(c,) for c in sv]),
        "crowns": ("crowns", [(p,) for p in forests]),
    }


def time_kernel(module, fname, cases, repeat):
    fn = getattr(module, fname)

    def go():
        for args in cases:
            fn(*args)

    return min(timeit.repeat(go, number=1, repeat=repeat))


END_TO_END = [
    ["verify", "--identity", "cut-graft-count", "--degree", "7"],
    ["verify", "--identity", "coassoc-bck", "--degree", "7"],
    ["verify", "--identity", "coassoc-lot", "--degree", "7"],
]


def time_cli(argv, pure_python):
    env = dict(os.environ)
    if pure_python:
        env["HOPFMI_PURE_PYTHON"] = "1"
    else:
        env.pop("HOPFMI_PURE_PYTHON", None)
    code = (
        "import sys, time; from hopfmi.cli import main; t = time.perf_counter(); "
        "main(sys.argv[1:]); print(time.perf_counter() - t, file=sys.stderr)"
    )
    out = subprocess.run([sys.executable, "-c", code, *argv], env=env, capture_output=True, text=True)
    return float(out.stderr.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-cli", action="store_true")
    args = parser.parse_args()
    print(f"{'kernel':<18}{'python (ms)':>14}{'compiled (ms)':>16}{'speedup':>10}")
    for label, (fname, cases) in workloads().items():
        tp = time_kernel(pure, fname, cases, args.repeat)
        if compiled is None:
            print(f"{label:<18}{tp * 1e3:>14.2f}{'n/a':>16}{'':>10}")
            continue
        tc = time_kernel(compiled, fname, cases, args.repeat)
        print(f"{label:<18}{tp * 1e3:>14.2f}{tc * 1e3:>16.2f}{tp / tc:>9.1f}x")
    if args.skip_cli:
        return
    print()
    print(f"{'command':<48}{'python (s)':>12}{'default (s)':>13}")
    for argv in END_TO_END:
        tp = time_cli(argv, True)
        td = time_cli(argv, False)
        print(f"{' '.join(argv):<48}{tp:>12.2f}{td:>13.2f}")


if __name__ == "__main__":
    main()
