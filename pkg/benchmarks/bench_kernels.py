"""Compare the compiled and pure-Python polynomial kernels.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--max-k 21] [--seed 1]

Each row reports the best wall time over ``--repeat`` runs for every
available backend, plus the speed-up of the compiled kernels.  The
end-to-end rows swap the backend under the full matrix and Gaussian
pipelines.
"""
from __future__ import annotations

import argparse
import random
import sys
import timeit
from contextlib import contextmanager
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from corpus import random_corpus, torus_2  # noqa: E402

from alexgauss import _kernels_py, kernels  # noqa: E402
from alexgauss.alexander import alex_matrix, alex_via_gaussian, alex_via_matrix  # noqa: E402

NAMES = ("mul", "divexact", "det", "gcd")


def matrix_rows(m):
    rows = []
    for row in m.entries:
        nz = [p for p in row if p]
        lo = min(p.low for p in nz)
        rows.append([[0] * (p.low - lo) + list(p.coeffs) if p else [] for p in row])
    return rows


@contextmanager
def use_backend(mod):
    saved = {n: getattr(kernels, n) for n in NAMES}
    for n in NAMES:
        setattr(kernels, n, getattr(mod, n))
    try:
        yield
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def cases(args):
    rng = random.Random(args.seed)
    polys = [[rng.randint(-9, 9) for _ in range(60)] for _ in range(40)]
    pairs = list(zip(polys[::2], polys[1::2]))
    yield "mul 20 pairs, degree 59", lambda m: [m.mul(a, b) for a, b in pairs]
    full = [(_kernels_py.mul(a, b), b) for a, b in pairs]
    yield "divexact 20 pairs", lambda m: [m.divexact(p, b) for p, b in full]
    cyc = [[1, -1, 1], [1, 1], [1, -3, 1], [2, -1, 2]]
    gcd_pairs = []
    for _ in range(20):
        c = rng.choice(cyc)
        a = _kernels_py.mul(c, [rng.randint(-3, 3) for _ in range(8)])
        b = _kernels_py.mul(c, [rng.randint(-3, 3) for _ in range(8)])
        gcd_pairs.append((a, b))
    yield "gcd 20 pairs with common factor", lambda m: [m.gcd(a, b) for a, b in gcd_pairs]
    for k in range(5, args.max_k + 1, 8):
        rows = matrix_rows(alex_matrix(torus_2(k)))
        yield f"det T(2,{k}) presentation ({len(rows)}x{len(rows)})", lambda m, r=rows: m.det(r)
    corpus = random_corpus(20, seed=args.seed, max_crossings=10)
    mats = [matrix_rows(alex_matrix(d)) for d in corpus]
    yield "det 20 random braid closures (n <= 10)", lambda m: [m.det(r) for r in mats]


def end_to_end(args):
    knots = [torus_2(k) for k in (9, 13)] + random_corpus(10, seed=args.seed, max_crossings=8)
    yield "matrix pipeline, 12 knots", lambda: [alex_via_matrix(d) for d in knots]
    yield "gaussian pipeline, 12 knots", lambda: [alex_via_gaussian(d) for d in knots]


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--max-k", type=int, default=21)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args(argv)

    backends = kernels.available_backends()
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")
    header = f"{'case':48s}" + "".join(f"{n:>12s}" for n in backends) + ("     speed-up" if len(backends) > 1 else "")
    print(header)
    print("-" * len(header))

    def row(label, times):
        line = f"{label:48s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
        if "cython" in times:
            line += f"{times['python'] / times['cython']:12.1f}x"
        print(line)

    for label, fn in cases(args):
        ref = None
        times = {}
        for name, mod in backends.items():
            out = fn(mod)
            if ref is None:
                ref = out
            elif out != ref:
                raise SystemExit(f"backend {name} disagrees on {label}")
            times[name] = best(lambda: fn(mod), args.repeat)
        row(label, times)

    for label, fn in end_to_end(args):
        times = {}
        ref = None
        for name, mod in backends.items():
            with use_backend(mod):
                out = [r.poly for r in fn()]
                if ref is None:
                    ref = out
                elif out != ref:
                    raise SystemExit(f"backend {name} disagrees on {label}")
                times[name] = best(fn, args.repeat)
        row(label, times)
    return 0


if __name__ == "__main__":
    sys.exit(main())
