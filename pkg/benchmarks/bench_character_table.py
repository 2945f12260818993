"""Compare the compiled and pure-Python character-table kernels.

    python3 benchmarks/bench_character_table.py [--n 12 16 20] [--repeat 3]

"fill" times only the level-by-level Murnaghan-Nakayama fill, given the
precomputed rim-hook arrays; "build" also includes that preprocessing.
"""
import argparse
import time

import numpy as np

from snspec import _mn_fallback
from snspec.characters import _build_values, _level_inputs, available_backends, rim_hooks

try:
    from snspec import _mn_kernel
except ImportError:
    _mn_kernel = None


def fill_python(counts, offsets, total, per_level, n):
    buf = [0] * total
    buf[0] = 1
    for m in range(1, n + 1):
        _mn_fallback.fill_level(buf, offsets, counts, m, *per_level[m])


def fill_cython(counts, offsets, total, per_level, n):
    buf = np.zeros(total, dtype=np.int64)
    buf[0] = 1
    c, o = np.asarray(counts, dtype=np.int64), np.asarray(offsets, dtype=np.int64)
    arrays = [None] + [tuple(np.asarray(a, dtype=np.int64) for a in per_level[m]) for m in range(1, n + 1)]
    for m in range(1, n + 1):
        _mn_kernel.fill_level(buf, o, c, m, *arrays[m])


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[12, 14, 16, 18, 20, 22])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'n':>3} {'kernel':>8} {'fill s':>9} {'build s':>9} {'cold s':>9}")
    for n in args.n:
        inputs = _level_inputs(n)
        for backend in backends:
            fill = fill_cython if backend == "cython" else fill_python
            t_fill = best_of(lambda: fill(*inputs, n), args.repeat)
            t_build = best_of(lambda: _build_values(n, backend), args.repeat)

            def cold():
                rim_hooks.cache_clear()
                _build_values(n, backend)

            t_cold = best_of(cold, 1)
            print(f"{n:>3} {backend:>8} {t_fill:>9.4f} {t_build:>9.4f} {t_cold:>9.4f}")
        if len(backends) == 2:
            assert _build_values(n, "cython") == _build_values(n, "python")


if __name__ == "__main__":
    main()
