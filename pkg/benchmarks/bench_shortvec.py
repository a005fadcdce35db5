"""Compare the compiled and pure-Python short-vector kernels.

    python3 benchmarks/bench_shortvec.py [--repeat N]
"""

import argparse
import statistics
import time

from picdyn import _enum_py
from picdyn.shortvec import vectors_of_norm

try:
    from picdyn import _enum_ext
except ImportError:
    _enum_ext = None


def e8():
    M = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]:
        M[a][b] = M[b][a] = -1
    return M


def a_n(n):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


CASES = [
    ("E8, norm 4", e8(), 4),
    ("E8, norm 6", e8(), 6),
    ("A12, norm 6", a_n(12), 6),
]


def timed(Q, norm, kernel, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = vectors_of_norm(Q, norm, kernel=kernel)
        runs.append(time.perf_counter() - t)
    return statistics.median(runs), len(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    kernels = [("python", _enum_py.enumerate_norm)]
    if _enum_ext is not None:
        kernels.append(("compiled", _enum_ext.enumerate_norm))
    else:
        print("compiled kernel not built; timing the Python fallback only")
    print(f"{'case':<14}{'vectors':>9}" + "".join(f"{name:>12}" for name, _ in kernels) + f"{'speedup':>10}")
    for label, Q, norm in CASES:
        times, count = [], None
        for _, k in kernels:
            t, n = timed(Q, norm, k, args.repeat)
            if count is not None and n != count:
                raise SystemExit(f"{label}: kernels disagree ({count} vs {n})")
            count = n
            times.append(t)
        speed = f"{times[0] / times[-1]:.1f}x" if len(times) > 1 else "-"
        print(f"{label:<14}{count:>9}" + "".join(f"{t * 1000:>10.1f}ms" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
