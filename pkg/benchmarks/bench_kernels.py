"""Compare the compiled enumeration kernels against the pure-Python ones.

Run as a script: python benchmarks/bench_kernels.py
Each workload runs on both backends (when the extension is available) and
reports wall time plus the speedup; results are checked equal first.
"""

import time

from lengthsets import kernels
from lengthsets import _kernel_py as pure

try:
    from lengthsets import _kernel_c as comp
except ImportError:
    comp = None

WORKLOADS = [
    (
        "solutions <6,9,20> x=600",
        lambda mod: mod.solutions([20, 9, 6], 600, 100),
    ),
    (
        "lengths_dfs <4,18,27> x=5400",
        lambda mod: mod.lengths_dfs([27, 18, 4], 5400, 1350),
    ),
    (
        "exists <31,41,59> sweep to 4000",
        lambda mod: [mod.exists([31, 41, 59], x) for x in range(4000)],
    ),
    (
        "member_table <101,103> bound 2*10^5",
        lambda mod: mod.member_table([101, 103], 2 * 10 ** 5),
    ),
    (
        "lengths_table64 <5,7,9,11> xmax 3*10^4",
        lambda mod: mod.lengths_table64([5, 7, 9, 11], 3 * 10 ** 4),
    ),
    (
        "probe_candidate <2..41 pairs> realize {2,3}",
        lambda mod: [
            mod.probe_candidate([a, b], 0, 200, 0b1100)
            for a in range(2, 42)
            for b in range(a + 1, 42)
        ],
    ),
]


def norm(res):
    if isinstance(res, (bytearray, bytes)):
        return bytes(res)
    if isinstance(res, list) and res and isinstance(res[0], tuple):
        return sorted(res)
    if isinstance(res, (list, set, frozenset)):
        return sorted(res) if not isinstance(res, list) else list(res)
    return res


def bench(fn, mod, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(mod)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    print(f"compiled extension available: {kernels.compiled_available()}")
    header = f"{'workload':<44} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in WORKLOADS:
        t_pure, r_pure = bench(fn, pure)
        if comp is None:
            print(f"{name:<44} {t_pure:>10.4f} {'-':>13} {'-':>8}")
            continue
        t_comp, r_comp = bench(fn, comp)
        assert norm(r_pure) == norm(r_comp), f"backend mismatch on {name}"
        print(f"{name:<44} {t_pure:>10.4f} {t_comp:>13.4f} {t_pure / t_comp:>7.1f}x")


if __name__ == "__main__":
    main()
