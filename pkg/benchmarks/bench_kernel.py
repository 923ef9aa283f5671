"""Compare the compiled search kernel against the pure-Python fallback.

Runs identical workloads through both implementations and checks that they
return identical answers while reporting the speedup.  Usage:

    python benchmarks/bench_kernel.py
"""

from __future__ import annotations

import random
import time
from itertools import combinations

from emclab import _kernel_py
from emclab.kernel import edge_mask

try:
    from emclab import _kernel
except ImportError:
    _kernel = None


def candidates(n, k):
    cands = list(combinations(range(1, n + 1), k))
    index = {e: i for i, e in enumerate(cands)}
    succs = []
    for e in cands:
        out = []
        for i, a in enumerate(e):
            b = a + 1
            if b <= n and b not in e:
                out.append(index[tuple(sorted(e[:i] + (b,) + e[i + 1:]))])
        succs.append(out)
    return [edge_mask(e) for e in cands], succs


def bench_downset(impl, n, k, s):
    masks, succs = candidates(n, k)
    t0 = time.perf_counter()
    result = impl.downset_max_edges(masks, succs, s, 10**7)
    return time.perf_counter() - t0, result[:1] + result[2:]


def bench_matching(impl, seed, rounds):
    rng = random.Random(seed)
    total = 0.0
    results = []
    for _ in range(rounds):
        n = rng.randint(10, 14)
        k = rng.choice([3, 4])
        all_e = list(combinations(range(1, n + 1), k))
        masks = [edge_mask(e) for e in rng.sample(all_e, min(len(all_e), 60))]
        t0 = time.perf_counter()
        for need in range(1, n // k + 2):
            results.append(impl.find_matching(masks, k, need) is not None)
        total += time.perf_counter() - t0
    return total, results


def main():
    impls = [("python", _kernel_py)]
    if _kernel is not None:
        impls.append(("cython", _kernel))
    print(f"{'workload':28s}" + "".join(f"{name:>12s}" for name, _ in impls)
          + ("     speedup" if len(impls) == 2 else ""))
    workloads = [
        ("downset n=8 k=2 s=3", lambda impl: bench_downset(impl, 8, 2, 3)),
        ("downset n=9 k=3 s=2", lambda impl: bench_downset(impl, 9, 3, 2)),
        ("downset n=9 k=4 s=1", lambda impl: bench_downset(impl, 9, 4, 1)),
        ("matching search x100", lambda impl: bench_matching(impl, 7, 100)),
    ]
    for label, fn in workloads:
        times = []
        answers = []
        for _, impl in impls:
            t, ans = fn(impl)
            times.append(t)
            answers.append(ans)
        assert all(a == answers[0] for a in answers), f"impl mismatch on {label}"
        row = f"{label:28s}" + "".join(f"{t:11.3f}s" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
