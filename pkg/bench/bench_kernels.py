"""Compare the compiled and pure-Python builds of the integer-table kernels.

The two hot loops (backtracking coset-table search and homomorphism-tuple
search) compile with numba unless ``FPCERT_JIT=0``.  Both builds run the
same code path, so this script re-executes itself in a subprocess per mode
and reports wall times side by side:

    python3 bench/bench_kernels.py
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time


def _workloads():
    from fpcert import low_index, presentation
    from fpcert.corpus import get

    f2 = presentation("a b")
    pc = get("p-coxeter-3-4x4").presentation
    return [
        ("low_index_tables: free rank 2, index <= 6", lambda: low_index(f2, 6)),
        ("low_index_tables: 3-generator order-3 Coxeter-like, index <= 9",
         lambda: low_index(pc, 9)),
        ("hom_tuples: free rank 2 normal subgroups, index <= 12",
         lambda: low_index(f2, 12, normal_only=True)),
    ]


def _child() -> None:
    from fpcert import _kernels

    results = {"jit": _kernels.JIT_ENABLED, "times": {}}
    for name, fn in _workloads():
        fn()  # warm up (includes any compilation)
        best = min(_timed(fn) for _ in range(3))
        results["times"][name] = best
    print(json.dumps(results))


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def _run_mode(flag: str) -> dict:
    env = dict(os.environ, FPCERT_JIT=flag)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--child"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    if "--child" in sys.argv:
        _child()
        return
    jit = _run_mode("1")
    pure = _run_mode("0")
    if not jit["jit"]:
        print("note: numba unavailable, both runs are the pure build")
    width = max(len(name) for name in pure["times"])
    print(f"{'workload':<{width}}  {'jit (s)':>9}  {'pure (s)':>9}  {'speedup':>7}")
    for name in pure["times"]:
        a, b = jit["times"][name], pure["times"][name]
        print(f"{name:<{width}}  {a:>9.4f}  {b:>9.4f}  {b / a:>6.1f}x")


if __name__ == "__main__":
    main()
