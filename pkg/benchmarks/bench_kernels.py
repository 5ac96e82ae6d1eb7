"""Time the compiled kernels against the NumPy fallback.

Runs each kernel on identical inputs with every importable backend, checks
the outputs agree, and prints median wall time per call. Also times a full
zeta evaluation with each backend by forcing it in a subprocess.

    python benchmarks/bench_kernels.py --repeats 20
"""

from __future__ import annotations

import argparse
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from zetastrip import _kernels
from zetastrip.special import borwein_weights

FULL_EVAL = (
    "import time, statistics\n"
    "from zetastrip import BACKEND, zeta_integral_new, zeta_reference\n"
    "ts = []\n"
    "for _ in range({repeats}):\n"
    "    t0 = time.perf_counter()\n"
    "    zeta_integral_new(0.5 + 14.134725j)\n"
    "    zeta_reference(0.5 + 14.134725j)\n"
    "    ts.append(time.perf_counter() - t0)\n"
    "print(BACKEND, statistics.median(ts))\n"
)


def _median_time(fn, repeats: int) -> float:
    fn()  # warm caches
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def kernel_cases(size: int):
    r = np.linspace(1e-3, 40.0, size)
    y = r * np.exp(0.6j)
    s = 0.5 + 14.134725j
    weights = borwein_weights(40)[0]
    return {
        "defect": lambda m: m.defect(y),
        "f3_integrand": lambda m: m.f3_integrand(r, s, -1.2),
        "f2_integrand": lambda m: m.f2_integrand(np.sqrt(r / np.pi), s, -1.2),
        "alt_weighted_sum": lambda m: m.alt_weighted_sum(s, weights, 0),
    }


def run_full_eval(repeats: int) -> dict[str, float]:
    out = {}
    for forced in ("", "1"):
        env = dict(os.environ)
        env.pop("ZETASTRIP_PURE_PYTHON", None)
        if forced:
            env["ZETASTRIP_PURE_PYTHON"] = forced
        proc = subprocess.run([sys.executable, "-c", FULL_EVAL.format(repeats=repeats)],
                              env=env, capture_output=True, text=True, check=True)
        name, secs = proc.stdout.split()
        out[name] = float(secs)
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--size", type=int, default=15 * 64, help="nodes per kernel call")
    args = parser.parse_args()

    backends = _kernels.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the fallback is timed")
    cases = kernel_cases(args.size)

    print(f"{'kernel':<18}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for label, call in cases.items():
        results = {name: call(mod) for name, mod in backends.items()}
        ref = results["python"]
        for name, val in results.items():
            if not np.allclose(val, ref, rtol=1e-12, atol=1e-300):
                print(f"{label}: backend {name} disagrees with the fallback")
                return 1
        times = {name: _median_time(lambda m=mod: call(m), args.repeats)
                 for name, mod in backends.items()}
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{label:<18}" + "".join(f"{times[n] * 1e6:>12.1f}us" for n in backends)
              + f"{speed:>9.1f}x")

    full = run_full_eval(max(3, args.repeats // 4))
    print("\nfull evaluation at s = 1/2 + 14.134725i (integral + reference):")
    for name, secs in full.items():
        print(f"  {name:<10} {secs * 1e3:8.2f} ms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
