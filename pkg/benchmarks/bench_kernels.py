"""Timing comparison of the loss-kernel backends.

Runs the photon-loss propagation of one field block with the compiled Cython
kernel and the pure-numpy fallback across representative cutoffs, plus one
end-to-end lossy pipeline point with each backend (selected via the
BELLHERALD_PURE environment variable in a subprocess).

    python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from bellherald import kernels  # noqa: E402


def time_call(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel():
    print(f"compiled kernel available: {kernels._losskern is not None}")
    print(f"{'dim':>6} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    rng = np.random.default_rng(0)
    eta = np.exp(-0.3)
    for dim in (101, 201, 301):
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        t_pure = time_call(kernels.damp_pure, m, eta)
        if kernels._losskern is not None:
            t_comp = time_call(kernels.damp_compiled, m, eta)
            print(f"{dim:>6} {t_pure*1e3:>12.2f} {t_comp*1e3:>14.2f} {t_pure/t_comp:>8.2f}x")
        else:
            print(f"{dim:>6} {t_pure*1e3:>12.2f} {'-':>14} {'-':>9}")


PIPELINE_SNIPPET = """
import time
import numpy as np
from bellherald import kernels
from bellherald.dynamics import InteractionParams
from bellherald.loss import LossParams, LossyPipeline

params = InteractionParams(alpha=10.0, g_mag=1.0, tau=(23/4)*2*np.pi/10.0)
pipe = LossyPipeline(params)
pipe.result(LossParams(0.1))  # warm up
t0 = time.perf_counter()
for gt in (0.05, 0.15, 0.25):
    pipe.result(LossParams(gt))
print(f"{kernels.backend_name()}: {(time.perf_counter()-t0)/3*1e3:.0f} ms per sweep point")
"""


def bench_pipeline():
    sys.stdout.flush()
    env = dict(os.environ, PYTHONPATH=os.pathsep.join(sys.path))
    for pure in ("0", "1"):
        env["BELLHERALD_PURE"] = pure
        subprocess.run([sys.executable, "-c", PIPELINE_SNIPPET], env=env, check=True)


if __name__ == "__main__":
    bench_kernel()
    print()
    bench_pipeline()
