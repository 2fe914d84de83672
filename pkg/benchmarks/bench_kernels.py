"""Time the hot kernels with and without numba.

    python benchmarks/bench_kernels.py [--repeat N]

Each flavour runs in its own interpreter because the acceleration flag
(QDISCORD_DISABLE_NUMBA) is read at import time.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from qdiscord import _accel, _kernels
from qdiscord.channels import ChannelKind, apply_channel
from qdiscord.correlations import _angle_grid, classical_correlation_numeric
from qdiscord.linalg import hermitian_eigenvalues
from qdiscord.states import bell_state_matrix, random_bell_vectors

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
rhos = [apply_channel(bell_state_matrix(c), ChannelKind.PHASE_FLIP, 0.3) for c in random_bell_vectors(rng, repeat)]
_, _, pi00, pi11, pi10 = _angle_grid(256)


def best(fn):
    fn(rhos[0])  # warm-up, includes compilation
    times = []
    for rho in rhos:
        t = time.perf_counter()
        fn(rho)
        times.append(time.perf_counter() - t)
    return min(times), float(np.median(times))


out = {"numba": _accel.USE_NUMBA}
out["jacobi_4x4"] = best(hermitian_eigenvalues)
out["grid_256x256"] = best(lambda r: _kernels.grid_conditional_entropy(r, pi00, pi11, pi10))
out["classical_correlation"] = best(classical_correlation_numeric)
print(json.dumps(out))
"""


def run(disable, repeat):
    env = dict(os.environ, QDISCORD_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if not fast["numba"]:
        print("numba unavailable: both runs use the numpy kernels")
    print(f"{'kernel':<24}{'numba (ms)':>12}{'numpy (ms)':>12}{'speed-up':>10}")
    for key in ("jacobi_4x4", "grid_256x256", "classical_correlation"):
        a, b = fast[key][1] * 1e3, slow[key][1] * 1e3
        print(f"{key:<24}{a:>12.3f}{b:>12.3f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
