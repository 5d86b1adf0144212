"""Compare the numba and numpy kernels.

Each backend runs in its own interpreter because the choice is fixed at
import time by HFCONE_DISABLE_NUMBA.  Usage:

    python3 benchmarks/bench_backends.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import itertools, json, sys, time
import numpy as np
from hfcone import _accel, fixtures
from hfcone.cone import SurgerySlope, cone_homology
from hfcone.hkm import verify_hkm_strong

repeat = int(sys.argv[1])

def best(fn):
    fn()  # warm-up (JIT compile on the numba path)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

rng = np.random.default_rng(0)
out = {"backend": _accel.backend()}
for n in (128, 512, 1024):
    dense = (rng.random((n, n)) < 0.05).astype(np.uint8)
    packed = _accel.pack(dense)
    out[f"rref {n}x{n}"] = best(lambda: _accel.rref_packed(packed.copy(), n))

lists = [cs for k in range(1, 6) for cs in itertools.product(range(2, 6), repeat=k)]
out["hkm sweep (1364 lists)"] = best(lambda: [verify_hkm_strong(cs) for cs in lists])
out["hkm sweep [9]*7"] = best(lambda: verify_hkm_strong([9] * 7))

mk = fixtures.build("cable")
out["cone cable -15/2"] = best(lambda: cone_homology(mk, SurgerySlope(-15, 2)))
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["HFCONE_DISABLE_NUMBA"] = "1" if disable else "0"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    t0 = time.perf_counter()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'case':28s} {fast['backend']:>10s} {slow['backend']:>10s} {'ratio':>8s}")
    for key in fast:
        if key == "backend":
            continue
        a, b = fast[key], slow[key]
        print(f"{key:28s} {a * 1e3:9.2f}ms {b * 1e3:9.2f}ms {b / a:8.1f}x")
    print(f"total wall time {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
