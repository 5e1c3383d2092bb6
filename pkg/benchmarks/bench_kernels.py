"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from eitengine import _pykernels, derive_rates, reference_params, populations

try:
    from eitengine import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    p = reference_params()
    r = derive_rates(p)
    st = populations(r, p.drive, p.system)
    args = (r.gamma21, r.gamma31, r.gamma32, p.system.gamma32, r.r23, p.drive.omega_c)
    delta = np.linspace(-10, 10, 20001) * r.gamma31
    rng = np.random.default_rng(0)
    alpha = rng.uniform(0.1, 30.0, 400)
    source = rng.uniform(0.1, 10.0, 400)
    z = np.linspace(0.0, 1.0, 51)
    return {
        "cross_sections (20001 detunings)": lambda k: k.cross_sections(delta, *args),
        "spectrum (20001 detunings)": lambda k: k.spectrum(delta, *args, st.lam),
        "integrate_linear (400 channels x 51 z)": lambda k: k.integrate_linear(alpha, source, z),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'workload':42s} " + " ".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, fn in workloads().items():
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        cells = " ".join(f"{t * 1e3:10.2f}ms" for t in times)
        speed = f"{times[0] / times[1]:10.1f}x" if len(times) > 1 else ""
        print(f"{label:42s} {cells} {speed}")


if __name__ == "__main__":
    main()
