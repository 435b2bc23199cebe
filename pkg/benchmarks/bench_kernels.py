"""Compare the compiled and NumPy kernel backends.

Times the raw 15-point rule over a batch of cells for every integrand
family, then one full screw residual with each backend swapped in.

    python3 benchmarks/bench_kernels.py [--cells N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from helixpair import _kernels
from helixpair.geometry import HelicoidParams
from helixpair.variational import EnergyWeights, ribbon_residual, screw_residual

PARAMS = {
    "gamma1": [-1.0, 2.0, 1.5],
    "gamma2": [-1.0, 2.0, 1.5],
    "screw": [-1.0, 6.15, 2.0],
    "ribbon": [0.001, 0.002, 37.0],
    "odd_y": [-1.0, 2.0, 1.5],
    "odd_z": [-1.0, 2.0, 1.5],
    "gradient": [-1.0, 1.3, 2.0, 0.7, 0.1, -0.2, 0.97, -0.6, 0.8, 0.0, 1.0],
    "energy": [-1.0, 1.3, 2.0, 0.4, 3.7],
}


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_rule(backends, cells, repeat):
    edges = np.linspace(0.0, 200.0, cells + 1)
    a, b = edges[:-1], edges[1:]
    print(f"15-point rule on {cells} cells (best of {repeat}, ms)")
    print(f"{'family':10s}" + "".join(f"{n:>12s}" for n in backends) + f"{'speedup':>10s}")
    for name, p in PARAMS.items():
        fam, p = _kernels.FAMILIES[name], np.array(p)
        times = [best_of(lambda m=m: m.gk15(fam, p, a, b, False), repeat) for m in backends.values()]
        speed = times[-1] / times[0] if len(times) > 1 else 1.0
        print(f"{name:10s}" + "".join(f"{1e3 * t:12.3f}" for t in times) + f"{speed:10.1f}x")


def bench_residuals(backends, repeat):
    cases = {
        "screw (-1, 6.15, 2)": lambda: screw_residual(HelicoidParams(-1.0, 6.15, 2.0), EnergyWeights(2, 1)),
        "ribbon (1e-3, 2e-3, 37)": lambda: ribbon_residual(HelicoidParams(0.001, 0.002, 37.0), EnergyWeights(1, 1)),
    }
    print(f"\nfull residual (best of {repeat}, ms)")
    original = _kernels.gk15
    try:
        for label, fn in cases.items():
            times = []
            for mod in backends.values():
                _kernels.gk15 = mod.gk15
                times.append(best_of(fn, repeat))
            speed = times[-1] / times[0] if len(times) > 1 else 1.0
            print(f"{label:26s}" + "".join(f"{1e3 * t:12.3f}" for t in times) + f"{speed:10.1f}x")
    finally:
        _kernels.gk15 = original


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cells", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {name: _kernels.load_backend(name) for name in _kernels.available_backends()}
    if "cython" not in backends:
        print("compiled kernels unavailable; timing the NumPy backend only")
    bench_rule(backends, args.cells, args.repeat)
    bench_residuals(backends, args.repeat)


if __name__ == "__main__":
    main()
