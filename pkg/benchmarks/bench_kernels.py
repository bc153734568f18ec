"""Time the compiled and numpy residual kernels on one vortex step.

    python benchmarks/bench_kernels.py [--n 40] [--repeat 20]
"""

import argparse
import timeit

from relaxeuler import SchemeConfig, Simulation, get_case
from relaxeuler import _backend


def make(backend, n):
    prob = get_case("gresho-vortex", M=0.1, n=n)
    cfg = SchemeConfig(M=prob.M, gamma=prob.gamma, rho_bar=prob.rho_bar, backend=backend)
    return Simulation(prob, cfg)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    times = {}
    for name in ("cython", "python"):
        if name not in _backend.available():
            print(f"{name:8s} unavailable")
            continue
        sim = make(name, args.n)
        sim.step()  # warm up
        t = min(timeit.repeat(sim.step, number=1, repeat=args.repeat))
        times[name] = t
        faces = 2 * args.n * (args.n + 1) * 3
        print(f"{name:8s} {1e3 * t:9.3f} ms/step   {1e9 * t / faces:8.1f} ns/face-solve")
    if len(times) == 2:
        print(f"speedup  {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
