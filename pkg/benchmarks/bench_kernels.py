"""Time the compiled kernel backend against the numpy reference.

Two workloads: batched per-configuration no-switch probabilities, and the
four-angle quadrature mean at several node counts.  Each row reports the
best-of-N wall time per backend, the speedup, and the largest absolute
disagreement between the two results.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --batch 500000 --repeats 7
"""

import argparse
import math
import time

import numpy as np
from numpy.polynomial.legendre import leggauss

from qmonty.kernels import available_backends, get_backend

HALF_PI = math.pi / 2.0


def sample_configs(rng, n):
    """Random rotator angles plus valid door coefficient triples."""
    ta1, ta2, tb1, tb2 = rng.uniform(0.0, HALF_PI, size=(4, n))
    phi2 = rng.uniform(0.0, HALF_PI, size=n)
    phi1 = rng.uniform(0.0, phi2)  # phi1 <= phi2 keeps the triple closed
    d1, d2 = np.cos(phi1), np.sin(phi2)
    d3 = np.sqrt(2.0 - d1 * d1 - d2 * d2)
    return ta1, ta2, tb1, tb2, d1, d2, d3


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def max_abs_diff(a, b):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    both_nan = np.isnan(a) & np.isnan(b)
    d = np.abs(a - b)
    d[both_nan] = 0.0
    return float(np.nanmax(d)) if d.size else 0.0


def run(args):
    names = available_backends()
    if "native" not in names:
        print("compiled backend not importable; nothing to compare")
        return 1
    native = get_backend("native")
    reference = get_backend("reference")
    rng = np.random.default_rng(args.seed)
    weights = (0.12, 0.08, 0.05)

    print(f"{'workload':<26} {'size':>8} {'ent':>4} "
          f"{'ref ms':>9} {'native ms':>10} {'speedup':>8} {'max |diff|':>11}")

    cfg = sample_configs(rng, args.batch)
    for entangled in (False, True):
        t_ref, out_ref = best_of(
            lambda: reference.config_probs(*cfg, *weights, entangled), args.repeats)
        t_nat, out_nat = best_of(
            lambda: native.config_probs(*cfg, *weights, entangled), args.repeats)
        print(f"{'config_probs':<26} {args.batch:>8} {str(entangled)[0]:>4} "
              f"{t_ref * 1e3:>9.2f} {t_nat * 1e3:>10.2f} "
              f"{t_ref / t_nat:>8.2f} {max_abs_diff(out_ref, out_nat):>11.2e}")

    door = (math.cos(0.3), math.sin(1.1), math.sqrt(2.0 - math.cos(0.3) ** 2 - math.sin(1.1) ** 2))
    for k in args.nodes:
        x, w = leggauss(k)
        nodes = 0.5 * HALF_PI * (x + 1.0)
        node_w = 0.5 * HALF_PI * w
        for entangled in (False, True):
            t_ref, out_ref = best_of(
                lambda: reference.theta_grid_mean(nodes, node_w, *door, *weights, entangled),
                args.repeats)
            t_nat, out_nat = best_of(
                lambda: native.theta_grid_mean(nodes, node_w, *door, *weights, entangled),
                args.repeats)
            print(f"{'theta_grid_mean':<26} {k:>8} {str(entangled)[0]:>4} "
                  f"{t_ref * 1e3:>9.2f} {t_nat * 1e3:>10.2f} "
                  f"{t_ref / t_nat:>8.2f} {abs(out_ref - out_nat):>11.2e}")
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=200_000,
                    help="configurations per config_probs call")
    ap.add_argument("--nodes", type=int, nargs="+", default=[16, 32, 48],
                    help="quadrature node counts for theta_grid_mean")
    ap.add_argument("--repeats", type=int, default=5, help="best-of repeats")
    ap.add_argument("--seed", type=int, default=2024)
    return run(ap.parse_args(argv))


if __name__ == "__main__":
    raise SystemExit(main())
