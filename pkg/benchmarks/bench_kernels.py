#!/usr/bin/env python3
"""Compare the numba loop kernels against the vectorised numpy kernels.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat 5]

The first jit call includes compilation (or cache load) and is excluded;
both variants are checked for agreement before timing.
"""
import argparse
import math
import time

import numpy as np

from cavsim import kernels
from cavsim._jit import HAVE_NUMBA, USE_JIT
from cavsim.states import coherent_coefficients


def _cases():
    field = coherent_coefficients(math.sqrt(10.0), 100)
    w = field.weights
    c = np.ascontiguousarray(field.coefficients)
    t = np.linspace(0.0, 50.0, 1000)
    small = np.ascontiguousarray(coherent_coefficients(1.0, 40).coefficients)
    return {
        "inversion_series": (w, t),
        "dispersive_coherence": (w, t),
        "resonant_atom_reduced": (1.0 + 0j, 0j, c, t),
        "two_cavity_amplitudes": (1.0 + 0j, 0j, small, small, 0.7, 0.5),
    }


def _best(fn, args, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba not installed; the jit column runs uncompiled loops")
    elif not USE_JIT:
        print("CAVSIM_DISABLE_JIT is set; the jit column still compiles on demand")
    print(f"{'kernel':24s} {'jit [ms]':>10s} {'numpy [ms]':>11s} {'speedup':>8s}")
    for name, case in _cases().items():
        jit_fn = kernels.IMPLEMENTATIONS["jit"][name]
        np_fn = kernels.IMPLEMENTATIONS["numpy"][name]
        ref, got = np_fn(*case), jit_fn(*case)  # warm-up / compile
        if not np.allclose(ref, got, atol=1e-12, rtol=0):
            raise SystemExit(f"{name}: jit and numpy kernels disagree")
        tj, tn = _best(jit_fn, case, args.repeat), _best(np_fn, case, args.repeat)
        print(f"{name:24s} {tj * 1e3:10.3f} {tn * 1e3:11.3f} {tn / tj:8.2f}x")


if __name__ == "__main__":
    main()
