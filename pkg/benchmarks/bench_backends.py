"""Compare the compiled and pure-Python kernels.

Usage::

    python3 benchmarks/bench_backends.py [--repeat 5]

Times the Bessel primitives and gk15 panels directly from both modules,
then reproduces the VG median table end to end under each backend in a subprocess.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from ghbounds import _pykernels

try:
    from ghbounds import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

END_TO_END = ("import time; from ghbounds.conjectures import reproduce_table; "
              "t = time.perf_counter(); r = reproduce_table('table1'); "
              "print(time.perf_counter() - t, r.max_abs_diff)")


def _cases(n=400, seed=1):
    rng = np.random.default_rng(seed)
    nus = rng.uniform(-3.0, 40.0, n)
    xs = 10 ** rng.uniform(-3, 2.5, n)
    return list(zip(nus.tolist(), xs.tolist()))


def _micro(mod, cases, repeat):
    gh = (1.3, 2.0, 0.7, 0.9, 0.0)
    jobs = {
        "log_kve": lambda: [mod.log_kve(nu, x) for nu, x in cases],
        "kratio": lambda: [mod.kratio(nu, x) for nu, x in cases],
        "iratio": lambda: [mod.iratio(abs(nu), x) for nu, x in cases],
        "log_density": lambda: [mod.log_density(0, gh, x - 5.0) for _, x in cases],
        "gk15": lambda: [mod.gk15(0, gh, 0.0, 1.0, 0.0, 1.0 + x) for _, x in cases[:100]],
    }
    return {k: min(timeit.repeat(f, number=1, repeat=repeat)) for k, f in jobs.items()}


def _end_to_end(pure):
    env = dict(os.environ)
    if pure:
        env["GHBOUNDS_PURE_PYTHON"] = "1"
    else:
        env.pop("GHBOUNDS_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return float(out[0]), float(out[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    cases = _cases()
    py = _micro(_pykernels, cases, args.repeat)
    print(f"{'kernel':<12}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    if _ckernels is None:
        for k, v in py.items():
            print(f"{k:<12}{1e3 * v:>14.2f}{'n/a':>14}{'n/a':>10}")
        return 0
    cy = _micro(_ckernels, cases, args.repeat)
    for k in py:
        print(f"{k:<12}{1e3 * py[k]:>14.2f}{1e3 * cy[k]:>14.2f}{py[k] / cy[k]:>10.1f}")
    tp, dp = _end_to_end(True)
    tc, dc = _end_to_end(False)
    print(f"{'table1':<12}{1e3 * tp:>14.1f}{1e3 * tc:>14.1f}{tp / tc:>10.1f}")
    print(f"table1 max|diff| python {dp:.2e}, cython {dc:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
