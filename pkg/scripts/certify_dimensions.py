#!/usr/bin/env python3
"""Sweep the Jacobian-rank certification over small dimensions and print a table.

Covers rank-k strata of pure states, local-unitary orbits with distinct
Schmidt coefficients and rank-r density strata. Exits nonzero if any
certificate fails.
"""

import argparse
import sys
import warnings

import numpy as np

from schmidt_strata.errors import DegenerateCoefficients
from schmidt_strata.geometry import (
    certify_density_stratum_dimension,
    certify_orbit_dimension,
    certify_stratum_dimension,
)
from schmidt_strata.orbits import OrbitSpec


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--max-dim", type=int, default=4, help="largest n and m to sweep")
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--mode", choices=("chart", "redundant"), default="chart")
    parser.add_argument("--fd-step", type=float, default=1e-5)
    return parser.parse_args(argv)


def rows(args):
    rng = np.random.default_rng(args.seed)
    dims = range(1, args.max_dim + 1)
    for n in dims:
        for m in range(n, args.max_dim + 1):
            for k in range(1, n + 1):
                seed = int(rng.integers(2**31))
                yield "stratum", (n, m, k), certify_stratum_dimension(
                    n, m, k, seed=seed, fd_step=args.fd_step, mode=args.mode
                )
                mu = np.sort(rng.uniform(0.1, 1.0, size=k))[::-1]
                spec = OrbitSpec.from_coefficients(n, m, mu)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", DegenerateCoefficients)
                    cert = certify_orbit_dimension(spec, seed=seed, fd_step=args.fd_step)
                yield "orbit", (n, m, k), cert
    for n in dims:
        for r in range(1, n + 1):
            seed = int(rng.integers(2**31))
            yield "density", (n, r), certify_density_stratum_dimension(n, r, seed=seed, fd_step=args.fd_step)


def main(argv=None):
    args = parse_args(argv)
    print(f"{'kind':8} {'dims':10} {'claimed':>7} {'measured':>8} {'gap':>9}  verdict")
    failed = 0
    for kind, dims, cert in rows(args):
        verdict = {True: "pass", False: "FAIL", None: "n/a"}[cert.passed]
        failed += cert.passed is False
        gap = "inf" if not np.isfinite(cert.gap_ratio) else f"{cert.gap_ratio:.1e}"
        label = ",".join(map(str, dims))
        print(f"{kind:8} {label:10} {cert.claimed:7d} {cert.measured:8d} {gap:>9}  {verdict}")
    print(f"{failed} failed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
