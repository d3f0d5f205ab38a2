"""Command-line tools for Schmidt-rank strata of bipartite pure states.

Every subcommand builds a report envelope ``{command, inputs, result,
warnings, version}``; ``--json`` prints it as JSON, otherwise a short text
rendering of the same data is printed.

Exit codes: 0 success / pass, 1 usage or input error, 2 certification
failure or ill-conditioning.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings as pywarnings

import numpy as np

from . import __version__
from .charts import StratumPoint
from .embedding import embed, segre_vectors, to_stratum_point
from .errors import ChartError, DegenerateCoefficients, SchmidtStrataError
from .fileio import encode_complex, load_expression, load_state, save_state, state_to_dict
from .geometry import (
    FD_STEP,
    ILL_GAP,
    certify_density_stratum_dimension,
    certify_orbit_dimension,
    certify_stratum_dimension,
)
from .lemma import CERTIFY_TOL, recover_change_of_basis
from .orbits import MU_TOL, OrbitSpec
from .states import RANK_TOL, sample_state, schmidt_decompose

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2
INVERT_FIDELITY_TOL = 1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _envelope(command, inputs, result=None, warnings=(), error=None):
    env = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "warnings": list(warnings),
        "version": __version__,
    }
    if error is not None:
        env["error"] = error
    return env


def stratum_point_to_dict(p: StratumPoint) -> dict:
    out = {
        "n": p.n,
        "m": p.m,
        "k": p.k,
        "left": {"pivot_cols": list(p.left.pivot_cols), "coeffs": encode_complex(p.left.coeffs)},
        "core": {"B": encode_complex(p.core.B), "det_modulus": p.core.det_modulus},
        "right": {"pivot_cols": list(p.right.pivot_cols), "coeffs": encode_complex(p.right.coeffs)},
    }
    try:
        coords = p.principal_coordinates()
    except ChartError:
        out["principal_coordinates"] = None
    else:
        out["principal_coordinates"] = {key: encode_complex(val) for key, val in coords.items()}
    return out


def certificate_to_dict(cert) -> dict:
    return {
        "claimed": cert.claimed,
        "measured": cert.measured,
        "gap_ratio": cert.gap_ratio if np.isfinite(cert.gap_ratio) else None,
        "passed": cert.passed,
        "singular_values": [float(s) for s in cert.singular_values],
    }


def cmd_schmidt(args):
    inputs = {"state_file": args.state_file, "tol": args.tol}
    state, warns = load_state(args.state_file)
    dec = schmidt_decompose(state, args.tol)
    result = {
        "n": state.n,
        "m": state.m,
        "rank": dec.rank,
        "coefficients": [float(c) for c in dec.coefficients],
        "degenerate": dec.degenerate,
        "left_frame": encode_complex(dec.left_frame),
        "right_frame": encode_complex(dec.right_frame),
    }
    if dec.degenerate:
        warns.append("degenerate Schmidt coefficients: frames are not unique")
    return _envelope("schmidt", inputs, result, warns), EXIT_OK


def cmd_invert_embed(args):
    inputs = {"state_file": args.state_file, "sample": args.sample, "seed": args.seed, "tol": args.tol}
    if (args.state_file is None) == (args.sample is None):
        raise UsageError("give exactly one of STATE_FILE or --sample N M K")
    if args.sample is not None:
        if args.seed is None:
            raise UsageError("--sample requires --seed")
        n, m, k = args.sample
        state, warns = sample_state(n, m, k, args.seed), []
    else:
        state, warns = load_state(args.state_file)
    p = to_stratum_point(state, args.tol)
    fidelity = state.fidelity(embed(p))
    result = {"stratum_point": stratum_point_to_dict(p), "roundtrip_fidelity": fidelity}
    if p.k == 1:
        x, y = segre_vectors(p)
        result["segre"] = {"x": encode_complex(x), "y": encode_complex(y)}
    if args.sample is not None:
        result["state"] = state_to_dict(state)
    code = EXIT_OK if fidelity >= 1 - INVERT_FIDELITY_TOL else EXIT_FAIL
    if code != EXIT_OK:
        warns.append(f"roundtrip fidelity {fidelity!r} below 1 - {INVERT_FIDELITY_TOL:g}")
    return _envelope("invert-embed", inputs, result, warns), code


def cmd_certify(args):
    inputs = {
        "stratum": args.stratum,
        "orbit": args.orbit,
        "density": args.density,
        "mu": args.mu,
        "seed": args.seed,
        "fd_step": args.fd_step,
        "mode": args.mode,
    }
    chosen = [x for x in (args.stratum, args.orbit, args.density) if x is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --stratum, --orbit, --density")
    warns = []
    if args.stratum is not None:
        cert = certify_stratum_dimension(*args.stratum, seed=args.seed, fd_step=args.fd_step, mode=args.mode)
        kind = "stratum"
    elif args.density is not None:
        cert = certify_density_stratum_dimension(*args.density, seed=args.seed, fd_step=args.fd_step)
        kind = "density"
    else:
        n, m, k = args.orbit
        if not args.mu or len(args.mu) != k:
            raise UsageError(f"--orbit with k={k} needs exactly {k} --mu values")
        mu = np.asarray(args.mu, dtype=float)
        if abs(np.sum(mu**2) - 1.0) > MU_TOL:
            warns.append(f"mu renormalized (sum of squares was {float(np.sum(mu**2))!r})")
        spec = OrbitSpec.from_coefficients(n, m, mu)
        with pywarnings.catch_warnings():
            pywarnings.simplefilter("ignore", DegenerateCoefficients)
            cert = certify_orbit_dimension(spec, seed=args.seed, fd_step=args.fd_step)
        kind = "orbit"
    warns.extend(cert.warnings)
    result = {"kind": kind, **certificate_to_dict(cert)}
    if cert.gap_ratio < ILL_GAP or cert.passed is False:
        code = EXIT_FAIL
    else:
        code = EXIT_OK
    return _envelope("certify", inputs, result, warns), code


def cmd_lemma(args):
    inputs = {"expr_file1": args.expr_file1, "expr_file2": args.expr_file2, "tol": args.tol}
    e1 = load_expression(args.expr_file1)
    e2 = load_expression(args.expr_file2)
    cert = recover_change_of_basis(e1, e2, args.tol)
    result = {
        "C": encode_complex(cert.C),
        "det_modulus": cert.det_modulus,
        "residual_z": cert.residual_z,
        "residual_w": cert.residual_w,
        "block_residual": cert.block_residual,
        "certified": cert.certified,
    }
    return _envelope("lemma", inputs, result), EXIT_OK if cert.certified else EXIT_FAIL


def cmd_sample(args):
    inputs = {"n": args.n, "m": args.m, "rank": args.rank, "seed": args.seed, "output": args.output}
    state = sample_state(args.n, args.m, args.rank, args.seed)
    if args.output:
        save_state(state, args.output)
    return _envelope("sample", inputs, state_to_dict(state)), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schmidt-strata", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="print the structured report")
        p.set_defaults(func=func)
        return p

    p = add("schmidt", cmd_schmidt, "Schmidt decomposition of a state file")
    p.add_argument("state_file")
    p.add_argument("--tol", type=float, default=RANK_TOL, help="relative rank tolerance")

    p = add("invert-embed", cmd_invert_embed, "stratum point of a state and embedding roundtrip")
    p.add_argument("state_file", nargs="?")
    p.add_argument("--sample", nargs=3, type=int, metavar=("N", "M", "K"))
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=RANK_TOL)

    p = add("certify", cmd_certify, "Jacobian-rank certification of a dimension formula")
    p.add_argument("--stratum", nargs=3, type=int, metavar=("N", "M", "K"))
    p.add_argument("--orbit", nargs=3, type=int, metavar=("N", "M", "K"))
    p.add_argument("--density", nargs=2, type=int, metavar=("N", "R"))
    p.add_argument("--mu", nargs="+", type=float, action="extend")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--fd-step", type=float, default=FD_STEP)
    p.add_argument("--mode", choices=("chart", "redundant"), default="chart")

    p = add("lemma", cmd_lemma, "change-of-basis matrix between two expression files")
    p.add_argument("expr_file1")
    p.add_argument("expr_file2")
    p.add_argument("--tol", type=float, default=CERTIFY_TOL)

    p = add("sample", cmd_sample, "write a seeded random state file")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--rank", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    return parser


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, list) and len(value) > 8:
        return f"[{len(value)} entries]"
    return json.dumps(value) if isinstance(value, (list, dict)) else str(value)


def render_text(env: dict) -> str:
    lines = [f"{env['command']} (schmidt-strata {env['version']})"]
    if env.get("error"):
        lines.append(f"error: {env['error']['type']}: {env['error']['message']}")
    for key, val in (env.get("result") or {}).items():
        if isinstance(val, dict):
            lines.append(f"  {key}:")
            lines.extend(f"    {k}: {_fmt(v)}" for k, v in val.items())
        else:
            lines.append(f"  {key}: {_fmt(val)}")
    lines.extend(f"warning: {w}" for w in env["warnings"])
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "json", "command")}
    try:
        env, code = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (SchmidtStrataError, ValueError) as exc:
        env = _envelope(args.command, inputs, error={"type": type(exc).__name__, "message": str(exc)})
        code = EXIT_INPUT
    if args.json:
        print(json.dumps(env, indent=2))
    else:
        print(render_text(env))
    return code


if __name__ == "__main__":
    sys.exit(main())
