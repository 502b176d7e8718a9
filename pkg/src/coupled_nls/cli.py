"""Command-line entry point: ``coupled-nls <command> [flags]``.

Every flag can also come from a JSON file given with ``--config`` (keys are
the flag names with dashes replaced by underscores); flags on the command
line win. Results are JSON on ``--out`` or stdout with floats printed to 17
significant digits. Exit status: 0 success, 1 numerical failure, 2 invalid
input or violated assumptions.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coupled import coupled_shoot, ground_state_descent
from .errors import InvalidArgument, SolverError
from .gn import DEFAULT_SEED, k_scalar, k_vector, verify_inequality
from .omega import default_grid, default_r_max, omega_solve
from .params import ScalarParams, StandardParams, SystemParams
from .radial import (
    make_grid,
    read_profile_csv,
    schwarz_rearrange,
    write_profile_csv,
)
from .reduction import check_assumptions, closed_form_amplitudes, reduce_to_standard

EXIT_OK, EXIT_NUMERICAL, EXIT_INVALID = 0, 1, 2

# dest -> default; None means "required for commands that use it"
DEFAULTS = {
    "n": 1,
    "p": 1.0,
    "mu": None,
    "beta": None,
    "mu1": None,
    "mu2": None,
    "beta1": None,
    "beta2": None,
    "rmax": None,
    "grid_points": None,
    "tol": None,
    "seed": DEFAULT_SEED,
    "samples": 1000,
    "method": "descent",
    "out": None,
    "csv": None,
    "input": None,
    "no_timestamp": False,
}


# -- output -------------------------------------------------------------------

def _num(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    return json.dumps(str(obj))


def _emit(cfg: dict, command: str, payload: dict) -> None:
    doc = {"command": command, "version": __version__}
    doc.update(payload)
    if not cfg["no_timestamp"]:
        doc["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    text = dumps(doc) + "\n"
    if cfg["out"]:
        Path(cfg["out"]).write_text(text)
    else:
        sys.stdout.write(text)


# -- config ---------------------------------------------------------------------

def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidArgument(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidArgument("config must be a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise InvalidArgument(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def resolve(args: argparse.Namespace) -> dict:
    """Flags over config file over defaults."""
    file_cfg = _load_config(args.config)
    cfg = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        if key == "no_timestamp":
            flag = flag or None
        cfg[key] = flag if flag is not None else file_cfg.get(key, default)
    return cfg


def _need(cfg: dict, *keys: str) -> None:
    missing = [k for k in keys if cfg[k] is None]
    if missing:
        raise InvalidArgument("missing " + ", ".join("--" + k.replace("_", "-") for k in missing))


def _tol(cfg: dict, default: float) -> float:
    return default if cfg["tol"] is None else float(cfg["tol"])


def _grid(cfg: dict, n: int, p: float):
    if cfg["grid_points"] is None:
        return default_grid(n, p, r_max=cfg["rmax"])
    r_max = default_r_max(p) if cfg["rmax"] is None else float(cfg["rmax"])
    return make_grid(n, r_max, int(cfg["grid_points"]))


def _system(cfg: dict) -> SystemParams:
    _need(cfg, "mu1", "mu2", "beta1", "beta2")
    return SystemParams(int(cfg["n"]), float(cfg["p"]), float(cfg["mu1"]), float(cfg["mu2"]),
                        float(cfg["beta1"]), float(cfg["beta2"]))


def _standard(cfg: dict) -> StandardParams:
    _need(cfg, "mu", "beta")
    return StandardParams(int(cfg["n"]), float(cfg["p"]), float(cfg["mu"]), float(cfg["beta"]))


def _sys_dict(sp: SystemParams) -> dict:
    return {"n": sp.n, "p": sp.p, "mu1": sp.mu1, "mu2": sp.mu2, "beta1": sp.beta1, "beta2": sp.beta2}


# -- commands -------------------------------------------------------------------

def cmd_omega(cfg: dict) -> int:
    sp = ScalarParams(int(cfg["n"]), float(cfg["p"]))
    grid = _grid(cfg, sp.n, sp.p)
    res = omega_solve(sp, grid, tol=_tol(cfg, 1e-8))
    if cfg["csv"]:
        write_profile_csv(cfg["csv"], res.omega)
    _emit(cfg, "omega", {"params": {"n": sp.n, "p": sp.p}, **res.to_dict()})
    return EXIT_OK


def cmd_ground(cfg: dict) -> int:
    sp = _system(cfg)
    diag = check_assumptions(sp)
    if not diag.passes:
        _emit(cfg, "ground", {"params": _sys_dict(sp), "diagnostics": diag.to_dict()})
        return EXIT_INVALID
    grid = _grid(cfg, sp.n, sp.p)
    tol = _tol(cfg, 1e-6)
    if cfg["method"] == "descent":
        res = ground_state_descent(sp, grid, tol=tol, seed=int(cfg["seed"]))
    elif cfg["method"] == "shoot":
        res = coupled_shoot(sp, grid, tol=tol)
    else:
        raise InvalidArgument(f"unknown method {cfg['method']!r} (descent or shoot)")
    if cfg["csv"]:
        stem = Path(cfg["csv"])
        write_profile_csv(stem.with_name(stem.stem + "_u1.csv"), res.u1)
        write_profile_csv(stem.with_name(stem.stem + "_u2.csv"), res.u2)
    _emit(cfg, "ground", {"params": _sys_dict(sp), "seed": int(cfg["seed"]), **res.to_dict()})
    return EXIT_OK


def cmd_constant(cfg: dict) -> int:
    n, p = int(cfg["n"]), float(cfg["p"])
    grid = _grid(cfg, n, p)
    omega = omega_solve(ScalarParams(n, p), grid).omega
    out = {"params": {"n": n, "p": p}, "k_scalar": k_scalar(n, p, omega)}
    if cfg["mu"] is not None or cfg["beta"] is not None:
        sp = _standard(cfg)
        kv = k_vector(n, p, sp.mu, sp.beta, omega)
        out["params"].update(mu=sp.mu, beta=sp.beta)
        out.update(k_vector=kv, alpha=1 / kv)
    out["grid"] = grid.to_dict()
    _emit(cfg, "constant", out)
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    sp = _standard(cfg)
    grid = _grid(cfg, sp.n, sp.p)
    rep = verify_inequality(sp, grid, samples=int(cfg["samples"]), seed=int(cfg["seed"]),
                            tol_rel=_tol(cfg, 1e-3), quotient_csv=cfg["csv"])
    _emit(cfg, "verify", {"params": {"n": sp.n, "p": sp.p, "mu": sp.mu, "beta": sp.beta},
                          **rep.to_dict(), "grid": grid.to_dict()})
    return EXIT_OK if rep.ok else EXIT_NUMERICAL


def cmd_reduce(cfg: dict) -> int:
    sp = _system(cfg)
    diag = check_assumptions(sp)
    if not diag.passes:
        _emit(cfg, "reduce", {"params": _sys_dict(sp), "diagnostics": diag.to_dict()})
        return EXIT_INVALID
    red = reduce_to_standard(sp)
    _emit(cfg, "reduce", {"params": _sys_dict(sp), **red.to_dict(), "c": list(closed_form_amplitudes(sp)),
                          "diagnostics": diag.to_dict()})
    return EXIT_OK


def cmd_rearrange(cfg: dict) -> int:
    _need(cfg, "input")
    r, v = read_profile_csv(cfg["input"])
    if r.size >= 2 and r[0] < 0:
        # samples of a function on the line, centred at r = 0
        out = schwarz_rearrange(v, coords=r)
    else:
        d = np.diff(r)
        if r.size < 3 or r[0] != 0 or not np.allclose(d, d[0], rtol=1e-9, atol=0.0):
            raise InvalidArgument("radial input needs nodes 0 = r_0 < r_1 < ... on a uniform grid")
        out = np.sort(v)[::-1]
        if np.any(v < 0):
            raise InvalidArgument("rearrangement needs nonnegative samples")
    lines = ["r,value"] + [f"{a:.17g},{b:.17g}" for a, b in zip(r, out)]
    text = "\n".join(lines) + "\n"
    if cfg["out"]:
        Path(cfg["out"]).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(cfg: dict) -> int:
    sp = _system(cfg)
    diag = check_assumptions(sp)
    _emit(cfg, "check", {"params": _sys_dict(sp), "diagnostics": diag.to_dict()})
    return EXIT_OK if diag.passes else EXIT_INVALID


COMMANDS = {
    "omega": cmd_omega,
    "ground": cmd_ground,
    "constant": cmd_constant,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "rearrange": cmd_rearrange,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=float)
    for name in ("mu", "mu1", "mu2", "beta", "beta1", "beta2"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--rmax", type=float)
    common.add_argument("--grid-points", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--method", choices=("descent", "shoot"))
    common.add_argument("--out", help="write JSON (or CSV for rearrange) here instead of stdout")
    common.add_argument("--csv", help="profile / quotient CSV output path")
    common.add_argument("--input", help="input profile CSV (rearrange)")
    common.add_argument("--config", help="JSON file supplying any of the flags")
    common.add_argument("--no-timestamp", action="store_true", default=None)

    parser = argparse.ArgumentParser(prog="coupled-nls", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except InvalidArgument as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SolverError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
