"""Command-line front end: kernel evaluation, spectrum tools, verification sweeps.

Subcommands
    kernel    evaluate heat / schrodinger / halfwave kernels (series, closed,
              spectral, or both) and append CSV rows
    spectrum  eigenvalue table, expansion of sampled data, multiplier evolution
    verify    run certification sweeps, write SweepReport JSON + sample CSV

Configuration is a flat key = value text file (see README); all angles are
radians.  Exit codes: 0 ok, 1 failed sweep, 2 config/usage error,
3 singular time, 4 nonconvergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels as _kernels
from . import verify as _verify
from .errors import ConfigError, MagconeError, NonconvergenceError, SingularTimeError
from .geometry import ConeConfig, make_point
from .kernels import TruncationSpec
from .spectrum import (
    ModeWindow,
    QuadratureSpec,
    SpectralField,
    eigenvalue_table,
    expand,
    fractional_flow_multiplier,
    heat_multiplier,
    load_field,
    log_norm_sq,
    save_field,
    schrodinger_multiplier,
    spectral_apply,
)
from .lpbesov import make_cutoff

EXIT_OK = 0
EXIT_FAILED_SWEEP = 1
EXIT_CONFIG = 2
EXIT_SINGULAR = 3
EXIT_NONCONVERGENCE = 4

_DEFAULTS = {
    "sigma": 1.0,
    "b0": 1.0,
    "alpha": 0.25,
    "k_max": 40,
    "quad_nodes": 16,
    "s_max": 30.0,
    "window_k": 24,
    "window_m": 24,
    "n_radial": 80,
    "n_theta": 256,
    "n_time": 5,
    "n_radius": 7,
    "n_angle": 12,
    "seed": 20240901,
}


@dataclass(frozen=True)
class RunConfig:
    """Parsed run configuration shared by all subcommands."""

    cone: ConeConfig
    trunc: TruncationSpec
    window: ModeWindow
    quad: QuadratureSpec
    grids: _verify.SweepGrids
    seed: int


def parse_config_file(path: str | None) -> dict:
    values = dict(_DEFAULTS)
    if path is None:
        return values
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in values:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = type(_DEFAULTS[key])(float(val.strip()))
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {val.strip()!r}") from exc
    return values


def build_run_config(args) -> RunConfig:
    values = parse_config_file(args.config)
    if getattr(args, "seed", None) is not None:
        values["seed"] = args.seed
    cone = ConeConfig(values["sigma"], values["b0"], values["alpha"])
    return RunConfig(
        cone=cone,
        trunc=TruncationSpec(int(values["k_max"]), int(values["quad_nodes"]), values["s_max"]),
        window=ModeWindow(int(values["window_k"]), int(values["window_m"])),
        quad=QuadratureSpec(int(values["n_radial"]), int(values["n_theta"])),
        grids=_verify.SweepGrids(int(values["n_time"]), int(values["n_radius"]), int(values["n_angle"])),
        seed=int(values["seed"]),
    )


def _parse_point(cfg: ConeConfig, text: str):
    try:
        r_s, th_s = text.split(",")
        return make_point(cfg, float(r_s), float(th_s))
    except ValueError as exc:
        raise ConfigError(f"point must be 'r,theta', got {text!r}") from exc


def _out_path(args, default_name: str) -> Path:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir / default_name


_KERNEL_CSV_HEADER = "t,r1,th1,r2,th2,re,im,largest_term,k_max_used"


def cmd_kernel(args) -> int:
    rc = build_run_config(args)
    cfg = rc.cone
    p = _parse_point(cfg, args.p)
    q = _parse_point(cfg, args.q)

    def one(repr_name: str):
        if args.kind == "heat":
            fn = {"series": _kernels.heat_kernel_series, "closed": _kernels.heat_kernel_closed}[repr_name]
            kv = fn(args.t, p, q, cfg, rc.trunc)
            return kv.value, kv.largest_term
        if args.kind == "schrodinger":
            fn = {"series": _kernels.schrodinger_kernel_series,
                  "closed": _kernels.schrodinger_kernel_closed}[repr_name]
            kv = fn(args.t, p, q, cfg, rc.trunc)
            return kv.value, kv.largest_term
        # halfwave is only available spectrally; grow the window to the shell
        lam_hi = 4.0 ** (args.j + 1)
        window = ModeWindow(
            max(rc.window.k_max, int(lam_hi / cfg.b0 * cfg.sigma / 2) + 8),
            max(rc.window.m_max, int((lam_hi / cfg.b0 - 1) / 2) + 1),
        )
        val = _kernels.halfwave_kernel_truncated(args.j, args.t, p, q, cfg, window)
        return val, abs(val)

    reprs = ["series", "closed"] if args.repr == "both" else [args.repr]
    if args.kind == "halfwave":
        reprs = ["spectral"]
    if args.kind != "halfwave" and args.repr == "spectral":
        mult = heat_multiplier(args.t) if args.kind == "heat" else schrodinger_multiplier(args.t)
        val = _kernels.spectral_kernel(mult, p, q, cfg, rc.window)
        results = {"spectral": (val, abs(val))}
    else:
        results = {name: one(name) for name in reprs}

    rows = []
    for name, (val, largest) in results.items():
        rows.append((name, val, largest))
    csv_path = _out_path(args, "kernel.csv")
    new_file = not csv_path.exists()
    with csv_path.open("a", encoding="utf-8") as fh:
        if new_file:
            fh.write(_KERNEL_CSV_HEADER + "\n")
        for name, val, largest in rows:
            fh.write(f"{args.t:.17g},{p.r:.17g},{p.theta:.17g},{q.r:.17g},{q.theta:.17g},"
                     f"{val.real:.17g},{val.imag:.17g},{largest:.17g},{rc.trunc.k_max}\n")

    payload = {
        "kind": args.kind,
        "t": args.t,
        "p": [p.r, p.theta],
        "q": [q.r, q.theta],
        "values": {name: {"re": val.real, "im": val.imag, "largest_term": largest}
                   for name, (val, largest) in results.items()},
    }
    if len(results) == 2:
        (v1, _), (v2, _) = results["series"], results["closed"]
        payload["relative_difference"] = abs(v1 - v2) / max(abs(v1), 1e-300)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for name, (val, largest) in results.items():
            print(f"{args.kind} {name}: {val.real:+.12e} {val.imag:+.12e}i   "
                  f"largest_term {largest:.3e}")
        if "relative_difference" in payload:
            print(f"series/closed relative difference: {payload['relative_difference']:.3e}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    rc = build_run_config(args)
    cfg = rc.cone
    if args.action == "table":
        lam = eigenvalue_table(cfg, rc.window)
        lines = ["k,m,lambda,norm_sq"]
        for ik, k in enumerate(rc.window.k_values):
            nsq = np.exp(log_norm_sq(cfg, int(k), rc.window.m_values))
            for im, m in enumerate(rc.window.m_values):
                lines.append(f"{int(k)},{int(m)},{lam[ik, im]:.17g},{nsq[im]:.17g}")
        out = _out_path(args, "spectrum_table.csv")
        out.write_text("\n".join(lines) + "\n", encoding="utf-8")
        if args.json:
            print(json.dumps({"written": str(out), "rows": len(lines) - 1}, sort_keys=True))
        else:
            print(f"wrote {out} ({len(lines) - 1} rows)")
        return EXIT_OK

    if args.action == "expand":
        if args.input is None:
            raise ConfigError("spectrum expand needs --input CSV of samples r,theta,re,im")
        samples = _load_samples(args.input)
        field = _expand_samples(samples, rc)
        out = _out_path(args, "field.csv")
        save_field(field, cfg, rc.quad, out)
        if args.json:
            print(json.dumps({"written": str(out)}, sort_keys=True))
        else:
            print(f"wrote {out}")
        return EXIT_OK

    # evolve
    if args.input is None:
        raise ConfigError("spectrum evolve needs --input field CSV")
    field = load_field(args.input)
    mult = _named_multiplier(args)
    evolved = spectral_apply(mult, field, cfg)
    out = _out_path(args, "field_evolved.csv")
    save_field(evolved, cfg, rc.quad, out)
    if args.json:
        print(json.dumps({"written": str(out)}, sort_keys=True))
    else:
        print(f"wrote {out}")
    return EXIT_OK


def _named_multiplier(args):
    name = args.mult
    if name == "heat":
        return heat_multiplier(args.t)
    if name == "schrodinger":
        return schrodinger_multiplier(args.t)
    if name == "halfwave":
        cutoff = make_cutoff()
        j = args.j
        t = args.t
        return lambda lam: cutoff(np.sqrt(lam) / 2.0 ** j) * np.exp(1j * t * np.sqrt(lam))
    if name == "fractional":
        return fractional_flow_multiplier(args.nu, args.t)
    raise ConfigError(f"unknown multiplier {name!r}")


def _load_samples(path: str):
    rows = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").strip().splitlines(), 1):
        if lineno == 1 and line.strip() == "r,theta,re,im":
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ConfigError(f"{path}:{lineno}: expected r,theta,re,im")
        try:
            rows.append(tuple(float(x) for x in parts))
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad number") from exc
    if not rows:
        raise ConfigError(f"{path}: empty sample file")
    return np.asarray(rows)


def _expand_samples(samples: np.ndarray, rc: RunConfig) -> SpectralField:
    """Expand scattered samples by nearest-sample lookup on the quadrature grid."""
    pts = samples[:, :2]
    vals = samples[:, 2] + 1j * samples[:, 3]

    def f(r, theta):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        rr, tt = np.broadcast_arrays(r, theta)
        flat_r, flat_t = rr.ravel(), tt.ravel()
        d2 = (flat_r[:, None] - pts[None, :, 0]) ** 2 + (flat_t[:, None] - pts[None, :, 1]) ** 2
        return vals[np.argmin(d2, axis=1)].reshape(rr.shape)

    return expand(f, rc.window, rc.cone, rc.quad)


def cmd_verify(args) -> int:
    rc = build_run_config(args)
    if args.gamma is not None and args.suite in ("weighted", "all"):
        from .geometry import flux_distance

        if args.gamma > flux_distance(rc.cone).kappa + 1e-12:
            print(f"gamma={args.gamma} exceeds the flux distance "
                  f"{flux_distance(rc.cone).kappa:.6g}", file=sys.stderr)
            return EXIT_CONFIG
    reports = _verify.run_suite(args.suite, rc.cone, rc.grids, rc.trunc,
                                seed=rc.seed, halfwave_j=args.j, gamma=args.gamma)
    out_dir = Path(args.out)
    summary = []
    for rep in reports:
        _verify.write_report(rep, out_dir)
        summary.append(rep.json_dict())
        if not args.json:
            status = "pass" if rep.passed else "FAIL"
            print(f"[{status}] {rep.name}: constant={rep.empirical_constant:.6g} "
                  f"ratio={rep.refinement_ratio:.4f} ({rep.runtime_ms} ms)")
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED_SWEEP


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magcone", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--config", default=None, help="flat key = value config file")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--out", default="out", help="output directory for CSV/JSON")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    sub = parser.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", help="evaluate a propagator kernel")
    k.add_argument("kind", choices=["heat", "schrodinger", "halfwave"])
    k.add_argument("--repr", default="series", choices=["series", "closed", "spectral", "both"])
    k.add_argument("--t", type=float, required=True)
    k.add_argument("--p", required=True, help="point as r,theta")
    k.add_argument("--q", required=True, help="point as r,theta")
    k.add_argument("--j", type=int, default=2, help="dyadic level for halfwave")
    k.set_defaults(func=cmd_kernel)

    s = sub.add_parser("spectrum", help="eigenvalue table / expand / evolve")
    s.add_argument("action", choices=["table", "expand", "evolve"])
    s.add_argument("--input", default=None, help="input CSV")
    s.add_argument("--mult", default="heat", choices=["heat", "schrodinger", "halfwave", "fractional"])
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--j", type=int, default=2)
    s.add_argument("--nu", type=float, default=0.5)
    s.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", help="run certification sweeps")
    v.add_argument("suite", help=f"one of {', '.join(_verify.SUITE_NAMES)} or 'all'")
    v.add_argument("--gamma", type=float, default=None, help="weight exponent for 'weighted'")
    v.add_argument("--j", type=int, default=2, help="dyadic level for 'halfwave'")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SingularTimeError as exc:
        print(f"singular time: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except NonconvergenceError as exc:
        print(f"nonconvergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ConfigError, MagconeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
