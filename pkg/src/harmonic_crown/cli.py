"""Command-line front end.

    harmonic-crown verify [--q Q] [--mult M] [--seed S] [--tol-NAME X] [--config FILE] [--strict]
    harmonic-crown mesh   --resolution N [--sheets upper|both] --out FILE.{csv,obj}
    harmonic-crown scan   --nu A --nz B --nt C [--scale S] --out FILE.csv
    harmonic-crown probe  --v |V| --z |Z| --t T [--c C] [--s-max S] [--samples K] [--out FILE.csv]

Exit codes: 0 success, 1 property failure, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import crown
from .analysis import boundary_probe, ellipticity_margin, mixed_point, write_probe_csv
from .config import DEFAULT_TOLERANCES, ConfigError, RunConfig, load_config
from .solvable import SolvGroup

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
SCAN_HEADER = ("absV", "absZ", "t", "margin", "member")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--q", type=int, help="dimension of the center z (>= 1)")
    p.add_argument("--mult", type=int, dest="multiplicity", help="Clifford module multiplicity (>= 1)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path")
    for name in DEFAULT_TOLERANCES:
        p.add_argument(f"--tol-{name}", type=float, dest=f"tol_{name}", metavar="X")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harmonic-crown", description="Crown domains of harmonic NA groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the invariant suites")
    _common(p)
    p.add_argument("--strict", action="store_true", help="let informational checks gate the exit code")

    p = sub.add_parser("mesh", help="export the boundary surface of the parameter domain")
    _common(p)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--sheets", choices=("upper", "both"), default="upper")

    p = sub.add_parser("scan", help="ellipticity margin and crown membership on a grid")
    _common(p)
    p.add_argument("--nu", type=int, default=8)
    p.add_argument("--nz", type=int, default=8)
    p.add_argument("--nt", type=int, default=8)
    p.add_argument("--scale", type=float, default=0.9)

    p = sub.add_parser("probe", help="follow a ray toward the crown boundary")
    _common(p)
    p.add_argument("--v", type=float, required=True, help="|V| of the ray direction")
    p.add_argument("--z", type=float, required=True, help="|Z| of the ray direction")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--c", type=complex, default=1.0, help="spectral parameter c, e.g. 1 or 0.5+0.7j")
    p.add_argument("--s-max", type=float, default=1.05)
    p.add_argument("--samples", type=int, default=43)
    return parser


def resolve_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    tols = {name: getattr(args, f"tol_{name}") for name in DEFAULT_TOLERANCES if getattr(args, f"tol_{name}") is not None}
    cfg = cfg.with_overrides(q=args.q, multiplicity=args.multiplicity, seed=args.seed, out=args.out, tolerances=tols)
    return cfg.validate()


def cmd_verify(cfg: RunConfig, strict: bool = False, stream=None) -> int:
    stream = stream or sys.stdout
    from .verify import run_all

    results, ok = run_all(cfg, strict=strict)
    print(f"# verify q={cfg.q} multiplicity={cfg.multiplicity} seed={cfg.seed}", file=stream)
    for suite, r in results:
        print(f"[{suite}] {r.line()}", file=stream)
    print("OK" if ok else "FAILED", file=stream)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mesh(cfg: RunConfig, resolution: int, path, sheets: str = "upper") -> int:
    if resolution < 2:
        raise ConfigError("resolution must be >= 2")
    if path is None:
        raise ConfigError("mesh needs --out")
    mesh = crown.boundary_mesh(resolution, sheets)
    try:
        crown.write_mesh(mesh, path)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return EXIT_OK


def scan_rows(cfg: RunConfig, n_u: int, n_z: int, n_t: int, scale: float):
    """(|V|, |Z|, t, margin, member) per grid point of ``crown.star_grid``."""
    g = SolvGroup.build(cfg.q, cfg.multiplicity)
    ev, ez = np.eye(g.p)[0], np.eye(g.q)[0]
    for v, z, t in crown.star_grid(n_u, n_z, n_t, scale):
        pt = mixed_point(g, v * ev, z * ez, t)
        yield v, z, t, ellipticity_margin(g, pt, seed=cfg.seed), bool(crown.crown_contains(g, pt))


def cmd_scan(cfg: RunConfig, n_u: int, n_z: int, n_t: int, scale: float, path) -> int:
    if min(n_u, n_z, n_t) < 0 or not scale > 0:
        raise ConfigError("grid counts must be >= 0 and scale > 0")
    if path is None:
        raise ConfigError("scan needs --out")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SCAN_HEADER)
        for v, z, t, m, member in scan_rows(cfg, n_u, n_z, n_t, scale):
            w.writerow([repr(float(v)), repr(float(z)), repr(float(t)), repr(float(m)), int(member)])
    return EXIT_OK


def cmd_probe(cfg: RunConfig, v: float, z: float, t: float, c: complex, s_max: float, samples: int, path,
              stream=None) -> int:
    stream = stream or sys.stdout
    if samples < 2 or not s_max > 0:
        raise ConfigError("probe needs --samples >= 2 and --s-max > 0")
    g = SolvGroup.build(cfg.q, cfg.multiplicity)
    Yv, Yz = v * np.eye(g.p)[0], z * np.eye(g.q)[0]
    report = boundary_probe(g, Yv, Yz, t, c=c, s_max=s_max, n_samples=samples)
    print(f"membership_flip={report.membership_flip!r}", file=stream)
    print(f"degenerate_at={report.degenerate_at!r}", file=stream)
    if (g.p, g.q) == (2, 1):
        print(f"ball_exit={report.ball_exit!r}", file=stream)
    if path is not None:
        write_probe_csv(report, path)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        if args.command == "verify":
            return cmd_verify(cfg, strict=args.strict)
        if args.command == "mesh":
            return cmd_mesh(cfg, args.resolution, cfg.out, args.sheets)
        if args.command == "scan":
            return cmd_scan(cfg, args.nu, args.nz, args.nt, args.scale, cfg.out)
        if args.command == "probe":
            return cmd_probe(cfg, args.v, args.z, args.t, args.c, args.s_max, args.samples, cfg.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
