"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain error (bad code, axis or
fidelity), 3 resource cap exceeded, 4 oracle check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .codes import catalog, catalog_names, is_trivial, resolve_code
from .engine import dense_oracle, distill, iterate
from .errors import BoundMagicError, DomainError, ResourceError
from .scan import curve_to_csv, fidelity_curve, find_threshold, region_scan, region_to_csv
from .states import BlochState, as_axis, surface_fidelity
from .witness import build_witness

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_CHECK = 0, 1, 2, 3, 4
ORACLE_TOL = 1e-10
COMMANDS = ("codes", "distill", "curve", "threshold", "witness", "scan", "oracle-check")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    code_ref: str
    axis: np.ndarray
    f: float
    grid: list
    resolution: int
    tol: float
    rounds: int
    out: str | None
    fmt: str
    seed: int
    trials: int

    @classmethod
    def from_args(cls, args) -> RunConfig:
        axis = as_axis(getattr(args, "axis", "T"))
        f = getattr(args, "f", 0.9)
        if not 0.5 <= f <= 1.0:
            raise DomainError(f"--f must lie in [1/2, 1], got {f}")
        return cls(
            command=args.command,
            code_ref=getattr(args, "code", "five_qubit"),
            axis=axis,
            f=f,
            grid=parse_grid(getattr(args, "grid", None)),
            resolution=getattr(args, "resolution", 33),
            tol=getattr(args, "tol", 1e-10),
            rounds=getattr(args, "rounds", 1),
            out=getattr(args, "out", None),
            fmt=getattr(args, "format", "text"),
            seed=getattr(args, "seed", 0),
            trials=getattr(args, "trials", 50),
        )


def parse_grid(spec: str | None) -> list:
    """``start:stop:num`` (inclusive linspace) or a comma-separated list."""
    if not spec:
        return list(np.linspace(0.5, 1.0, 51))
    try:
        if ":" in spec:
            start, stop, num = spec.split(":")
            return list(np.linspace(float(start), float(stop), int(num)))
        return [float(v) for v in spec.split(",")]
    except ValueError:
        raise DomainError(f"bad grid spec {spec!r}") from None


def _fmt(x) -> str:
    return format(float(x), ".12g")


def _vec(v) -> str:
    return "(" + ", ".join(_fmt(c) for c in v) + ")"


def _outcome_text(o, label="") -> str:
    return "\n".join([
        f"{label}success_prob  {_fmt(o.success_prob)}",
        f"{label}out_bloch     {_vec(o.out_bloch)}",
        f"{label}out_fidelity  {_fmt(o.out_fidelity)}",
        f"{label}verdict       {o.verdict.location} (l1 {_fmt(o.verdict.l1)}, margin {_fmt(o.verdict.margin)})",
    ])


# commands --------------------------------------------------------------------

def cmd_codes(cfg: RunConfig) -> str:
    codes = catalog()
    if cfg.fmt == "json":
        return json.dumps([
            {
                "name": c.name,
                "n": c.n,
                "generators": [str(g) for g in c.generators],
                "logical_x": str(c.logical_x),
                "logical_z": str(c.logical_z),
                "trivial": is_trivial(c),
            }
            for c in codes
        ], indent=2)
    lines = []
    for c in codes:
        tag = " (trivial)" if is_trivial(c) else ""
        lines.append(f"{c.name:<14} n={c.n:<3} {' '.join(str(g) for g in c.generators)}{tag}")
        lines.append(f"{'':<14} X_L={c.logical_x} Z_L={c.logical_z}")
    return "\n".join(lines)


def cmd_distill(cfg: RunConfig) -> str:
    code = resolve_code(cfg.code_ref)
    state = BlochState(cfg.f, cfg.axis)
    if cfg.rounds <= 1:
        outcomes = [distill(code, state)]
    else:
        outcomes = iterate(code, state, cfg.rounds)
    if cfg.fmt == "json":
        payload = [o.to_dict() for o in outcomes]
        return json.dumps(payload[0] if cfg.rounds <= 1 else payload, indent=2)
    if len(outcomes) == 1:
        return _outcome_text(outcomes[0])
    return "\n".join(_outcome_text(o, f"round {i + 1} ") for i, o in enumerate(outcomes))


def cmd_curve(cfg: RunConfig) -> str:
    code = resolve_code(cfg.code_ref)
    points = fidelity_curve(code, cfg.axis, cfg.grid)
    if cfg.fmt == "json":
        return json.dumps([p.__dict__ for p in points], indent=2)
    return curve_to_csv(points).rstrip("\n")


def cmd_threshold(cfg: RunConfig) -> str:
    code = resolve_code(cfg.code_ref)
    value = find_threshold(code, cfg.axis, tol=cfg.tol)
    fs = surface_fidelity(cfg.axis)
    if cfg.fmt == "json":
        return json.dumps({"threshold": value, "f_surface": fs}, indent=2)
    if value is None:
        return f"threshold     none\nf_surface     {_fmt(fs)}"
    return f"threshold     {_fmt(value)}\nf_surface     {_fmt(fs)}\ngap           {_fmt(value - fs)}"


def cmd_witness(cfg: RunConfig) -> str:
    code = resolve_code(cfg.code_ref)
    report = build_witness(code, cfg.axis if np.all(cfg.axis > 0) else as_axis("T"))
    if cfg.fmt == "json":
        return json.dumps(report.to_dict(), indent=2)
    return report.to_text()


def cmd_scan(cfg: RunConfig) -> str:
    codes = [resolve_code(ref) for ref in cfg.code_ref.split(",")]
    samples = region_scan(codes, resolution=cfg.resolution, tol=cfg.tol)
    labels = [c.name or f"code{i}" for i, c in enumerate(codes)]
    if cfg.fmt == "json":
        return json.dumps([
            {
                "axis": list(s.axis),
                "f_surface": s.f_surface,
                "thresholds": s.thresholds,
                "f_combined": s.f_threshold,
                "epsilons": s.epsilons,
                "errors": s.errors,
            }
            for s in samples
        ], indent=2)
    return region_to_csv(samples, labels).rstrip("\n")


def oracle_check(code_ref: str, trials: int, seed: int) -> float:
    """Largest deviation between the engine and the dense oracle on random inputs."""
    code = resolve_code(code_ref)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        f = float(rng.uniform(0.5, 1.0))
        axis = rng.normal(size=3)
        state = BlochState(f, axis)
        a, b = distill(code, state), dense_oracle(code, state)
        dev = max(
            abs(a.success_prob - b.success_prob),
            float(np.max(np.abs(np.subtract(a.out_bloch, b.out_bloch)))),
            abs(a.out_fidelity - b.out_fidelity),
        )
        worst = max(worst, dev)
    return worst


def cmd_oracle_check(cfg: RunConfig) -> tuple[str, int]:
    worst = oracle_check(cfg.code_ref, cfg.trials, cfg.seed)
    ok = worst <= ORACLE_TOL
    if cfg.fmt == "json":
        text = json.dumps({"code": cfg.code_ref, "trials": cfg.trials, "seed": cfg.seed,
                           "max_deviation": worst, "passed": ok}, indent=2)
    else:
        text = f"max_deviation {worst:.3e}\nstatus        {'pass' if ok else 'FAIL'}"
    return text, EXIT_OK if ok else EXIT_CHECK


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boundmagic", description="Exact stabilizer-reduction distillation tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text, description=help_text)
        for flag in flags:
            flag(p)
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=("text", "json", "csv"), default=None,
                       help="output format (default: csv for tables, text otherwise)")
        return p

    def code(p, default="five_qubit"):
        p.add_argument("--code", default=default,
                       help=f"catalog name ({', '.join(catalog_names())}) or code file path")

    def axis(p):
        p.add_argument("--axis", default="T", help="T, H, or an x,y,z triple (normalized)")

    def fid(p):
        p.add_argument("--f", type=float, default=0.9, help="input fidelity in [1/2, 1]")

    def tol(p, default=1e-10):
        p.add_argument("--tol", type=float, default=default, help="bisection tolerance")

    add("codes", "list and validate the catalog")
    add("distill", "one-shot (or iterated) distillation", code, axis, fid,
        lambda p: p.add_argument("--rounds", type=int, default=1, help="iterate with re-twirling"))
    add("curve", "output fidelity curve", code, axis,
        lambda p: p.add_argument("--grid", default="0.5:1:51", help="start:stop:num or comma list"))
    add("threshold", "distillation threshold along an axis", code, axis, tol)
    add("witness", "canonical form and bound-state witness", code, axis)
    add("scan", "positive-octant threshold and epsilon scan",
        lambda p: code(p, "five_qubit,steane"),
        lambda p: p.add_argument("--resolution", type=int, default=33, help="angular grid size"),
        tol)
    add("oracle-check", "compare the engine with the dense-matrix oracle", code,
        lambda p: p.add_argument("--trials", type=int, default=50, help="random (f, axis) pairs"),
        lambda p: p.add_argument("--seed", type=int, default=0, help="random seed"))
    return parser


_DEFAULT_FORMAT = {"curve": "csv", "scan": "csv"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = _DEFAULT_FORMAT.get(args.command, "text")
    elif args.format == "csv" and args.command not in _DEFAULT_FORMAT:
        parser.error(f"--format csv is only available for {', '.join(_DEFAULT_FORMAT)}")
    try:
        cfg = RunConfig.from_args(args)
        status = EXIT_OK
        if cfg.command == "oracle-check":
            text, status = cmd_oracle_check(cfg)
        else:
            handler = {
                "codes": cmd_codes,
                "distill": cmd_distill,
                "curve": cmd_curve,
                "threshold": cmd_threshold,
                "witness": cmd_witness,
                "scan": cmd_scan,
            }[cfg.command]
            text = handler(cfg)
    except ResourceError as exc:
        print(f"boundmagic: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (BoundMagicError, ValueError) as exc:
        print(f"boundmagic: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
