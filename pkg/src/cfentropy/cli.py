"""Command-line front end.

    cfentropy entropy-table [--family chan --param 2]
    cfentropy lochs --source ncf:1 --target chan:2 --n 1000 --samples 100
    cfentropy smb --family gauss --n 10000 --samples 50
    cfentropy renyi-check --family ncf --param 5
    cfentropy conjecture --tol 1e-8
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from .cylinders import OrbitTerminatedError
from .entropy import (
    ConvergenceError,
    RenyiBoundViolation,
    UnsupportedFamilyError,
    entropy_closed_form,
    entropy_quadrature,
    entropy_smb,
    renyi_condition_check,
)
from .expansions import ExpansionFamily, parse_family
from .lochs import lochs_estimate
from .sampling import RejectionBudgetExceeded

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_GATE = 0, 1, 2, 3

# parameter grid of the published entropy table
TABLE_GRID = {
    "chan": (2, 3, 5, 10, 50, 100, 200),
    "theta": (1, 3, 5, 10, 50, 100, 1000),
    "ncf": (1, 3, 5, 10, 50, 100, 1000),
    "renyi": (2, 3, 5, 10, 50, 100, 1000),
}
CONJECTURE_GRID = (1, 3, 5, 10, 50, 100, 1000)
LOCHS_PAIRS = (
    ("decimal", "gauss"),
    ("ncf:1", "chan:2"),
    ("ncf:3", "chan:2"),
    ("ncf:3", "renyi:3"),
    ("ncf:5", "renyi:5"),
    ("renyi:2", "chan:2"),
    ("renyi:2", "chan:3"),
)


class ConfigError(ValueError):
    pass


class GateViolation(Exception):
    def __init__(self, rows, message):
        super().__init__(message)
        self.rows = rows


@dataclass
class RunConfig:
    command: str
    families: list[ExpansionFamily] = field(default_factory=list)
    source: ExpansionFamily | None = None
    target: ExpansionFamily | None = None
    params: list[int] = field(default_factory=list)
    n: int | None = None
    samples: int | None = None
    seed: int = 20240611
    tol: float | None = None
    method: str = "quadrature"
    output_format: str = "csv"
    output_path: str | None = None
    workers: int = 1


def sig(v: float) -> float:
    """Round to 10 significant digits."""
    return float(f"{v:.10g}")


def _label(F: ExpansionFamily) -> tuple[str, int | str]:
    return F.kind, (F.param if F.kind not in ("decimal", "gauss") else "")


def _split_params(values) -> list[int]:
    out = []
    for v in values or ():
        for part in str(v).split(","):
            part = part.strip()
            if part:
                try:
                    out.append(int(part))
                except ValueError:
                    raise ConfigError(f"parameter {part!r} is not an integer") from None
    return out


def _family(kind: str, param: int | None) -> ExpansionFamily:
    try:
        if kind in ("decimal", "gauss"):
            return ExpansionFamily(kind)
        if param is None:
            raise ConfigError(f"family {kind} needs --param")
        return ExpansionFamily(kind, param)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _families(args, default_grid: dict) -> list[ExpansionFamily]:
    params = _split_params(args.param)
    if args.family:
        kinds = [k.strip().lower() for k in args.family.split(",")]
        out = []
        for k in kinds:
            if ":" in k or "(" in k:
                out.append(_parse(k))
            elif k in ("decimal", "gauss"):
                out.append(_family(k, None))
            else:
                for p in params or default_grid.get(k, ()):
                    out.append(_family(k, p))
                if not (params or default_grid.get(k)):
                    raise ConfigError(f"family {k} needs --param")
        return out
    if params:
        raise ConfigError("--param given without --family")
    return [ExpansionFamily(k, p) for k, ps in default_grid.items() for p in ps]


def _parse(text: str) -> ExpansionFamily:
    try:
        return parse_family(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cfentropy", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, n=None, samples=None):
        p.add_argument("--family", help="family kind(s), e.g. chan or ncf,renyi or ncf:3")
        p.add_argument("--param", action="append", help="parameter value(s); repeat or comma-separate")
        p.add_argument("--n", type=int, default=n)
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--seed", type=int, default=20240611)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--workers", type=int, default=1)
        return p

    p = common(sub.add_parser("entropy-table", help="entropies of the expansion maps"))
    p.add_argument("--method", choices=("quadrature", "closed_form"), default="quadrature")
    p = common(sub.add_parser("lochs", help="Monte Carlo digit-transfer ratio"), n=1000, samples=100)
    p.add_argument("--source", help="source family, e.g. ncf:3")
    p.add_argument("--target", help="target family, e.g. chan:2")
    common(sub.add_parser("smb", help="Shannon-McMillan-Breiman entropy estimate"), n=10000, samples=50)
    common(sub.add_parser("renyi-check", help="sampled distortion of inverse branches"), n=20, samples=1000)
    common(sub.add_parser("conjecture", help="compare h(theta, s=N) with h(NCF, N)"))
    return parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def config_from_args(args) -> RunConfig:
    cmd = args.command
    cfg = RunConfig(
        command=cmd, n=args.n, samples=args.samples, seed=args.seed, tol=args.tol,
        output_format=args.format, output_path=args.out, workers=args.workers,
        method=getattr(args, "method", "quadrature"),
    )
    if cfg.workers < 1:
        raise ConfigError("--workers must be at least 1")
    if cfg.tol is not None and cfg.tol < 0:
        raise ConfigError("--tol must be non-negative")
    for name in ("n", "samples"):
        v = getattr(cfg, name)
        if v is not None and v < 1:
            raise ConfigError(f"--{name} must be at least 1")
    if cmd == "entropy-table":
        cfg.families = _families(args, TABLE_GRID)
        if cfg.tol is not None and cfg.tol == 0:
            raise ConfigError("--tol must be positive for quadrature")
    elif cmd == "lochs":
        if bool(args.source) != bool(args.target):
            raise ConfigError("--source and --target go together")
        if args.family or args.param:
            raise ConfigError("lochs takes --source/--target, not --family/--param")
        if args.source:
            cfg.source, cfg.target = _parse(args.source), _parse(args.target)
    elif cmd == "smb":
        cfg.families = _families(args, {}) if args.family else [ExpansionFamily("gauss")]
    elif cmd == "renyi-check":
        cfg.families = _families(args, TABLE_GRID)
    elif cmd == "conjecture":
        if args.family:
            raise ConfigError("conjecture compares theta(s=N) with ncf(N); give only --param")
        cfg.params = _split_params(args.param) or list(CONJECTURE_GRID)
        if any(p < 1 for p in cfg.params):
            raise ConfigError("N must be at least 1")
    return cfg


def cmd_entropy_table(cfg: RunConfig) -> list[dict]:
    rows = []
    tol = cfg.tol if cfg.tol is not None else 1e-10
    for F in cfg.families:
        if cfg.method == "closed_form":
            try:
                r = entropy_closed_form(F)
            except UnsupportedFamilyError as exc:
                raise ConfigError(str(exc)) from None
        else:
            r = entropy_quadrature(F, tol)
        kind, param = _label(F)
        rows.append(dict(family=kind, parameter=param, method=r.method,
                         value=sig(r.value), error_estimate=sig(r.error_estimate)))
    return rows


def cmd_lochs(cfg: RunConfig) -> list[dict]:
    pairs = [(cfg.source, cfg.target)] if cfg.source else [(parse_family(a), parse_family(b)) for a, b in LOCHS_PAIRS]
    rows = []
    for s, t in pairs:
        e = lochs_estimate(s, t, cfg.n, cfg.samples, cfg.seed, workers=cfg.workers)
        rows.append(dict(
            source=str(s), target=str(t), n=e.n, samples=e.samples, seed=e.seed,
            mean_ratio=sig(e.mean_ratio), median_ratio=sig(e.median_ratio), std_error=sig(e.std_error),
            predicted=sig(e.predicted), relative_gap=sig(e.relative_gap), rejected=e.rejected,
            # theta pairs live on (0, theta) only and are outside the published comparisons
            domain_restricted="theta" in (s.kind, t.kind),
        ))
    return rows


def cmd_smb(cfg: RunConfig) -> list[dict]:
    rows = []
    for F in cfg.families:
        r = entropy_smb(F, cfg.n, cfg.samples, cfg.seed, workers=cfg.workers)
        q = entropy_quadrature(F).value
        kind, param = _label(F)
        rows.append(dict(family=kind, parameter=param, n=cfg.n, samples=cfg.samples, seed=cfg.seed,
                         value=sig(r.value), std_error=sig(r.error_estimate), quadrature=sig(q),
                         relative_gap=sig(r.value / q - 1)))
    return rows


def cmd_renyi_check(cfg: RunConfig) -> list[dict]:
    rows = []
    for F in cfg.families:
        kind, param = _label(F)
        row = dict(family=kind, parameter=param, n=cfg.n, trials=cfg.samples, seed=cfg.seed,
                   bound=sig(float(F.renyi_bound)))
        try:
            row["max_ratio"] = sig(renyi_condition_check(F, cfg.n, cfg.samples, cfg.seed))
            row["ok"] = True
        except RenyiBoundViolation as exc:
            row["max_ratio"], row["ok"] = str(exc), False
        rows.append(row)
    if not all(r["ok"] for r in rows):
        raise GateViolation(rows, "distortion bound violated")
    return rows


def cmd_conjecture(cfg: RunConfig) -> list[dict]:
    tol = cfg.tol if cfg.tol is not None else 1e-8
    rows = []
    for N in cfg.params:
        a = entropy_quadrature(ExpansionFamily("theta", N)).value
        b = entropy_quadrature(ExpansionFamily("ncf", N)).value
        d = abs(a - b)
        rows.append(dict(N=N, h_theta=sig(a), h_ncf=sig(b), abs_diff=sig(d), ok=d < tol))
    if not all(r["ok"] for r in rows):
        raise GateViolation(rows, f"|h(theta) - h(ncf)| >= {tol}")
    return rows


COMMANDS = {
    "entropy-table": cmd_entropy_table,
    "lochs": cmd_lochs,
    "smb": cmd_smb,
    "renyi-check": cmd_renyi_check,
    "conjecture": cmd_conjecture,
}


def render(rows: list[dict], command: str, fmt: str) -> str:
    schema = f"{command}/{SCHEMA_VERSION}"
    rows = [{"schema": schema, **r} for r in rows]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    cols = list(rows[0]) if rows else ["schema"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.10g}" if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        rows = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"cfentropy: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GateViolation as exc:
        emit(render(exc.rows, cfg.command, cfg.output_format), cfg.output_path)
        print(f"cfentropy: gate failed: {exc}", file=sys.stderr)
        return EXIT_GATE
    except (ConvergenceError, RejectionBudgetExceeded, OrbitTerminatedError, ArithmeticError) as exc:
        print(f"cfentropy: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    emit(render(rows, cfg.command, cfg.output_format), cfg.output_path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
