"""Command-line front end: build catalog pairs or import user pairs, run named
verification suites with seeds and tolerances, and emit JSON plus a text summary.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 import parse
error, 64 invalid configuration.  Reports are byte-identical across runs with
the same configuration and seed, apart from the timestamp field."""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from . import bialgebra as bi
from .catalog import CatalogEntry, catalog_names, get_entry, supq1
from .checks import (CHECK_NAMES, CORRUPTION_KNOBS, applicable_checks,
                     conventions_report, run_check)
from .config import DEFAULT_TOL, EXP_METHOD, PRNG_NAME, Tolerances
from .linalg import Rng
from .matched import MatchedPair

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_IMPORT_ERROR = 2
EXIT_BAD_CONFIG = 64


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    pair: str
    checks: list[str] = field(default_factory=list)
    samples: int = 200
    seed: int = 42
    tol: Tolerances = DEFAULT_TOL
    out: str | None = None
    corrupt: str | None = None
    p: int | None = None

    def validate(self):
        for name in self.checks:
            if name not in CHECK_NAMES:
                raise ConfigError(
                    f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
        if self.corrupt is not None and self.corrupt not in CORRUPTION_KNOBS:
            raise ConfigError(
                f"unknown corruption knob {self.corrupt!r}; known: "
                + ", ".join(CORRUPTION_KNOBS))
        if self.samples < 1:
            raise ConfigError("samples must be positive")


def _load_target(config: RunConfig):
    name = config.pair
    if name == "supq1":
        if config.p is None:
            raise ConfigError("pair 'supq1' needs --p")
        try:
            return supq1(config.p)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if config.p is not None:
        raise ConfigError("--p only applies to the 'supq1' family")
    if name in catalog_names():
        return get_entry(name)
    # otherwise treat as a JSON import path
    try:
        with open(name, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"unknown pair and unreadable path: {exc}") from exc
    try:
        return MatchedPair.from_json(text)
    except Exception as exc:
        raise ImportError(f"could not parse matched-pair JSON: {exc}") from exc


def run(config: RunConfig) -> tuple[int, dict, str]:
    config.validate()
    target = _load_target(config)
    allowed = applicable_checks(target)
    checks = config.checks or list(allowed)
    for name in checks:
        if name not in allowed:
            raise ConfigError(
                f"check {name!r} is not applicable to pair {config.pair!r} "
                f"(applicable: {', '.join(allowed)})")

    rng = Rng(config.seed)
    results = [run_check(name, target, config.samples, rng, config.tol,
                         corrupt=config.corrupt) for name in checks]
    conventions = (conventions_report(target, Rng(config.seed ^ 0x5EED))
                   if isinstance(target, CatalogEntry) else [])

    report = {
        "meta": {
            "version": __version__,
            "seed": config.seed,
            "samples": config.samples,
            "prng": PRNG_NAME,
            "exp_method": EXP_METHOD,
            "tolerances": {
                "algebraic": config.tol.algebraic,
                "fd": config.tol.fd,
                "fd_step": config.tol.fd_step,
                "svd": config.tol.svd,
                "twist_inner_scale": config.tol.twist_inner_scale,
            },
            "corrupt": config.corrupt,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
        "pair": config.pair if config.p is None else f"{config.pair}(p={config.p})",
        "conventions": conventions,
        "results": results,
    }
    all_pass = all(r["pass"] for r in results)
    return (EXIT_OK if all_pass else EXIT_CHECK_FAILED, report,
            text_summary(target, report))


def text_summary(target, report: dict) -> str:
    lines = [f"pair: {report['pair']}   seed: {report['meta']['seed']}   "
             f"prng: {report['meta']['prng']}   exp: {report['meta']['exp_method']}"]
    if report["meta"]["corrupt"]:
        lines.append(f"CORRUPTION ACTIVE: {report['meta']['corrupt']}")
    lines.append("")
    for r in report["results"]:
        status = "PASS" if r["pass"] else "FAIL"
        lines.append(f"  [{status}] {r['check']:<18} residual {r['max_residual']:.3e}"
                     f"  (tol {r['tolerance']:.1e}, samples {r.get('samples', 0)})")
    if report["conventions"]:
        lines.append("")
        lines.append("conventions vs published tables:")
        for c in report["conventions"]:
            sign = "" if c["sign"] is None else f" sign {c['sign']:+.0f}"
            lines.append(f"  - {c['table']}:{sign} residual {c['residual']:.1e}; {c['note']}")
    if isinstance(target, CatalogEntry):
        lines.append("")
        lines.extend(_display_notation_tables(target))
    return "\n".join(lines) + "\n"


def _display_notation_tables(entry: CatalogEntry) -> list[str]:
    """Bracket/cobracket tables in the published notation for side-by-side reading."""
    mp = entry.mp
    labels = ["y(a)", "y(2)"] + [f"y(R)_{k+1}" for k in range(entry.p - 1)] \
        + [f"y(I)_{k+1}" for k in range(entry.p - 1)]
    order = list(range(2)) + [2 + 2 * k for k in range(entry.p - 1)] \
        + [3 + 2 * k for k in range(entry.p - 1)]
    lines = ["solvable brackets:"]
    k = mp.dim_c
    for ii, i in enumerate(order):
        for j in order[ii + 1:]:
            vec = mp.c_coords(mp.g.bracket_coords(mp.y_basis[i], mp.y_basis[j]))
            terms = [f"{vec[lidx]:+g} {labels[order.index(lidx)]}"
                     for lidx in range(k) if abs(vec[lidx]) > 1e-12]
            rhs = " ".join(terms) if terms else "0"
            lines.append(f"  [{labels[ii]}, {labels[order.index(j)]}] = {rhs}")
    ea = bi.build_e(mp)
    delta = bi.delta_direct(ea)
    dual_labels = [l.replace("y", "y*") for l in labels]
    lines.append("cobracket on the annihilator:")
    for ii, i in enumerate(order):
        c = delta[i].coeffs[:k, :k]
        terms = []
        for a in range(k):
            for b in range(a + 1, k):
                if abs(c[a, b]) > 1e-12:
                    la = dual_labels[order.index(a)]
                    lb = dual_labels[order.index(b)]
                    terms.append(f"{c[a, b]:+g} {la}^{lb}")
        lines.append(f"  delta({dual_labels[ii]}) = {' '.join(terms) if terms else '0'}")
    if entry.p == 1:
        lines.append("planar brackets (e-basis P1, P2, J):")
        e = ea.e
        names = ["P1", "P2", "J"]
        for i in range(3):
            for j in range(i + 1, 3):
                vec = e.structure[i, j]
                terms = [f"{vec[l]:+g} {names[l]}" for l in range(3) if abs(vec[l]) > 1e-12]
                lines.append(f"  [{names[i]}, {names[j]}] = {' '.join(terms) if terms else '0'}")
    return lines


def _dump_report(report: dict, out: str | None, summary: str):
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out == "-":
        sys.stdout.write(payload)
        sys.stderr.write(summary)
    else:
        path = out or "poissonlie-report.json"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
        sys.stdout.write(summary)
        sys.stdout.write(f"report written to {path}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poissonlie",
        description="verify Poisson-Lie structures built from matched pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run verification suites on a pair")
    ver.add_argument("pair", help="catalog name (su11, su21, su31, su41, supq1) "
                                  "or path to a matched-pair JSON file")
    ver.add_argument("--checks", default=None,
                     help="comma-separated subset of: " + ", ".join(CHECK_NAMES))
    ver.add_argument("--samples", type=int, default=200)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--tol-algebraic", type=float, default=None)
    ver.add_argument("--tol-fd", type=float, default=None)
    ver.add_argument("--out", default=None, help="report path, '-' for stdout")
    ver.add_argument("--corrupt", default=None,
                     help="negative-control knob: " + ", ".join(CORRUPTION_KNOBS))
    ver.add_argument("--p", type=int, default=None, help="family parameter for supq1")

    cat = sub.add_parser("catalog", help="list or export catalog pairs")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    cat_sub.add_parser("list", help="list catalog pair names")
    exp = cat_sub.add_parser("export", help="export a pair as JSON")
    exp.add_argument("name")
    exp.add_argument("--out", default="-")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        if args.catalog_command == "list":
            for name in catalog_names():
                print(name)
            return EXIT_OK
        try:
            entry = get_entry(args.name)
        except KeyError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_BAD_CONFIG
        payload = json.dumps(entry.mp.to_json_dict(), sort_keys=True, indent=2) + "\n"
        if args.out == "-":
            sys.stdout.write(payload)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        return EXIT_OK

    tol = DEFAULT_TOL
    if args.tol_algebraic is not None:
        tol = tol.override(algebraic=args.tol_algebraic)
    if args.tol_fd is not None:
        tol = tol.override(fd=args.tol_fd)
    config = RunConfig(
        pair=args.pair,
        checks=[] if args.checks is None else
        [c.strip() for c in args.checks.split(",") if c.strip()],
        samples=args.samples,
        seed=args.seed,
        tol=tol,
        out=args.out,
        corrupt=args.corrupt,
        p=args.p,
    )
    try:
        code, report, summary = run(config)
    except ConfigError as exc:
        sys.stderr.write(f"invalid configuration: {exc}\n")
        return EXIT_BAD_CONFIG
    except ImportError as exc:
        sys.stderr.write(f"import error: {exc}\n")
        return EXIT_IMPORT_ERROR
    _dump_report(report, config.out, summary)
    return code


if __name__ == "__main__":
    sys.exit(main())
