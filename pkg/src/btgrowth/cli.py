"""Command line interface: censuses, growth series, tree censuses, entropy checks.

Exit codes: 0 success, 2 usage or parse error, 3 domain error, 4 internal
consistency or tolerance failure, 5 budget exceeded.  Outputs are
deterministic for a fixed configuration; when a report is written to a file
with --out, a matplotlib figure is rendered next to it unless --no-figure
is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .affine import (
    DEFAULT_BUDGET,
    ApartmentPoint,
    MetricNormalization,
    apartment_distance,
    enumerate_affine_weyl,
)
from .errors import BudgetExceeded, GrowthError
from .growth import affine_poincare_coeffs, s_sequence, verify_theorem1
from .rootsystems import build_root_system, weyl_poincare_polynomial
from .trees import ExtensionParams, TreeBall, census_table, dot_text

BUDGET_ENV = "BTGROWTH_BUDGET"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INCONSISTENT = 4
EXIT_BUDGET = 5

_MAX_JSON_INT = 2**53 - 1


@dataclass(frozen=True)
class RunConfig:
    """One reproducible run: command plus every knob that affects output."""

    command: str
    type_name: str | None = None
    q: int = 2
    e: int = 1
    f: int = 1
    radius: int = 0
    lmax: int = 0
    norm: str | None = None
    fmt: str = "json"
    out: str | None = None
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    tolerance: float = 0.02
    target: str | None = None
    no_figure: bool = False


def _json_int(n: int):
    """Integers beyond exact double range are serialized as decimal strings."""
    return n if -_MAX_JSON_INT <= n <= _MAX_JSON_INT else str(n)


def _real(x: float) -> float:
    return float(f"{x:.15g}")


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _residue_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("residue cardinality must be >= 2")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="btgrowth",
        description="Ball censuses and volume growth entropy for Bruhat-Tits buildings.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "dot"), default="json")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument(
        "--budget",
        type=_positive_int,
        default=None,
        help=f"element/vertex budget (default from ${BUDGET_ENV} or {DEFAULT_BUDGET})",
    )
    common.add_argument(
        "--seed",
        type=_nonnegative_int,
        default=0,
        help="seed reserved for randomized property sampling; commands are deterministic",
    )
    common.add_argument("--no-figure", action="store_true", help="skip the figure next to --out")

    sub = parser.add_subparsers(dest="command", required=True)

    p_roots = sub.add_parser("roots", parents=[common], help="root system summary")
    p_roots.add_argument("--type", dest="type_name", required=True)

    p_weyl = sub.add_parser("weyl", parents=[common], help="affine Weyl census by length")
    p_weyl.add_argument("--type", dest="type_name", required=True)
    p_weyl.add_argument("--lmax", type=_nonnegative_int, default=10)
    p_weyl.add_argument(
        "--norm",
        default=None,
        help="metric normalization; adds per-length origin-displacement columns",
    )

    p_series = sub.add_parser("series", parents=[common], help="growth series and S(q, R)")
    p_series.add_argument("--type", dest="type_name", required=True)
    p_series.add_argument("--q", type=_residue_int, default=2)
    p_series.add_argument("--lmax", type=_nonnegative_int, default=20)

    p_tree = sub.add_parser("tree", parents=[common], help="extension tree censuses")
    p_tree.add_argument("--q", type=_residue_int, default=2)
    p_tree.add_argument("--e", type=_positive_int, default=1)
    p_tree.add_argument("--f", type=_positive_int, default=1)
    p_tree.add_argument("--radius", type=_nonnegative_int, default=6)

    p_verify = sub.add_parser("verify", parents=[common], help="entropy relation check")
    p_verify.add_argument("--target", required=True, help='"tree" or "weyl:TYPE"')
    p_verify.add_argument("--q", type=_residue_int, default=2)
    p_verify.add_argument("--e", type=_positive_int, default=1)
    p_verify.add_argument("--f", type=_positive_int, default=1)
    p_verify.add_argument("--radius", type=_nonnegative_int, default=40, help="tree target rmax")
    p_verify.add_argument("--lmax", type=_nonnegative_int, default=200, help="weyl target rmax")
    p_verify.add_argument("--tolerance", type=float, default=0.02)

    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    budget = ns.budget if ns.budget is not None else _default_budget()
    return RunConfig(
        command=ns.command,
        type_name=getattr(ns, "type_name", None),
        q=getattr(ns, "q", 2),
        e=getattr(ns, "e", 1),
        f=getattr(ns, "f", 1),
        radius=getattr(ns, "radius", 0),
        lmax=getattr(ns, "lmax", 0),
        norm=getattr(ns, "norm", None),
        fmt=ns.fmt,
        out=ns.out,
        budget=budget,
        seed=ns.seed,
        tolerance=getattr(ns, "tolerance", 0.02),
        target=getattr(ns, "target", None),
        no_figure=ns.no_figure,
    )


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str, figure_fn=None) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    path = Path(cfg.out)
    path.write_text(text, encoding="utf-8")
    if figure_fn is not None and not cfg.no_figure and cfg.fmt != "dot":
        from . import figures

        figures.save_figure(figure_fn(), path.with_suffix(".png"))


def _require_tabular(cfg: RunConfig) -> None:
    if cfg.fmt == "dot":
        raise ValueError(f"--format dot is only supported by the tree command")


def cmd_roots(cfg: RunConfig) -> int:
    _require_tabular(cfg)
    rs = build_root_system(cfg.type_name)
    poly = weyl_poincare_polynomial(rs)
    if cfg.fmt == "json":
        payload = {
            "type": rs.name,
            "rank": rs.rank,
            "positive_roots": [
                {"coords": list(r.coords), "height": r.height} for r in rs.positive_roots
            ],
            "exponents": list(rs.exponents),
            "weyl_order": _json_int(rs.weyl_order),
            "poincare_coeffs": [_json_int(c) for c in poly.coeffs],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        roots = " ".join("(" + ",".join(str(c) for c in r.coords) + ")" for r in rs.positive_roots)
        rows = [
            ("type", rs.name),
            ("rank", rs.rank),
            ("num_positive_roots", len(rs.positive_roots)),
            ("exponents", " ".join(str(m) for m in rs.exponents)),
            ("weyl_order", rs.weyl_order),
            ("poincare_coeffs", " ".join(str(c) for c in poly.coeffs)),
            ("positive_roots", roots),
        ]
        text = _csv_text(("field", "value"), rows)

    def figure():
        from . import figures

        return figures.roots_figure(rs.name, poly.coeffs)

    _emit(cfg, text, figure)
    return EXIT_OK


def cmd_weyl(cfg: RunConfig) -> int:
    _require_tabular(cfg)
    rs = build_root_system(cfg.type_name)
    census = enumerate_affine_weyl(rs, cfg.lmax, budget=cfg.budget)
    series = affine_poincare_coeffs(rs, cfg.lmax)
    if tuple(census.counts) != tuple(series.coeffs):
        print(
            f"error: BFS census {census.counts} disagrees with series {series.coeffs}",
            file=sys.stderr,
        )
        return EXIT_INCONSISTENT

    displacement = None
    if cfg.norm is not None:
        norm = MetricNormalization.parse(cfg.norm)
        origin = ApartmentPoint.origin(rs.rank)
        displacement = []
        for layer in census.elements:
            dists = [
                apartment_distance(rs, ApartmentPoint.of(w.translation), origin, norm)
                for w in layer
            ]
            displacement.append((min(dists), max(dists)))

    if cfg.fmt == "json":
        payload = census.to_json_dict()
        if displacement is not None:
            payload["norm"] = MetricNormalization.parse(cfg.norm).value
            payload["origin_displacement"] = [
                {"length": l, "min": _real(lo), "max": _real(hi)}
                for l, (lo, hi) in enumerate(displacement)
            ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        if displacement is None:
            rows = list(enumerate(census.counts))
            text = _csv_text(("length", "count"), rows)
        else:
            rows = [
                (l, c, f"{lo:.15g}", f"{hi:.15g}")
                for (l, c), (lo, hi) in zip(enumerate(census.counts), displacement)
            ]
            text = _csv_text(("length", "count", "min_displacement", "max_displacement"), rows)

    def figure():
        from . import figures

        return figures.census_figure(census)

    _emit(cfg, text, figure)
    return EXIT_OK


def cmd_series(cfg: RunConfig) -> int:
    _require_tabular(cfg)
    rs = build_root_system(cfg.type_name)
    coeffs = affine_poincare_coeffs(rs, cfg.lmax).coeffs
    svals = s_sequence(rs, cfg.q, cfg.lmax)
    if cfg.fmt == "json":
        payload = {
            "type": rs.name,
            "q": cfg.q,
            "lmax": cfg.lmax,
            "coeffs": [_json_int(c) for c in coeffs],
            "s_values": [_json_int(v) for v in svals],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        rows = [(r, coeffs[r], svals[r]) for r in range(cfg.lmax + 1)]
        text = _csv_text(("R", "coefficient", "s_value"), rows)

    def figure():
        from . import figures

        return figures.series_figure(rs.name, cfg.q, svals)

    _emit(cfg, text, figure)
    return EXIT_OK


def cmd_tree(cfg: RunConfig) -> int:
    params = ExtensionParams(cfg.q, cfg.e, cfg.f)
    if cfg.fmt == "dot":
        tree = TreeBall(params, cfg.radius, full=True, budget=cfg.budget)
        _emit(cfg, dot_text(tree))
        return EXIT_OK
    records = census_table(params, cfg.radius, budget=cfg.budget)
    if cfg.fmt == "json":
        payload = []
        for rec in records:
            item = rec.to_json_dict()
            for key in ("in_F", "in_F_sphere", "in_Eprime", "total"):
                item[key] = _json_int(item[key])
            payload.append(item)
        text = json.dumps(payload, indent=2) + "\n"
    else:
        rows = [
            (rec.radius, rec.in_f, rec.in_f_sphere, rec.in_eprime, rec.total)
            for rec in records
        ]
        text = _csv_text(("R", "in_F", "in_F_sphere", "in_Eprime", "total"), rows)

    def figure():
        from . import figures

        return figures.tree_census_figure(records)

    _emit(cfg, text, figure)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    _require_tabular(cfg)
    params = ExtensionParams(cfg.q, cfg.e, cfg.f)
    if cfg.target == "tree":
        report = verify_theorem1("tree", params, cfg.radius)
    elif cfg.target is not None and cfg.target.startswith("weyl:"):
        rs = build_root_system(cfg.target[len("weyl:") :])
        report = verify_theorem1(rs, params, cfg.lmax)
    else:
        raise ValueError(f'--target must be "tree" or "weyl:TYPE", got {cfg.target!r}')
    scale = cfg.tolerance * report.h_ff
    passed = report.defect1 <= scale and report.defect2 <= scale
    if cfg.fmt == "json":
        payload = report.to_json_dict()
        for key in ("h_FF", "h_FE", "h_EE", "defect1", "defect2"):
            payload[key] = _real(payload[key])
        payload["tolerance"] = _real(cfg.tolerance)
        payload["passed"] = passed
        text = json.dumps(payload, indent=2) + "\n"
    else:
        rows = [("base", r, str(v)) for r, v in report.base_samples]
        rows += [("extension", r, str(v)) for r, v in report.ext_samples]
        text = _csv_text(("space", "R", "volume_digits"), rows)
    summary = (
        f"h_FF={report.h_ff:.6f} h_FE={report.h_fe:.6f} h_EE={report.h_ee:.6f} "
        f"defect1={report.defect1:.3e} defect2={report.defect2:.3e} "
        f"{'PASS' if passed else 'FAIL'} (tolerance {cfg.tolerance:g})"
    )
    print(summary, file=sys.stderr)

    def figure():
        from . import figures

        return figures.verify_figure(report)

    _emit(cfg, text, figure)
    return EXIT_OK if passed else EXIT_INCONSISTENT


_COMMANDS = {
    "roots": cmd_roots,
    "weyl": cmd_weyl,
    "series": cmd_series,
    "tree": cmd_tree,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = _config_from_args(ns)
        return _COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GrowthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
