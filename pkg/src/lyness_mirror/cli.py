"""Command-line front end: ``lym <command> [flags]``.

Every command prints canonical JSON (sorted keys) on stdout, or writes it to
``--output``.  Exit codes: 0 success, 2 verification failure, 3 I/O or
configuration error.

Environment overrides: ``LYM_THREADS`` (worker count) and ``LYM_CACHE_DIR``
(where survey results are stored).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

log = logging.getLogger("lyness_mirror")

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_IO = 3


class ConfigError(Exception):
    """Bad flags, environment or input files (exit code 3)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    depth: int | None = None
    lam: int | None = None
    mu: int | None = None
    output: Path | None = None
    fixture: Path | None = None
    threads: int = 1
    cache_dir: Path | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, env: dict[str, str] | None = None) -> RunConfig:
        env = dict(os.environ if env is None else env)
        threads = getattr(args, "threads", None)
        if threads is None:
            raw = env.get("LYM_THREADS", "1")
            try:
                threads = int(raw)
            except ValueError:
                raise ConfigError(f"LYM_THREADS must be an integer, got {raw!r}") from None
        if threads < 1:
            raise ConfigError("thread count must be at least 1")
        lam = _param_value(getattr(args, "lam", None), "lam")
        mu = _param_value(getattr(args, "mu", None), "mu")
        if args.command not in ("scatter",) and (lam is not None or mu is not None):
            raise ConfigError(f"{args.command} does not take lam/mu")
        cache = Path(env["LYM_CACHE_DIR"]) if env.get("LYM_CACHE_DIR") else _default_cache_dir(env)
        output = Path(args.output) if getattr(args, "output", None) else None
        fixture = getattr(args, "fixture", None)
        return cls(args.command, getattr(args, "depth", None), lam, mu, output,
                   Path(fixture) if fixture else None, threads, cache)


def _param_value(raw: str | None, name: str) -> int | None:
    """Integers stay integers; ``symbolic`` (or no flag) keeps the parameter free."""
    if raw is None or raw == "symbolic":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"--{name} must be an integer or 'symbolic', got {raw!r}") from None


def _default_cache_dir(env: dict[str, str]) -> Path:
    base = env.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "lyness_mirror"


def dump_json(data: object) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _emit(cfg: RunConfig, data: object, text: str | None = None) -> None:
    out = text if text is not None else dump_json(data)
    if cfg.output is None:
        sys.stdout.write(out)
        return
    try:
        cfg.output.parent.mkdir(parents=True, exist_ok=True)
        cfg.output.write_text(out)
    except OSError as exc:
        raise ConfigError(f"cannot write {cfg.output}: {exc}") from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_lyness(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .lyness import RecurrenceSpec, iterate

    try:
        spec = RecurrenceSpec(args.d, args.mode)
        result = iterate(spec, args.steps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _emit(cfg, result.to_json())
    return EXIT_OK


def cmd_period(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .mirrorscan import named_potential, period, shift_series

    try:
        w = named_potential(args.potential)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"unknown potential {args.potential!r}: {exc}") from None
    depth = 7 if args.depth is None else args.depth
    p = period(w, depth, method=args.method, source=args.potential)
    if args.shift:
        p = shift_series(p, args.shift)
    data = {"potential": args.potential, "laurent": w.to_text(), "shift": args.shift, "depth": depth,
            "coeffs": list(p.coeffs)}
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "alpha"])
        writer.writerows(enumerate(p.coeffs))
        _emit(cfg, data, buf.getvalue())
    else:
        _emit(cfg, data)
    return EXIT_OK


def cmd_scatter(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .exactalg import LaurentPoly
    from .scattering import builtin_dp5, builtin_v12, check_consistency

    diagram = builtin_dp5() if args.diagram == "dp5" else builtin_v12(cfg.lam, cfg.mu)
    for item in args.replace or []:
        name, _, text = item.partition("=")
        try:
            diagram = diagram.replace_function(name, LaurentPoly.parse(text, diagram.dim))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad --replace {item!r}: {exc}") from None
    report = check_consistency(diagram)
    ok = all(r["consistent"] for r in report)
    data = {"diagram": args.diagram, "lam": "symbolic" if cfg.lam is None else cfg.lam,
            "mu": "symbolic" if cfg.mu is None else cfg.mu, "consistent": ok, "joints": report}
    if args.show_walls:
        data["walls"] = diagram.to_json()["walls"]
    _emit(cfg, data)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_points(space, items: Sequence[str]):
    out = []
    for item in items:
        if "," in item:
            try:
                out.append(tuple(int(x) for x in item.strip("()").split(",")))
            except ValueError:
                raise ConfigError(f"bad point {item!r}") from None
        else:
            try:
                space.index(item)
            except KeyError as exc:
                raise ConfigError(str(exc)) from None
            out.append(item)
    return out


def cmd_trop(args: argparse.Namespace, cfg: RunConfig) -> int:
    from . import tropical as T

    if args.action == "classify":
        try:
            classes = T.classify_reflexive_dp5(radius=args.radius)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        data = {
            "count": len(classes),
            "self_dual": [i for i, c in enumerate(classes) if c.dual_index == i],
            "classes": [c.to_json(i) for i, c in enumerate(classes)],
        }
        _emit(cfg, data)
        return EXIT_OK
    space = T.get_space(args.space)
    if args.action == "space":
        _emit(cfg, space.to_json())
        return EXIT_OK
    if args.action == "theta":
        if space.dim != 2:
            raise ConfigError("broken lines are only available in the plane")
        q = tuple(_fraction(x) for x in args.q.split(","))
        n = space.point(args.points[0]) if args.points else None
        if n is None:
            raise ConfigError("theta needs one point")
        lines = T.broken_lines(n, q)
        data = {"n": list(n), "q": [str(x) for x in q], "theta": T.theta_expand(n, q).to_text(),
                "broken_lines": [b.to_json() for b in lines]}
        _emit(cfg, data)
        return EXIT_OK
    pts = _parse_points(space, args.points)
    try:
        if args.action == "polar":
            P = T.polar(space, pts)
        else:
            P = T.hull(space, pts)
    except T.UnboundedError as exc:
        raise ConfigError(str(exc)) from None
    data = P.to_json()
    if args.vertices:
        data["vertices"] = [[_number(x) for x in v] for v in T.vertices(P)]
        data["reflexive"] = T.is_reflexive(P)
    _emit(cfg, data)
    return EXIT_OK


def _number(x) -> int | str:
    """Integral values as JSON numbers, other fractions as strings like "1/2"."""
    return int(x) if getattr(x, "denominator", 1) == 1 else str(x)


def _fraction(text: str):
    from fractions import Fraction

    return Fraction(text)


def cmd_survey(args: argparse.Namespace, cfg: RunConfig) -> int:
    from .mirrorscan import fixture_digest, load_fixture, survey

    depth = 10 if args.depth is None else args.depth
    fixture = None
    if not args.no_fixture:
        try:
            fixture = load_fixture(cfg.fixture)
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"cannot read fixture {cfg.fixture or '(bundled)'}: {exc}") from None
    key = f"survey-d{depth}-{fixture_digest(fixture)[:16] if fixture else 'nofixture'}.json"
    cache_file = cfg.cache_dir / key if cfg.cache_dir else None
    if cache_file is not None and cache_file.exists() and not args.refresh:
        log.info("survey cache hit: %s", cache_file)
        _emit(cfg, None, cache_file.read_text())
        return EXIT_OK
    start = time.perf_counter()
    report = survey(depth, fixture, workers=cfg.threads)
    log.info("survey finished in %.1f s", time.perf_counter() - start)
    text = dump_json(report.to_json())
    if cache_file is not None:
        try:
            cache_file.parent.mkdir(parents=True, exist_ok=True)
            cache_file.write_text(text)
            log.info("survey cached at %s", cache_file)
        except OSError as exc:
            log.warning("could not write survey cache: %s", exc)
    _emit(cfg, None, text)
    return EXIT_OK


def verify_groups() -> dict[str, Callable[[], list[dict]]]:
    """Named groups of identity checks, in the order they run."""
    from . import lyness as L
    from .mirrorscan import verify_periods, verify_survey
    from .scattering import verify_scattering
    from .tropical import verify_classification, verify_tropical

    return {
        "lyness": lambda: L.verify_periodicity() + L.verify_q_invariants() + L.verify_specialisation(),
        "charts": lambda: L.verify_charts() + L.verify_exchange_relations(),
        "identities": lambda: (L.verify_pfaffians_dp5() + L.verify_quadrics_ogr() + L.verify_unprojection_equations()
                               + L.verify_factorizations() + L.verify_shift_invariance()),
        "scattering": verify_scattering,
        "tropical": verify_tropical,
        "periods": verify_periods,
        "classification": verify_classification,
        "survey": verify_survey,
    }


SLOW_GROUPS = ("classification", "survey")


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    groups = verify_groups()
    if args.only:
        unknown = [g for g in args.only if g not in groups]
        if unknown:
            raise ConfigError(f"unknown verify group(s) {unknown}; choose from {sorted(groups)}")
        selected = list(args.only)
    else:
        selected = [g for g in groups if args.full or g not in SLOW_GROUPS]
    items = []
    for name in selected:
        start = time.perf_counter()
        for item in groups[name]():
            items.append({"group": name, **item})
        log.info("verify %s: %.1f s", name, time.perf_counter() - start)
    failed = [i for i in items if i["status"] != "pass"]
    data = {"groups": selected, "identities": items, "passed": len(items) - len(failed), "failed": len(failed)}
    _emit(cfg, data)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors: exit 3 rather than argparse's 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lym", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        p.add_argument("--threads", type=int, default=None, help="worker count (default: LYM_THREADS or 1)")

    p = sub.add_parser("lyness", help="iterate the Lyness recurrence")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--mode", choices=("plain", "lambda-mu", "full-y"), default="plain")
    common(p)

    p = sub.add_parser("period", help="classical period of a potential")
    p.add_argument("--potential", default="wQ",
                   help="dp5, dp2, f1, wQ, wP, wP2, eps:<10 bits>, octagon:<pattern> or a sum like 'x1 + q2'")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--method", choices=("dense", "sparse"), default="dense")
    p.add_argument("--csv", action="store_true", help="emit an n,alpha table instead of JSON")
    common(p)

    p = sub.add_parser("scatter", help="check consistency of a scattering diagram")
    p.add_argument("--diagram", choices=("dp5", "v12"), default="v12")
    p.add_argument("--lam", default=None, help="integer or 'symbolic' (default)")
    p.add_argument("--mu", default=None, help="integer or 'symbolic' (default)")
    p.add_argument("--replace", action="append", metavar="WALL=FUNCTION",
                   help="swap one wall function (for mutation testing)")
    p.add_argument("--show-walls", action="store_true")
    common(p)

    p = sub.add_parser("trop", help="tropical polytopes, theta functions and the reflexive scan")
    parser.set_defaults(_trop_parser=p)
    p.add_argument("action", choices=("hull", "polar", "theta", "space", "classify"))
    p.add_argument("points", nargs="*", help="labels such as x1, q2 or coordinates such as -1,0,1")
    p.add_argument("--space", choices=("dp5", "v12"), default="v12")
    p.add_argument("--vertices", action="store_true", help="also report vertices and reflexivity")
    p.add_argument("--q", default="-99/100,98/97", help="endpoint for broken lines")
    p.add_argument("--radius", type=int, default=5)
    common(p)

    p = sub.add_parser("survey", help="scan the 1024 sub-potentials")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--fixture", default=None, help="quantum-period JSON (default: bundled)")
    p.add_argument("--no-fixture", action="store_true")
    p.add_argument("--refresh", action="store_true", help="ignore the cache")
    common(p)

    p = sub.add_parser("verify", help="rerun the identity suite")
    p.add_argument("--only", action="append", help="restrict to a group (repeatable)")
    p.add_argument("--full", action="store_true", help="include the slow classification and survey groups")
    common(p)
    return parser


COMMANDS: dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "lyness": cmd_lyness,
    "period": cmd_period,
    "scatter": cmd_scatter,
    "trop": cmd_trop,
    "survey": cmd_survey,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args, extra = parser.parse_known_args(argv)
    if args.command == "trop":
        # points may follow options, which plain parse_args rejects
        rest = argv[argv.index("trop") + 1:]
        trop_args = args._trop_parser.parse_intermixed_args(rest)
        args = argparse.Namespace(**{**vars(args), **vars(trop_args)})
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"lym: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
