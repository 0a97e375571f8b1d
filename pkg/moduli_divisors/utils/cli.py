from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from sympy import isprime

from ..campaigns.nodal import FAMILIES, SPECIAL_CELLS, family_names
from ..core.config import AppConfig
from ..core.errors import InvalidContextError, InvalidSymbolError, ModuliError
from ..core.picard_basis import (
    DivisorClass,
    boundary_total,
    orbit_basis,
    parse_symbol,
    psi_class,
)
from ..core.state import Level, SpaceContext, SpaceKind, TableName, Verdict
from ..core.workflow import build_workflow
from ..tools.catalog import GENERATOR_SPECS, canonical_class, resolve_generator
from ..tools.certify import (
    Certificate,
    build_system,
    certificate_from_dict,
    reduced_coordinates,
    solve,
    verify_stored,
)
from ..tools.maps import (
    forgetful_pullback,
    glue_pullback,
    hyperelliptic_restrict,
    omega_basechange,
    pullback_from_unpointed,
    symmetrize,
)
from ..tools.singularity import (
    DiagonalAction,
    describe_action,
    hyperelliptic_tangent_action,
    nonhyperelliptic_involution_action,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

_RANK = {Verdict.infeasible: 0, Verdict.effective: 1, Verdict.general_type: 2}
PULLBACK_MAPS = ("forgetful", "glue", "unpointed", "hyperelliptic", "omega", "symmetrize")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> List[int]:
    """'5,7,9' or '5-9' or a mix of both."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-", 1))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError as exc:
            raise UsageError(f"not an integer list: {text!r}") from exc
    return out


def _add_context_args(parser: argparse.ArgumentParser, with_space: bool = True) -> None:
    if with_space:
        parser.add_argument(
            "--space", choices=[k.value for k in SpaceKind], default=SpaceKind.pointed.value
        )
    parser.add_argument("--g", type=int, required=True, help="Genus")
    parser.add_argument("--n", type=int, default=0, help="Marked points (node pairs for nodal)")
    parser.add_argument("--partition", type=str, default=None, help="Block sizes, e.g. 2,2")
    parser.add_argument("--level", choices=[lv.value for lv in Level], default=None)
    parser.add_argument("--symmetric", action="store_true", help="Use the S_n orbit basis")


def _context(args: argparse.Namespace, kind: Optional[SpaceKind] = None) -> SpaceContext:
    space = kind or SpaceKind(args.space)
    extra: Dict[str, Any] = {}
    if args.level is not None:
        extra["level"] = Level(args.level)
    if space is SpaceKind.pointed:
        return SpaceContext.pointed(args.g, args.n, symmetric=args.symmetric, **extra)
    if space is SpaceKind.nodal:
        return SpaceContext.nodal(args.g, args.n, **extra)
    if space is SpaceKind.hyperelliptic:
        return SpaceContext.hyperelliptic(args.g, args.n, symmetric=args.symmetric, **extra)
    if not args.partition:
        raise UsageError("--space partition needs --partition")
    return SpaceContext.partitioned(args.g, tuple(_int_list(args.partition)), **extra)


def named_class(name: str, ctx: SpaceContext) -> Tuple[DivisorClass, Dict[str, Any]]:
    """K, psi, delta, a single basis symbol or any catalog generator on ``ctx``."""
    if name == "K":
        return canonical_class(ctx), {}
    if name == "psi":
        return psi_class(ctx), {}
    if name == "delta":
        return boundary_total(ctx), {}
    try:
        return DivisorClass.of(ctx, parse_symbol(name)), {}
    except InvalidSymbolError:
        pass
    gen = resolve_generator(name, ctx)
    info = {
        "mode": gen.mode.value,
        "assumptions": list(gen.assumptions),
        "citation": gen.citation,
    }
    if gen.known is not None:
        info["known"] = sorted(sym.name for sym in gen.known)
    return gen.cls, info


def _emit(data: Any, args: argparse.Namespace, filename: str) -> None:
    text = json.dumps(data, indent=2)
    print(text)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / filename).write_text(text + "\n")
        logger.info("wrote %s", out_dir / filename)


def _emit_frame(frame: pd.DataFrame, args: argparse.Namespace, filename: str) -> None:
    print(frame.to_csv(index=False), end="")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        frame.to_csv(out_dir / filename, index=False)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_class(args: argparse.Namespace, config: AppConfig) -> int:
    ctx = _context(args)
    cls, info = named_class(args.name, ctx)
    data: Dict[str, Any] = {
        "name": args.name,
        "class": cls.to_dict(),
        "text": cls.format(),
        **info,
    }
    if args.basis:
        data["basis"] = [sym.name for sym in orbit_basis(ctx, cap=config.full_basis_cap)]
    _emit(data, args, f"class_{args.name}.json")
    return EXIT_OK


def cmd_pullback(args: argparse.Namespace, config: AppConfig) -> int:
    g, n = args.g, args.n
    level = Level(args.level) if args.level else Level.stack
    if args.map == "forgetful":
        if n < 1:
            raise UsageError("forgetful pullback needs --n >= 1 (the target point count)")
        source = SpaceContext.pointed(g, n - 1, level=level)
        move: Callable[[DivisorClass], DivisorClass] = lambda c: forgetful_pullback(c, args.which)
    elif args.map == "glue":
        source = SpaceContext.pointed(g + n, 0, level=level)
        move = lambda c: glue_pullback(c, n)
    elif args.map == "unpointed":
        source = SpaceContext.pointed(g, 0, level=level)
        target = _context(args, SpaceKind(args.target))
        move = lambda c: pullback_from_unpointed(c, target)
    elif args.map == "hyperelliptic":
        source = SpaceContext.pointed(g, n, symmetric=args.symmetric)
        move = lambda c: hyperelliptic_restrict(c, level)
    elif args.map == "omega":
        source = SpaceContext.pointed(g, n, level=level)
        move = lambda c: omega_basechange(c, inverse=args.inverse)
    else:
        source = SpaceContext.pointed(g, n, level=level)
        move = symmetrize
    cls, _ = named_class(args.name, source)
    result = move(cls)
    data = {
        "map": args.map,
        "input": cls.to_dict(),
        "result": result.to_dict(),
        "text": result.format(),
    }
    _emit(data, args, f"pullback_{args.map}_{args.name}.json")
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace, config: AppConfig) -> int:
    rows = [
        {
            "name": spec.name,
            "context": spec.context,
            "validity": spec.validity,
            "mode": spec.mode.value,
            "citation": spec.citation,
        }
        for spec in GENERATOR_SPECS
    ]
    if args.format == "csv":
        _emit_frame(pd.DataFrame(rows), args, "catalog.csv")
    else:
        _emit(rows, args, "catalog.json")
    return EXIT_OK


def _auto_names(ctx: SpaceContext) -> List[Tuple[str, ...]]:
    """Generator sets tried in order, following the campaign branch rules."""
    if ctx.kind is SpaceKind.nodal:
        sets = [family_names(ctx.g, ctx.n, family) for family in FAMILIES]
        special = SPECIAL_CELLS.get((ctx.g, ctx.n))
        return sets + ([special] if special else [])
    if ctx.kind is SpaceKind.hyperelliptic:
        raise UsageError("--gens auto is not defined on hyperelliptic loci")
    first = "E" if isprime(ctx.g + 1) else "B"
    return [(first, "W")]


def _certify_once(
    ctx: SpaceContext, names: Sequence[str], coords_mode: str, config: AppConfig
) -> Certificate:
    coords = reduced_coordinates(ctx) if coords_mode == "reduced" else None
    window = None if coords is None else frozenset(coords)
    gens = [resolve_generator(name, ctx, window) for name in names]
    system = build_system(canonical_class(ctx, window), gens, coords, config=config)
    return solve(system)


def cmd_certify(args: argparse.Namespace, config: AppConfig) -> int:
    if args.verify:
        data = json.loads(Path(args.verify).read_text())
        # files written by certify --out wrap the certificate
        cert = certificate_from_dict(data.get("certificate", data))
        valid = verify_stored(cert)
        _emit({"file": args.verify, "verdict": cert.verdict.value, "valid": valid}, args, "verify.json")
        return EXIT_OK if valid else EXIT_MISMATCH
    if args.g is None:
        raise UsageError("certify needs --g (or --verify FILE)")
    ctx = _context(args)
    coords_mode = args.coords or ("reduced" if ctx.kind is SpaceKind.nodal else "all")
    if args.gens == "auto":
        candidates = _auto_names(ctx)
    else:
        candidates = [tuple(x.strip() for x in args.gens.split(",") if x.strip())]
    best: Optional[Tuple[Certificate, Tuple[str, ...]]] = None
    for names in candidates:
        try:
            cert = _certify_once(ctx, names, coords_mode, config)
        except ModuliError as exc:
            if len(candidates) == 1:
                raise
            logger.info("generators %s unavailable: %s", ",".join(names), exc)
            continue
        if best is None or _RANK[cert.verdict] > _RANK[best[0].verdict]:
            best = (cert, names)
        if cert.verdict is Verdict.general_type:
            break
    if best is None:
        raise InvalidContextError(f"no generator set applies to {ctx.describe()}")
    cert, names = best
    valid = verify_stored(cert)
    data = {
        "context": ctx.to_dict(),
        "generators": list(names),
        "valid": valid,
        "certificate": cert.to_dict(include_inputs=True),
    }
    _emit(data, args, f"certificate_{ctx.kind.value}_{ctx.g}_{ctx.n}.json")
    if args.expect:
        return EXIT_OK if cert.verdict is Verdict(args.expect) and valid else EXIT_MISMATCH
    return EXIT_MISMATCH if cert.verdict is Verdict.infeasible or not valid else EXIT_OK


def cmd_table(args: argparse.Namespace, config: AppConfig) -> int:
    genera = _int_list(args.genera) if args.genera else None
    report = build_workflow(config, genera)(TableName(args.table))
    if args.format == "csv":
        print(report.bounds_frame().to_csv(index=False), end="")
    else:
        print(report.to_json())
    if args.out:
        report.write(Path(args.out))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_age(args: argparse.Namespace, config: AppConfig) -> int:
    if args.exponents is not None:
        action = DiagonalAction(args.order, tuple(_int_list(args.exponents)))
    elif args.nonhyperelliptic:
        if args.order != 2:
            raise UsageError("--nonhyperelliptic describes an involution, use --order 2")
        action = nonhyperelliptic_involution_action(args.g)
    else:
        action = hyperelliptic_tangent_action(args.g, args.order, args.hyperelliptic_involution)
    data = describe_action(action, all_units=args.all_units)
    if args.g is not None:
        data["g"] = args.g
    _emit(data, args, f"age_{args.g}_{args.order}.json")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moduli-divisors", description="Divisor classes on moduli of curves")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes (MODULI_JOBS)")
    parser.add_argument("--out", type=str, default=None, help="Also write results to this directory")
    parser.add_argument("--log-level", type=str, default=None, help="Logging level")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("class", help="Build a class: K, psi, delta, a symbol or a generator")
    p.add_argument("name")
    _add_context_args(p)
    p.add_argument("--basis", action="store_true", help="Also list the basis of the context")
    p.set_defaults(handler=cmd_class)

    p = sub.add_parser("pullback", help="Pull a class back along one of the standard maps")
    p.add_argument("name")
    p.add_argument("--map", choices=PULLBACK_MAPS, required=True)
    _add_context_args(p, with_space=False)
    p.add_argument("--which", type=int, default=None, help="Label of the forgotten point")
    p.add_argument("--target", choices=[k.value for k in SpaceKind], default="pointed")
    p.add_argument("--inverse", action="store_true", help="omega to psi instead of psi to omega")
    p.set_defaults(handler=cmd_pullback)

    p = sub.add_parser("catalog", help="List the generator catalog")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("certify", help="Certify bigness or effectivity of K")
    p.add_argument("--space", choices=[k.value for k in SpaceKind], default=SpaceKind.pointed.value)
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--partition", type=str, default=None)
    p.add_argument("--level", choices=[lv.value for lv in Level], default=None)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--gens", type=str, default="auto", help="'auto' or comma separated names")
    p.add_argument("--coords", choices=("reduced", "all"), default=None)
    p.add_argument("--expect", choices=[v.value for v in Verdict], default=None)
    p.add_argument("--verify", type=str, default=None, help="Re-verify a stored certificate")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("table", help="Run a campaign and compare with its reference table")
    p.add_argument("--table", choices=[t.value for t in TableName], required=True)
    p.add_argument("--genera", type=str, default=None, help="e.g. 5-10 or 7,9")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("age", help="Reid-Tai age of an automorphism")
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--exponents", type=str, default=None, help="Explicit exponents, e.g. 1,0,0")
    p.add_argument("--all-units", action="store_true", help="Ages for every unit mod the order")
    p.add_argument("--nonhyperelliptic", action="store_true")
    p.add_argument("--hyperelliptic-involution", action="store_true")
    p.set_defaults(handler=cmd_age)
    return parser


def _config(args: argparse.Namespace) -> AppConfig:
    cfg = AppConfig.from_env()
    if args.jobs is not None:
        cfg = replace(cfg, jobs=args.jobs)
    if args.log_level is not None:
        cfg = replace(cfg, log_level=args.log_level)
    if args.out is not None:
        cfg = replace(cfg, output_dir=Path(args.out))
    return cfg


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        config = _config(args)
        logging.basicConfig(
            level=config.log_level,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
            force=True,
        )
        if args.command == "age" and args.g is None and args.exponents is None:
            raise UsageError("age needs --g or --exponents")
        return int(args.handler(args, config))
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ModuliError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
