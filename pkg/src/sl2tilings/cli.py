"""Command line interface.

Exit codes: 0 success, 1 verification failure / audit counterexample /
render refusal, 2 usage, parse, or unsupported-operation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .blocks import enumerate_block_classes, rank_deficiency_report
from .catalog import (
    WILDEST_LATTICE,
    PqrsParams,
    pqrs_tiling,
    unit_tiling,
    wildest_integer_tiling,
    z36_tiling,
)
from .errors import (
    StructuralError,
    UnsupportedOperationError,
    ValidationError,
)
from .gridio import GridParseError, parse_grid, write_grid
from .matrices import Matrix
from .rings import ModularRing
from .search import SearchConfig, brute_force_oracle, search_fully_wild
from .svg import RenderOptions, UnverifiedModelError, default_region, render_svg
from .tiling import (
    FormalParameters,
    NumericParameters,
    Patched,
    PeriodicBlock,
    RuleBased,
    Window,
    corner_audit,
    dodgson_audit,
    extract_window,
    parameter_position,
    verify_sl2,
    verify_window,
    wild_density_exact,
    wild_density_windows,
    zero_cross_audit,
)


def _describe(obj) -> str:
    if isinstance(obj, RuleBased):
        return f"rule over {obj.ring}"
    if isinstance(obj, PeriodicBlock):
        return f"periodic {obj.h}x{obj.w} over {obj.ring}"
    if isinstance(obj, Patched):
        lat = obj.lattice
        return (
            f"patched {lat.u}i+{lat.v}j={lat.t} (mod {lat.m}) over {obj.ring}"
        )
    i, j = obj.origin
    return f"window {obj.rows}x{obj.cols} at ({i}, {j}) over {obj.matrix.spec}"


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_grid(text)


def _emit(doc: str, out: str | None) -> None:
    if out:
        Path(out).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _parse_param_list(text: str) -> tuple[dict[int, int], int]:
    """--params entries `k=v` keyed by parameter index, plus `default=v`."""
    explicit: dict[int, int] = {}
    default = 1
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, raw = item.partition("=")
        if not sep:
            raise ValidationError(f"bad parameter entry {item!r}, expected k=v")
        try:
            value = int(raw)
        except ValueError:
            raise ValidationError(f"bad parameter value {raw!r}") from None
        if key == "default":
            default = value
        else:
            try:
                index = int(key)
            except ValueError:
                raise ValidationError(f"bad parameter index {key!r}") from None
            explicit[index] = value
    return explicit, default


def _cmd_generate(args) -> int:
    if args.family == "unit":
        model = unit_tiling()
    elif args.family == "z36":
        model = z36_tiling()
    elif args.family == "pqrs":
        missing = [k for k in ("p", "q", "r", "s") if getattr(args, k) is None]
        if missing:
            raise ValidationError(
                "pqrs needs --p --q --r --s, missing " + ", ".join(missing)
            )
        model = pqrs_tiling(PqrsParams(args.p, args.q, args.r, args.s))
    else:
        if args.formal and args.params:
            raise ValidationError("--formal and --params are mutually exclusive")
        if args.formal:
            model = wildest_integer_tiling(FormalParameters())
        elif args.params:
            by_index, default = _parse_param_list(args.params)
            positions = {
                parameter_position(WILDEST_LATTICE, k): v for k, v in by_index.items()
            }
            model = wildest_integer_tiling(
                NumericParameters.from_mapping(positions, default)
            )
        else:
            model = wildest_integer_tiling()
    _emit(write_grid(model, signed=args.signed), args.out)
    return 0


def _cmd_verify(args) -> int:
    obj = _load(args.file)
    if args.window is not None:
        if isinstance(obj, Window):
            raise ValidationError("--window applies to model documents only")
        i0, j0, h, w = args.window
        fault = verify_window(extract_window(obj, i0, j0, h, w))
    elif isinstance(obj, Window):
        fault = verify_window(obj)
    else:
        fault = verify_sl2(obj)
    ok = fault is None
    if args.json:
        violations = []
        if fault is not None:
            violations.append({"i": fault.i, "j": fault.j, "value": str(fault.value)})
        _print_json(
            {
                "command": "verify",
                "model": _describe(obj),
                "ok": ok,
                "violations": violations,
            }
        )
    elif ok:
        print("ok: every 2x2 determinant is 1")
    else:
        print(f"violation at ({fault.i}, {fault.j}): determinant {fault.value}")
    return 0 if ok else 1


def _cmd_density(args) -> int:
    obj = _load(args.file)
    if isinstance(obj, Window):
        raise ValidationError("density applies to model documents, not windows")
    if args.radii is not None:
        try:
            radii = [int(r) for r in args.radii.split(",") if r.strip()]
        except ValueError:
            raise ValidationError(f"bad radii list {args.radii!r}") from None
        samples = wild_density_windows(obj, radii)
        if args.json:
            _print_json(
                {
                    "command": "density",
                    "model": _describe(obj),
                    "ok": True,
                    "density": {
                        "samples": [
                            {
                                "radius": s.radius,
                                "wild": s.wild,
                                "total": s.total,
                                "ratio": float(s.ratio),
                            }
                            for s in samples
                        ]
                    },
                }
            )
        else:
            for s in samples:
                print(
                    f"r={s.radius} wild={s.wild} total={s.total} ratio={float(s.ratio):.6f}"
                )
    else:
        exact = wild_density_exact(obj)
        if args.json:
            _print_json(
                {
                    "command": "density",
                    "model": _describe(obj),
                    "ok": True,
                    "density": {
                        "exact_num": exact.numerator,
                        "exact_den": exact.denominator,
                    },
                }
            )
        else:
            print(f"exact wild density: {exact}")
    return 0


def _cmd_classes(args) -> int:
    obj = _load(args.file)
    classes = enumerate_block_classes(obj, args.n)
    if args.json:
        _print_json(
            {
                "command": "classes",
                "model": _describe(obj),
                "ok": True,
                "classes": [
                    {
                        "encoding": c.encoding,
                        "deficiency": None,
                        "method": None,
                        "orbit_size": c.orbit_size,
                    }
                    for c in classes
                ],
                "stats": {"n": args.n, "count": len(classes)},
            }
        )
    else:
        print(f"n={args.n}: {len(classes)} classes")
        for idx, c in enumerate(classes, 1):
            print(f"class {idx} (orbit {c.orbit_size}): {c.encoding}")
    return 0


def _cmd_rank(args) -> int:
    obj = _load(args.file)
    report = rank_deficiency_report(obj, args.n, mode=args.mode, seed=args.seed)
    if args.json:
        _print_json(
            {
                "command": "rank",
                "model": _describe(obj),
                "ok": True,
                "classes": [
                    {
                        "encoding": e.block_class.encoding,
                        "deficiency": e.deficiency,
                        "method": e.method,
                        "orbit_size": e.block_class.orbit_size,
                    }
                    for e in report.entries
                ],
                "stats": {"n": report.n, "count": len(report.entries)},
            }
        )
    else:
        print(f"n={report.n}: {len(report.entries)} rank entries")
        by_class: dict[str, int] = {}
        for e in report.entries:
            idx = by_class.setdefault(e.block_class.encoding, len(by_class) + 1)
            print(f"class {idx} [{e.method}]: deficiency {e.deficiency}")
    return 0


def _cmd_audit(args) -> int:
    obj = _load(args.file)
    checks = [name for name in ("dodgson", "corner", "cross") if getattr(args, name)]
    if not checks:
        checks = ["dodgson", "corner"]
    if isinstance(obj, Window):
        if args.window is not None:
            raise ValidationError("--window applies to model documents only")
        win = obj
    else:
        i0, j0, h, w = args.window if args.window is not None else (0, 0, 40, 40)
        win = extract_window(obj, i0 - 1, j0 - 1, h + 2, w + 2)
    runners = {
        "dodgson": dodgson_audit,
        "corner": corner_audit,
        "cross": zero_cross_audit,
    }
    findings = []
    for name in checks:
        finding = runners[name](win)
        if finding is not None:
            findings.append(finding)
    ok = not findings
    if args.json:
        _print_json(
            {
                "command": "audit",
                "model": _describe(obj),
                "ok": ok,
                "violations": [
                    {"i": f.i, "j": f.j, "check": f.check, "detail": f.detail}
                    for f in findings
                ],
            }
        )
    else:
        for f in findings:
            print(f"{f.check} violation at ({f.i}, {f.j}): {f.detail}")
        if ok:
            print("ok: " + ", ".join(checks))
    return 0 if ok else 1


def _cmd_search(args) -> int:
    if args.oracle and (args.budget is not None or args.jobs != 1 or args.prune_nonunits):
        raise ValidationError("--oracle does not combine with pruning, budgets, or jobs")
    if args.oracle:
        result = brute_force_oracle(args.modulus, args.rows, args.cols)
    else:
        result = search_fully_wild(
            SearchConfig(
                args.modulus,
                args.rows,
                args.cols,
                prune_nonunits=args.prune_nonunits,
                node_budget=args.budget,
                worker_count=args.jobs,
            )
        )
    stats = {
        "nodes": result.stats.nodes,
        "solutions": result.stats.solutions,
        "budget_exhausted": result.stats.budget_exhausted,
    }
    if args.json:
        _print_json(
            {
                "command": "search",
                "ok": True,
                "stats": stats,
                "solutions": [[list(row) for row in block] for block in result.solutions],
            }
        )
    else:
        ring = ModularRing(args.modulus)
        for block in result.solutions:
            doc = write_grid(PeriodicBlock(ring, Matrix.from_ints(ring, block)))
            sys.stdout.write(doc)
            print()
        print(
            f"# solutions={stats['solutions']} nodes={stats['nodes']} "
            f"budget_exhausted={str(stats['budget_exhausted']).lower()}"
        )
    return 0


def _cmd_render(args) -> int:
    obj = _load(args.file)
    region = tuple(args.window) if args.window is not None else None
    svg = render_svg(
        obj,
        region=region,
        options=RenderOptions(cell_size=args.cell_size, labels=args.labels),
        force=args.force,
    )
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2", description="SL2-tiling construction, analysis, and search"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a catalog model as a grid document")
    gen.add_argument("family", choices=["unit", "wildest", "pqrs", "z36"])
    gen.add_argument("--p", type=int, default=None)
    gen.add_argument("--q", type=int, default=None)
    gen.add_argument("--r", type=int, default=None)
    gen.add_argument("--s", type=int, default=None)
    gen.add_argument("--params", default=None, metavar="K=V,...",
                     help="numeric parameters by index, e.g. 1=5,3=-2,default=1")
    gen.add_argument("--formal", action="store_true")
    gen.add_argument("--signed", action="store_true",
                     help="render residues above N/2 as negatives")
    gen.add_argument("--out", default=None, metavar="FILE")
    gen.set_defaults(func=_cmd_generate)

    ver = sub.add_parser("verify", help="check every 2x2 determinant is 1")
    ver.add_argument("file")
    ver.add_argument("--window", nargs=4, type=int, metavar=("I0", "J0", "H", "W"))
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=_cmd_verify)

    den = sub.add_parser("density", help="wild density, exact or sampled over discs")
    den.add_argument("file")
    group = den.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true")
    group.add_argument("--radii", default=None, metavar="R1,R2,...")
    den.add_argument("--json", action="store_true")
    den.set_defaults(func=_cmd_density)

    cls = sub.add_parser("classes", help="equivalence classes of n x n blocks")
    cls.add_argument("file")
    cls.add_argument("--n", type=int, required=True)
    cls.add_argument("--json", action="store_true")
    cls.set_defaults(func=_cmd_classes)

    rnk = sub.add_parser("rank", help="rank deficiencies of block class representatives")
    rnk.add_argument("file")
    rnk.add_argument("--n", type=int, required=True)
    rnk.add_argument("--mode", choices=["symbolic", "probe", "both"], default="symbolic")
    rnk.add_argument("--seed", type=int, default=0)
    rnk.add_argument("--json", action="store_true")
    rnk.set_defaults(func=_cmd_rank)

    aud = sub.add_parser("audit", help="structural identity checks over a window")
    aud.add_argument("file")
    aud.add_argument("--dodgson", action="store_true")
    aud.add_argument("--corner", action="store_true")
    aud.add_argument("--cross", action="store_true")
    aud.add_argument("--window", nargs=4, type=int, metavar=("I0", "J0", "H", "W"))
    aud.add_argument("--json", action="store_true")
    aud.set_defaults(func=_cmd_audit)

    srch = sub.add_parser("search", help="search for fully-wild periodic blocks")
    srch.add_argument("--modulus", type=int, required=True)
    srch.add_argument("--rows", type=int, default=4)
    srch.add_argument("--cols", type=int, default=4)
    srch.add_argument("--prune-nonunits", action="store_true")
    srch.add_argument("--oracle", action="store_true",
                      help="brute-force enumeration instead of the DFS")
    srch.add_argument("--budget", type=int, default=None)
    srch.add_argument("--jobs", type=int, default=1)
    srch.add_argument("--json", action="store_true")
    srch.set_defaults(func=_cmd_search)

    ren = sub.add_parser("render", help="render a window to SVG")
    ren.add_argument("file")
    ren.add_argument("--out", required=True, metavar="FILE.svg")
    ren.add_argument("--cell-size", type=int, default=24, metavar="PX")
    ren.add_argument("--labels", action="store_true")
    ren.add_argument("--force", action="store_true")
    ren.add_argument("--window", nargs=4, type=int, metavar=("I0", "J0", "H", "W"))
    ren.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except GridParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, UnsupportedOperationError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnverifiedModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
