"""Command-line interface.

Exit codes: 0 success, 1 I/O or parse failure, 2 domain validation failure,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from .delzant import NotDelzantError
from .jsonio import (
    SpecFileError,
    dumps,
    generator_polytope,
    info_report,
    load_spec_document,
    pack_report,
    scan_csv,
    scan_summary,
    spec_file_document,
)
from .linalg import format_rat, rat
from .packing import maximize, realize
from .perturb import (
    DEFAULT_SEED,
    PerturbationError,
    ScanError,
    safe_radius_estimate,
    scan_segment,
)
from .polytope import PolytopeError, enumerate_vertices
from .svgrender import boundary_order, render_packing_svg


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage problems to exit code 1
        raise UsageError(message)


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return load_spec_document(doc)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_validate(args) -> int:
    name, D = _load(args.spec)
    if args.json:
        doc = {
            "valid": True,
            "dim": D.dim,
            "num_facets": D.hrep.num_facets,
            "num_vertices": D.num_vertices,
            "volume": format_rat(D.euclidean_volume),
        }
        if name:
            doc = {"name": name, **doc}
        sys.stdout.write(dumps(doc))
    else:
        label = f"{name}: " if name else ""
        sys.stdout.write(
            f"{label}valid Delzant polytope: dim {D.dim}, "
            f"{D.hrep.num_facets} facets, {D.num_vertices} vertices, "
            f"volume {format_rat(D.euclidean_volume)}\n"
        )
    return 0


def cmd_info(args) -> int:
    name, D = _load(args.spec)
    doc = info_report(D, name)
    if args.safe_radius:
        doc["safe_radius_estimate"] = format_rat(
            safe_radius_estimate(D, seed=args.seed)
        )
    sys.stdout.write(dumps(doc))
    return 0


def _render_svg(D, packing) -> str:
    vd = D.vdata
    order = boundary_order(vd.vertices, vd.edges)
    polygon = [vd.vertices[i] for i in order]
    labels = [f"r={format_rat(D.corner_radii[i])}" for i in order]
    hulls = []
    for simplex in realize(D, packing.radii):
        hull_vd = enumerate_vertices(simplex.hull, with_edges=True)
        horder = boundary_order(hull_vd.vertices, hull_vd.edges)
        hulls.append([hull_vd.vertices[i] for i in horder])
    return render_packing_svg(polygon, hulls, labels)


def cmd_pack(args) -> int:
    name, D = _load(args.spec)
    max_density, packings = maximize(D)
    doc = pack_report(D, max_density, packings, name, all_maximizers=args.all)
    if args.render:
        if D.dim != 2:
            raise PolytopeError("SVG rendering needs a planar polytope")
        _emit(_render_svg(D, packings[0]), args.render)
    if args.json:
        sys.stdout.write(dumps(doc))
    else:
        label = f"{name}: " if name else ""
        sys.stdout.write(
            f"{label}max density {format_rat(max_density)} "
            f"({len(packings)} maximal packing(s))\n"
        )
        for radii in doc["maximal_packings"]:
            sys.stdout.write("  " + " ".join(radii) + "\n")
    return 0


def cmd_scan(args) -> int:
    _, D = _load(args.base)
    with open(args.dir, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "s2" not in doc:
        raise SpecFileError('direction file needs an "s2" entry (and optional "s1")')
    s2 = [rat(c) for c in doc["s2"]]
    s1 = [rat(c) for c in doc.get("s1", [0] * len(s2))]
    res = scan_segment(D, s1, s2, args.samples)
    _emit(scan_csv(res), args.csv)
    summary = dumps(scan_summary(res))
    if args.summary is None:
        sys.stderr.write(summary)
    else:
        _emit(summary, args.summary)
    return 0


def cmd_family(args) -> int:
    D = generator_polytope(args.generator, args.args)
    label = args.name or args.generator
    _emit(dumps(spec_file_document(D, label)), args.out)
    return 0


def cmd_render(args) -> int:
    name, D = _load(args.spec)
    if D.dim != 2:
        raise PolytopeError("SVG rendering needs a planar polytope")
    _, packings = maximize(D)
    _emit(_render_svg(D, packings[0]), args.out)
    return 0


def build_parser() -> _Parser:
    p = _Parser(prog="toricpack", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the Delzant condition")
    v.add_argument("spec")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_validate)

    i = sub.add_parser("info", help="full JSON report of the polytope data")
    i.add_argument("spec")
    i.add_argument("--json", action="store_true", help="accepted; info is always JSON")
    i.add_argument("--safe-radius", action="store_true", dest="safe_radius")
    i.add_argument("--seed", type=int, default=DEFAULT_SEED)
    i.set_defaults(func=cmd_info)

    k = sub.add_parser("pack", help="maximal packing density and maximizers")
    k.add_argument("spec")
    k.add_argument("--all", action="store_true", help="list every maximizer")
    k.add_argument("--json", action="store_true")
    k.add_argument("--render", metavar="PATH", help="write an SVG (dim 2 only)")
    k.set_defaults(func=cmd_pack)

    s = sub.add_parser("scan", help="density scan along an offset segment")
    s.add_argument("--base", required=True)
    s.add_argument("--dir", required=True, help='JSON with "s2" (and optional "s1")')
    s.add_argument("--samples", type=int, default=16)
    s.add_argument("--csv", metavar="PATH", help="CSV output (default stdout)")
    s.add_argument("--summary", metavar="PATH", help="summary JSON (default stderr)")
    s.set_defaults(func=cmd_scan)

    f = sub.add_parser("family", help="emit a spec file from a generator")
    f.add_argument("generator")
    f.add_argument("args", nargs="*")
    f.add_argument("-o", "--out", metavar="PATH")
    f.add_argument("--name")
    f.set_defaults(func=cmd_family)

    r = sub.add_parser("render", help="SVG of a maximal packing (dim 2)")
    r.add_argument("spec")
    r.add_argument("out")
    r.set_defaults(func=cmd_render)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, SpecFileError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (NotDelzantError, PerturbationError, ScanError, PolytopeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # pragma: no cover - internal invariant breach
        sys.stderr.write(f"internal error: {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
