"""JSON wire formats and report documents.

All exact values travel as "p/q" strings (plain "p" for integers); decimal
fields are presentation-only and labeled as such.  Dict key order is fixed
by construction so identical inputs serialize byte-identically.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .delzant import (
    DelzantPolytope,
    fan_of,
    make_chopped_simplex,
    make_cube,
    make_product,
    make_simplex,
    rational_length,
    scale,
    validate_delzant,
)
from .linalg import format_rat, rat
from .packing import Packing, build_packing_polytope
from .perturb import ScanResult
from .polytope import HPolytope, HalfSpace


class SpecFileError(ValueError):
    """Schema-level problem in a polytope spec document."""


def hrep_to_json(P: HPolytope) -> dict[str, Any]:
    return {
        "dim": P.dim,
        "halfspaces": [
            {"normal": list(h.normal), "offset": format_rat(h.offset)}
            for h in P.halfspaces
        ],
    }


def hrep_from_json(doc: dict[str, Any]) -> HPolytope:
    try:
        dim = int(doc["dim"])
        rows = [
            HalfSpace(tuple(int(c) for c in h["normal"]), rat(h["offset"]))
            for h in doc["halfspaces"]
        ]
    except (KeyError, TypeError) as exc:
        raise SpecFileError(f"malformed H-representation: {exc}") from exc
    return HPolytope(dim, tuple(rows))


def vdata_to_json(D: DelzantPolytope) -> dict[str, Any]:
    return {
        "vertices": [[format_rat(c) for c in v] for v in D.vertices],
        "edges": [list(e) for e in D.vdata.edges],
    }


# ---------------------------------------------------------------------------
# Spec files: {"halfspaces": ...} or {"generator": ..., "args": [...]}.

GENERATOR_NAMES = ("simplex", "cube", "product", "chopped_simplex", "scale")


def generator_polytope(name: str, args: list[str]) -> DelzantPolytope:
    """Instantiate one of the named example generators from string args.

    Composite generators (product, scale) take colon-joined sub-generator
    specs such as "simplex:2:1".
    """
    if name == "simplex":
        if len(args) not in (1, 2):
            raise SpecFileError("simplex takes: n [scale]")
        return make_simplex(int(args[0]), rat(args[1]) if len(args) > 1 else 1)
    if name == "cube":
        if len(args) not in (1, 2):
            raise SpecFileError("cube takes: n [scale]")
        return make_cube(int(args[0]), rat(args[1]) if len(args) > 1 else 1)
    if name == "chopped_simplex":
        if len(args) not in (2, 3):
            raise SpecFileError("chopped_simplex takes: eps1 eps2 [n]")
        n = int(args[2]) if len(args) > 2 else 2
        return make_chopped_simplex(rat(args[0]), rat(args[1]), n)
    if name == "product":
        if len(args) != 2:
            raise SpecFileError("product takes: spec_a spec_b")
        return make_product(_colon_spec(args[0]), _colon_spec(args[1]))
    if name == "scale":
        if len(args) != 2:
            raise SpecFileError("scale takes: spec lam")
        return scale(_colon_spec(args[0]), rat(args[1]))
    raise SpecFileError(f"unknown generator: {name}")


def _colon_spec(spec: str) -> DelzantPolytope:
    parts = spec.split(":")
    if not parts or parts[0] not in GENERATOR_NAMES:
        raise SpecFileError(f"unknown generator spec: {spec}")
    return generator_polytope(parts[0], parts[1:])


def load_spec_document(doc: dict[str, Any]) -> tuple[str | None, DelzantPolytope]:
    """Parse a polytope spec document into a validated Delzant polytope."""
    if not isinstance(doc, dict):
        raise SpecFileError("spec document must be a JSON object")
    name = doc.get("name")
    has_h = "halfspaces" in doc
    has_g = "generator" in doc
    if has_h and has_g:
        raise SpecFileError("spec may carry halfspaces or a generator, not both")
    if has_g:
        args = [str(a) for a in doc.get("args", [])]
        return name, generator_polytope(str(doc["generator"]), args)
    if has_h:
        return name, validate_delzant(hrep_from_json(doc))
    raise SpecFileError("spec needs a halfspaces or generator entry")


def load_spec_file(path: str) -> tuple[str | None, DelzantPolytope]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return load_spec_document(doc)


def spec_file_document(D: DelzantPolytope, name: str | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {}
    if name:
        doc["name"] = name
    doc.update(hrep_to_json(D.hrep))
    return doc


# ---------------------------------------------------------------------------
# Reports.


def info_report(D: DelzantPolytope, name: str | None = None) -> dict[str, Any]:
    """Machine report: vertices, edges with lattice lengths, frames, radii,
    pairwise bounds, and the fan rays."""
    fan = fan_of(D)
    edges = [
        {
            "vertices": list(e),
            "length": format_rat(
                rational_length(D.vertices[e[0]], D.vertices[e[1]])
            ),
        }
        for e in D.vdata.edges
    ]
    doc: dict[str, Any] = {}
    if name:
        doc["name"] = name
    doc.update(
        {
            "dim": D.dim,
            "num_facets": D.hrep.num_facets,
            "euler_characteristic": D.euler_characteristic,
            "volume": format_rat(D.euclidean_volume),
            "halfspaces": hrep_to_json(D.hrep)["halfspaces"],
            "vertices": [[format_rat(c) for c in v] for v in D.vertices],
            "vertex_facet_incidence": [list(s) for s in D.vdata.incidence],
            "edges": edges,
            "frames": [
                {
                    "vertex": f.vertex_index,
                    "directions": [list(u) for u in f.directions],
                    "lengths": [format_rat(t) for t in f.lengths],
                    "neighbors": list(f.neighbor_indices),
                }
                for f in D.frames
            ],
            "corner_radii": [format_rat(r) for r in D.corner_radii],
            "pair_bounds": [
                [format_rat(x) for x in row] for row in D.pair_bounds
            ],
            "fan_rays": [list(c.normals[0]) for c in fan.rays],
        }
    )
    return doc


def pack_report(
    D: DelzantPolytope,
    max_density: Fraction,
    packings: tuple[Packing, ...],
    name: str | None = None,
    all_maximizers: bool = True,
) -> dict[str, Any]:
    doc: dict[str, Any] = {}
    if name:
        doc["name"] = name
    listed = packings if all_maximizers else packings[:1]
    doc.update(
        {
            "dim": D.dim,
            "max_density": format_rat(max_density),
            "num_maximizers": len(packings),
            "maximal_packings": [
                [format_rat(c) for c in p.radii] for p in listed
            ],
            "packing_polytope": hrep_to_json(build_packing_polytope(D).hrep),
        }
    )
    return doc


def scan_csv(res: ScanResult) -> str:
    """CSV rows: exact t, volume, omega plus the omega^(1/n) decimal."""
    lines = ["t,volume,omega,omega_decimal,n_maximizers"]
    for t, vol, om, dec, cnt in zip(
        res.ts, res.volumes, res.omegas, res.omega_root_decimals, res.maximizer_counts
    ):
        lines.append(
            f"{format_rat(t)},{format_rat(vol)},{format_rat(om)},{dec},{cnt}"
        )
    return "\n".join(lines) + "\n"


def scan_summary(res: ScanResult) -> dict[str, Any]:
    return {
        "samples": res.samples,
        "vol_root_midpoint_concave": res.vol_root_midpoint_concave,
        "vol_root_strictly_concave_somewhere": res.vol_root_strictly_concave_somewhere,
        "vol_root_all_midpoints_equal": res.vol_root_all_midpoints_equal,
        "omega_root_midpoint_convex_near_zero": res.omega_root_midpoint_convex_near_zero,
        "endpoints_homothetic": res.endpoints_homothetic,
        "omega_start": format_rat(res.omegas[0]),
        "omega_end": format_rat(res.omegas[-1]),
    }


def dumps(doc: Any) -> str:
    """Deterministic JSON rendering (stable key order by construction)."""
    return json.dumps(doc, indent=2) + "\n"
