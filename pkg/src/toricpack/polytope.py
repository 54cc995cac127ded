"""Exact convex polytope machinery over the rationals.

Polytopes are handled in H-representation: an intersection of halfspaces
{x : <normal, x> >= offset} with primitive integral inward normals.  Vertex
enumeration offers two independent routes: exhaustive active-set search
(solve every n-subset of facets and filter), and an incremental double
description method for instances where the subset count explodes.  Both are
exact; tests hold them equal on small inputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    IntVec,
    Vec,
    affine_rank,
    as_vec,
    dot,
    gcd_primitive,
    mat_det,
    mat_rank,
    rat,
    solve_linear,
    vec_sub,
    SingularMatrixError,
)

# Above this many active-set candidates the enumerator switches to the
# double description route.
ACTIVE_SET_LIMIT = 2000


class PolytopeError(ValueError):
    pass


class EmptyPolytopeError(PolytopeError):
    pass


class UnboundedPolytopeError(PolytopeError):
    pass


class DegeneratePolytopeError(PolytopeError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    """Closed halfspace {x : <normal, x> >= offset}.

    The constructor rescales so the normal is primitive integral; the inward
    direction is preserved.
    """

    normal: IntVec
    offset: Fraction

    def __init__(self, normal, offset):
        ints = tuple(int(c) for c in normal)
        if ints != tuple(normal):
            raise ValueError("normal entries must be integers")
        prim, g = gcd_primitive(ints)
        object.__setattr__(self, "normal", prim)
        object.__setattr__(self, "offset", rat(offset) / g)

    def eval_at(self, x) -> Fraction:
        """Slack <normal, x> - offset; nonnegative inside."""
        return dot(self.normal, x) - self.offset


@dataclass(frozen=True)
class HPolytope:
    """Intersection of halfspaces in R^dim (not validated at construction)."""

    dim: int
    halfspaces: tuple[HalfSpace, ...]

    def __init__(self, dim, halfspaces):
        hs = tuple(halfspaces)
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        for h in hs:
            if len(h.normal) != dim:
                raise ValueError("halfspace dimension mismatch")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "halfspaces", hs)

    @property
    def num_facets(self) -> int:
        return len(self.halfspaces)


def hpolytope(dim: int, rows) -> HPolytope:
    """Build an HPolytope from (normal, offset) pairs."""
    return HPolytope(dim, tuple(HalfSpace(n, o) for n, o in rows))


@dataclass(frozen=True)
class VertexData:
    """Vertices in lexicographic order with facet incidence and edges.

    ``incidence[k]`` is the sorted tuple of facet indices active at vertex k;
    ``edges`` lists index pairs (i, j), i < j, whose common active set has
    rank dim - 1.
    """

    vertices: tuple[Vec, ...]
    incidence: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]


# ---------------------------------------------------------------------------
# Double description over integer cone rows.


class _LowRankCone(Exception):
    pass


def _normalize_ray(v: list[int]) -> IntVec:
    prim, _ = gcd_primitive(tuple(v))
    return prim


def _greedy_row_basis(rows: list[IntVec], dim: int) -> list[int]:
    """Indices of the first ``dim`` linearly independent rows."""
    basis: list[int] = []
    reduced: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, row in enumerate(rows):
        if len(basis) == dim:
            break
        work = [rat(c) for c in row]
        for rrow, piv in zip(reduced, pivots):
            if work[piv] != 0:
                f = work[piv]
                for c in range(dim):
                    work[c] -= f * rrow[c]
        piv = next((c for c in range(dim) if work[c] != 0), None)
        if piv is None:
            continue
        inv = 1 / work[piv]
        work = [x * inv for x in work]
        reduced.append(work)
        pivots.append(piv)
        basis.append(idx)
    return basis


def _dd_rays(rows: list[IntVec], dim: int) -> list[IntVec]:
    """Extreme rays of the pointed cone {x : r . x >= 0 for r in rows}.

    Incremental double description with the combinatorial adjacency test;
    tight sets are bitmasks indexed by row position.  Raises _LowRankCone
    when rank(rows) < dim (the cone has lineality, hence no extreme rays).
    """
    basis = _greedy_row_basis(rows, dim)
    if len(basis) < dim:
        raise _LowRankCone()

    bmat = [rows[i] for i in basis]
    inv_cols = _inverse_cols(bmat)
    denom = math.lcm(*(f.denominator for col in inv_cols for f in col))
    rays: list[IntVec] = []
    masks: list[int] = []
    for j, col in enumerate(inv_cols):
        rays.append(_normalize_ray([int(f * denom) for f in col]))
        m = 0
        for pos, i in enumerate(basis):
            if pos != j:
                m |= 1 << i
        masks.append(m)

    need = dim - 2
    basis_set = set(basis)
    for k in (i for i in range(len(rows)) if i not in basis_set):
        nz = [(c, coef) for c, coef in enumerate(rows[k]) if coef]
        dots = [sum(coef * r[c] for c, coef in nz) for r in rays]
        pos = [i for i, d in enumerate(dots) if d > 0]
        zero = [i for i, d in enumerate(dots) if d == 0]
        neg = [i for i, d in enumerate(dots) if d < 0]
        if not neg:
            bit = 1 << k
            for i in zero:
                masks[i] |= bit
            continue
        if not pos and not zero:
            return []

        # Rays tight on a given row, for narrowing the adjacency scan.
        buckets: dict[int, list[int]] = {}
        for i, m in enumerate(masks):
            mm = m
            while mm:
                low = mm & -mm
                buckets.setdefault(low, []).append(i)
                mm ^= low

        new_rays: list[IntVec] = []
        new_masks: list[int] = []
        bit_k = 1 << k
        for p in pos:
            mp = masks[p]
            dp = dots[p]
            rp = rays[p]
            for m in neg:
                common = mp & masks[m]
                if common.bit_count() < need:
                    continue
                # Scan the smallest bucket among the common tight rows.
                scan: list[int] | None = None
                mm = common
                while mm:
                    low = mm & -mm
                    b = buckets.get(low, [])
                    if scan is None or len(b) < len(scan):
                        scan = b
                    mm ^= low
                if any(
                    i != p and i != m and (masks[i] & common) == common
                    for i in (scan or ())
                ):
                    continue
                dm = dots[m]
                rm = rays[m]
                new_rays.append(
                    _normalize_ray([dp * rm[c] - dm * rp[c] for c in range(dim)])
                )
                new_masks.append(common | bit_k)
        keep = pos + zero
        rays = [rays[i] for i in keep] + new_rays
        masks = [masks[i] | (bit_k if i in zero else 0) for i in keep] + new_masks
    return rays


def _inverse_cols(bmat) -> list[list[Fraction]]:
    n = len(bmat)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(list(solve_linear(bmat, e)))
    return cols


def _homogenized_rows(P: HPolytope) -> list[IntVec]:
    """Integer rows of the lifted cone {(x0, x) : x0 >= 0, <u,x> >= l*x0}."""
    rows: list[IntVec] = [(1,) + (0,) * P.dim]
    for h in P.halfspaces:
        q = h.offset.denominator
        row = (-h.offset.numerator,) + tuple(q * c for c in h.normal)
        rows.append(_normalize_ray(list(row)))
    return rows


def _insertion_order(rows: list[IntVec]) -> list[IntVec]:
    def last_nonzero(r: IntVec) -> int:
        for i in range(len(r) - 1, -1, -1):
            if r[i] != 0:
                return i
        return -1

    indexed = list(enumerate(rows))
    indexed.sort(key=lambda t: (last_nonzero(t[1]), t[0]))
    return [r for _, r in indexed]


def _cone_vertices_and_rays(P: HPolytope) -> tuple[list[Vec], list[IntVec]]:
    """Split extreme rays of the homogenized cone into vertices and
    recession directions.  Handles low-rank systems by passing to the
    quotient modulo the lineality space."""
    rows = _insertion_order(_homogenized_rows(P))
    d = P.dim + 1
    try:
        rays = _dd_rays(rows, d)
    except _LowRankCone:
        # Quotient by the lineality space: parametrize x = B^T y with B a
        # row-space basis; the x0 coordinate descends to the quotient.
        basis_rows: list[IntVec] = []
        for row in rows:
            cand = basis_rows + [row]
            if mat_rank(cand) > len(basis_rows):
                basis_rows.append(row)
        r = len(basis_rows)
        projected = [
            tuple(dot(row, b) for b in basis_rows) for row in rows
        ]
        qrays = _dd_rays([_normalize_ray(list(p)) for p in projected], r)
        for y in qrays:
            x0 = sum(y[j] * basis_rows[j][0] for j in range(r))
            if x0 != 0:
                raise UnboundedPolytopeError("unbounded polytope")
        raise EmptyPolytopeError("empty polytope")

    verts: list[Vec] = []
    recession: list[IntVec] = []
    for ray in rays:
        if ray[0] == 0:
            recession.append(ray[1:])
        else:
            t = Fraction(1, ray[0])
            verts.append(tuple(t * c for c in ray[1:]))
    return verts, recession


def _recession_nontrivial(P: HPolytope) -> bool:
    """True iff the recession cone {x : <u_i, x> >= 0} contains a ray."""
    rows = [h.normal for h in P.halfspaces]
    if mat_rank(rows) < P.dim:
        return True
    return bool(_dd_rays(_insertion_order(rows), P.dim))


# ---------------------------------------------------------------------------
# Vertex enumeration.


def _vertices_active_set(P: HPolytope) -> list[Vec]:
    n = P.dim
    found: set[Vec] = set()
    for combo in itertools.combinations(range(P.num_facets), n):
        rows = [P.halfspaces[i].normal for i in combo]
        rhs = [P.halfspaces[i].offset for i in combo]
        try:
            x = solve_linear(rows, rhs)
        except SingularMatrixError:
            continue
        if all(h.eval_at(x) >= 0 for h in P.halfspaces):
            found.add(x)
    return list(found)


def _vertices_dd(P: HPolytope) -> list[Vec]:
    verts, recession = _cone_vertices_and_rays(P)
    # A pointed lifted cone with no ray at x0 > 0 has no x0 > 0 points at
    # all, so emptiness takes precedence over leftover recession rays.
    if not verts:
        raise EmptyPolytopeError("empty polytope")
    if recession:
        raise UnboundedPolytopeError("unbounded polytope")
    return verts


def vertex_set(P: HPolytope, method: str = "auto") -> tuple[Vec, ...]:
    """Sorted vertex tuple without incidence or edge data.

    Same enumeration routes as :func:`enumerate_vertices`; use this when the
    combinatorial structure is not needed (it skips the per-vertex facet
    scans, which dominate on polytopes with many vertices).
    """
    if P.num_facets == 0:
        raise UnboundedPolytopeError("unbounded polytope")
    if method == "auto":
        method = (
            "active-set"
            if math.comb(P.num_facets, P.dim) <= ACTIVE_SET_LIMIT
            else "double-description"
        )
    if method == "active-set":
        verts = _vertices_active_set(P)
        if not verts:
            verts = _vertices_dd(P)
        elif _recession_nontrivial(P):
            raise UnboundedPolytopeError("unbounded polytope")
    elif method == "double-description":
        verts = _vertices_dd(P)
    else:
        raise ValueError(f"unknown enumeration method: {method!r}")
    return tuple(sorted(verts))


def enumerate_vertices(
    P: HPolytope, method: str = "auto", with_edges: bool = True
) -> VertexData:
    """All vertices of a bounded polytope, lexicographically sorted.

    ``method`` is "active-set", "double-description", or "auto" (active-set
    while C(F, n) stays small).  Raises on empty or unbounded input.
    """
    verts = vertex_set(P, method)
    incidence = tuple(
        tuple(i for i, h in enumerate(P.halfspaces) if h.eval_at(v) == 0)
        for v in verts
    )
    edges = _edges_from_incidence(P, verts, incidence) if with_edges else ()
    return VertexData(verts, incidence, tuple(edges))


def _edges_from_incidence(P, verts, incidence) -> list[tuple[int, int]]:
    n = P.dim
    sets = [frozenset(inc) for inc in incidence]
    edges = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            common = sets[i] & sets[j]
            if len(common) < n - 1:
                continue
            if mat_rank([P.halfspaces[k].normal for k in sorted(common)]) == n - 1:
                edges.append((i, j))
    return edges


def remove_redundant(P: HPolytope) -> HPolytope:
    """Minimal H-representation: keep exactly the halfspaces supporting a
    facet (a tight vertex set of affine rank dim - 1)."""
    vd = enumerate_vertices(P, with_edges=False)
    if affine_rank(vd.vertices) < P.dim:
        raise DegeneratePolytopeError("degenerate polytope")
    keep: list[HalfSpace] = []
    seen: set[tuple] = set()
    for i, h in enumerate(P.halfspaces):
        tight = [v for v, inc in zip(vd.vertices, vd.incidence) if i in inc]
        if affine_rank(tight) != P.dim - 1:
            continue
        key = (h.normal, h.offset)
        if key in seen:
            continue
        seen.add(key)
        keep.append(h)
    return HPolytope(P.dim, tuple(keep))


def contains(P: HPolytope, x) -> bool:
    """Closed membership test."""
    pt = as_vec(x)
    if len(pt) != P.dim:
        raise ValueError("dimension mismatch")
    return all(h.eval_at(pt) >= 0 for h in P.halfspaces)


# ---------------------------------------------------------------------------
# Volume by recursive facet triangulation.


def volume(P: HPolytope, vd: VertexData | None = None) -> Fraction:
    """Exact Euclidean volume.

    Anchors at the lexicographically smallest vertex, triangulates every
    facet not containing it recursively, and sums |det| / n! per simplex.
    """
    if vd is None:
        vd = enumerate_vertices(P, with_edges=False)
    n = P.dim
    verts = vd.vertices
    if affine_rank(verts) < n:
        raise DegeneratePolytopeError("degenerate polytope")
    inc = [frozenset(s) for s in vd.incidence]

    def subdivide(face: tuple[int, ...], d: int) -> list[tuple[int, ...]]:
        if d == 1:
            if len(face) != 2:
                raise PolytopeError("malformed edge during triangulation")
            return [face]
        anchor = face[0]  # indices are in vertex lex order already
        face_set = set(face)
        simplices: list[tuple[int, ...]] = []
        seen: set[frozenset[int]] = set()
        for h in range(P.num_facets):
            tight = tuple(i for i in face if h in inc[i])
            if len(tight) == len(face_set) or not tight:
                continue
            pts = [verts[i] for i in tight]
            if affine_rank(pts) != d - 1:
                continue
            key = frozenset(tight)
            if key in seen or anchor in key:
                continue
            seen.add(key)
            for s in subdivide(tight, d - 1):
                simplices.append((anchor,) + s)
        return simplices

    total = Fraction(0)
    for s in subdivide(tuple(range(len(verts))), n):
        rows = [vec_sub(verts[i], verts[s[0]]) for i in s[1:]]
        total += abs(mat_det(rows))
    return total / math.factorial(n)


# ---------------------------------------------------------------------------
# Intersection.


@dataclass(frozen=True)
class Intersection:
    """Result of intersecting two H-polytopes.

    ``affine_dim`` is -1 when empty; ``hrep`` carries the concatenated
    constraints (reduced when the result is full-dimensional).
    """

    vertices: tuple[Vec, ...]
    affine_dim: int
    hrep: HPolytope

    @property
    def is_empty(self) -> bool:
        return self.affine_dim < 0


def intersect(P: HPolytope, Q: HPolytope) -> Intersection:
    """Intersection of two polytopes of the same ambient dimension."""
    if P.dim != Q.dim:
        raise ValueError("ambient dimension mismatch")
    combined = HPolytope(P.dim, P.halfspaces + Q.halfspaces)
    try:
        vd = enumerate_vertices(combined, with_edges=False)
    except EmptyPolytopeError:
        return Intersection((), -1, combined)
    dim = affine_rank(vd.vertices)
    hrep = remove_redundant(combined) if dim == P.dim else combined
    return Intersection(vd.vertices, dim, hrep)
