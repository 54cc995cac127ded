"""Packings of a Delzant polytope by admissible corner simplices.

A packing assigns a radius x_i >= 0 to every vertex of the polytope; the
feasible radii vectors form a convex polytope in R^V cut out by
nonnegativity and the pairwise bounds x_i + x_j <= pair_bounds[i][j].  The
packed fraction of the volume is sum(x_i^n) / (n! vol), a strictly convex
function for n >= 2, so its maximum over the feasible set is attained at
vertices and the maximizers are finitely many.  A geometric disjointness
oracle based on exact pairwise intersection is provided as an independent
cross-check of the constraint description.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .delzant import DelzantPolytope
from .linalg import IntVec, Vec, as_vec, dot, mat_inverse, vec_add
from .polytope import HalfSpace, HPolytope, intersect, vertex_set, volume


@dataclass(frozen=True)
class PackingPolytope:
    """Feasible radii vectors of a Delzant polytope, in H-representation.

    Constraints come in the fixed order: x_i >= 0 for each vertex, then
    x_i + x_j <= bound for every unordered pair (i, j) in lexicographic
    order.  Nonadjacent pairs are bounded by the radius sum, adjacent pairs
    by the shared edge length.
    """

    source: DelzantPolytope
    hrep: HPolytope

    @property
    def num_centers(self) -> int:
        return self.source.num_vertices


@dataclass(frozen=True)
class Packing:
    """A feasible radii vector together with its exact density."""

    radii: Vec
    density: Fraction


@dataclass(frozen=True)
class AdmissibleSimplex:
    """The unique admissible simplex of a given radius at a vertex.

    ``hull`` is the closed convex hull; the packing convention excludes the
    facet opposite the center, ``hull.halfspaces[outer_facet_index]``.  The
    simplex is the image of the model corner {x >= 0, sum x <= radius}
    under x -> frame . x + center with the frame columns the primitive edge
    directions at the vertex.
    """

    center_index: int
    radius: Fraction
    frame_columns: tuple[IntVec, ...]
    center: Vec
    hull: HPolytope
    outer_facet_index: int

    def apply(self, x) -> Vec:
        """Affine map sending the model corner into the polytope."""
        pt = as_vec(x)
        img = [Fraction(0)] * len(self.center)
        for col, coeff in zip(self.frame_columns, pt):
            img = [a + coeff * c for a, c in zip(img, col)]
        return vec_add(tuple(img), self.center)

    def hull_volume(self) -> Fraction:
        return volume(self.hull)


def build_packing_polytope(D: DelzantPolytope) -> PackingPolytope:
    """Constraint system for the feasible radii vectors of D."""
    V = D.num_vertices
    rows: list[HalfSpace] = []
    for i in range(V):
        rows.append(HalfSpace(tuple(int(k == i) for k in range(V)), 0))
    for i in range(V):
        for j in range(i + 1, V):
            normal = tuple(-int(k == i) - int(k == j) for k in range(V))
            rows.append(HalfSpace(normal, -D.pair_bounds[i][j]))
    return PackingPolytope(D, HPolytope(V, tuple(rows)))


def is_feasible(PP: PackingPolytope, x) -> bool:
    pt = as_vec(x)
    if len(pt) != PP.num_centers:
        raise ValueError("radii vector length mismatch")
    return all(h.eval_at(pt) >= 0 for h in PP.hrep.halfspaces)


def density(D: DelzantPolytope, x) -> Fraction:
    """Packed volume fraction sum(x_i^n) / (n! vol) of a radii vector."""
    pt = as_vec(x)
    if len(pt) != D.num_vertices:
        raise ValueError("radii vector length mismatch")
    if any(c < 0 for c in pt):
        raise ValueError("radii must be nonnegative")
    n = D.dim
    return sum(c**n for c in pt) / (math.factorial(n) * D.euclidean_volume)


def _pruned_constraint_system(D: DelzantPolytope) -> HPolytope:
    """Equivalent reduced system used for vertex enumeration.

    A pair constraint with bound >= r_i + r_j is implied: the minimal edge
    at vertex i gives x_i + x_k <= r_i with x_k >= 0, hence x_i <= r_i, and
    likewise for j.  Dropping those rows leaves the feasible set unchanged
    while shrinking the enumeration input considerably.
    """
    V = D.num_vertices
    r = D.corner_radii
    rows: list[HalfSpace] = []
    for i in range(V):
        rows.append(HalfSpace(tuple(int(k == i) for k in range(V)), 0))
    for i in range(V):
        for j in range(i + 1, V):
            bound = D.pair_bounds[i][j]
            if bound >= r[i] + r[j]:
                continue
            normal = tuple(-int(k == i) - int(k == j) for k in range(V))
            rows.append(HalfSpace(normal, -bound))
    return HPolytope(V, tuple(rows))


def packing_polytope_vertices(D: DelzantPolytope, method: str = "auto") -> tuple[Vec, ...]:
    """All vertices of the packing polytope, lexicographically sorted."""
    return vertex_set(_pruned_constraint_system(D), method)


def maximize(D: DelzantPolytope) -> tuple[Fraction, tuple[Packing, ...]]:
    """Exact maximum density and all maximal packings.

    Enumerates the vertices of the packing polytope, evaluates the density
    at each, and keeps every exact tie, in lexicographic radii order.
    """
    verts = packing_polytope_vertices(D)
    n = D.dim
    denom = math.factorial(n) * D.euclidean_volume
    best: Fraction | None = None
    argmax: list[Vec] = []
    for v in verts:
        val = sum(c**n for c in v) / denom
        if best is None or val > best:
            best = val
            argmax = [v]
        elif val == best:
            argmax.append(v)
    assert best is not None
    return best, tuple(Packing(v, best) for v in argmax)


def realize(D: DelzantPolytope, x) -> tuple[AdmissibleSimplex, ...]:
    """Admissible simplices of a feasible radii vector (positive radii only)."""
    pt = as_vec(x)
    if not is_feasible(build_packing_polytope(D), pt):
        raise ValueError("not a packing")
    return tuple(
        admissible_simplex(D, i, c) for i, c in enumerate(pt) if c > 0
    )


def admissible_simplex(D: DelzantPolytope, i: int, radius) -> AdmissibleSimplex:
    """The unique admissible simplex of the given radius at vertex i."""
    r = Fraction(radius)
    if r < 0 or r > D.corner_radii[i]:
        raise ValueError(
            f"radius {r} outside [0, {D.corner_radii[i]}] at vertex {i}"
        )
    frame = D.frames[i]
    v = D.vertices[i]
    n = D.dim
    inv = mat_inverse(frame.matrix())
    if any(c.denominator != 1 for row in inv for c in row):
        raise ArithmeticError("frame inverse not integral; validation broken")
    rows: list[HalfSpace] = []
    for k in range(n):
        # Row k of the inverse frame: the model coordinate x_k >= 0.
        normal = tuple(int(c) for c in inv[k])
        rows.append(HalfSpace(normal, dot(normal, v)))
    outer = tuple(-sum(int(inv[k][c]) for k in range(n)) for c in range(n))
    rows.append(HalfSpace(outer, dot(outer, v) - r))
    return AdmissibleSimplex(
        center_index=i,
        radius=r,
        frame_columns=frame.directions,
        center=v,
        hull=HPolytope(n, tuple(rows)),
        outer_facet_index=n,
    )


def simplices_disjoint(
    D: DelzantPolytope, i: int, xi, j: int, xj
) -> bool:
    """Exact disjointness of two half-open admissible simplices.

    The closed hulls are intersected exactly; the half-open simplices are
    disjoint iff the intersection is empty or lies inside the excluded
    outer facet hyperplane of either simplex (a convex set contained in a
    union of two hyperplanes lies in one of them).
    """
    si = admissible_simplex(D, i, xi)
    sj = admissible_simplex(D, j, xj)
    overlap = intersect(si.hull, sj.hull)
    if overlap.is_empty:
        return True
    for s in (si, sj):
        h = s.hull.halfspaces[s.outer_facet_index]
        if all(h.eval_at(v) == 0 for v in overlap.vertices):
            return True
    return False


def disjointness_oracle(D: DelzantPolytope, x) -> bool:
    """Pairwise geometric disjointness of the realized simplices.

    Requires each radius to be individually admissible (0 <= x_i <= r_i);
    radii of zero contribute no simplex.
    """
    pt = as_vec(x)
    if len(pt) != D.num_vertices:
        raise ValueError("radii vector length mismatch")
    for i, c in enumerate(pt):
        if c < 0 or c > D.corner_radii[i]:
            raise ValueError(f"radius {c} not admissible at vertex {i}")
    active = [i for i, c in enumerate(pt) if c > 0]
    for a in range(len(active)):
        for b in range(a + 1, len(active)):
            i, j = active[a], active[b]
            if not simplices_disjoint(D, i, pt[i], j, pt[j]):
                return False
    return True
