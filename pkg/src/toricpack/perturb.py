"""Offset perturbation families of a Delzant polytope.

Moving each facet offset by s^i sweeps out a family of polytopes with the
same normals.  Admissible parameters keep the facet count, the Delzant
property, and the normal fan; along segments of admissible parameters the
polytopes interpolate Minkowski-linearly, their vertices are affine in the
parameter, and the n-th roots of volume and of maximal density satisfy
discrete concavity/convexity certificates checked here in exact arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .delzant import (
    DelzantPolytope,
    NotDelzantError,
    same_fan,
    validate_delzant,
)
from .linalg import (
    Vec,
    as_vec,
    nthroot_bounds,
    nthroot_decimal,
    rational_nthroot,
    vec_add,
    vec_scale,
)
from .packing import maximize
from .polytope import (
    DegeneratePolytopeError,
    EmptyPolytopeError,
    HPolytope,
    HalfSpace,
    remove_redundant,
)

DEFAULT_SEED = 1729


class PerturbationError(ValueError):
    """Raised when an offset parameter leaves the admissible region.

    ``code`` is one of "empty", "lost facet", "not Delzant", "fan changed".
    """

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        super().__init__(f"{code}: {detail}" if detail else code)


class ScanError(ValueError):
    pass


def perturb(base: DelzantPolytope, s) -> DelzantPolytope:
    """The polytope with offsets lambda_i + s^i, validated against the base.

    The result must keep all facets, stay Delzant, and determine the same
    fan as the base; otherwise a :class:`PerturbationError` names the first
    failure.
    """
    sv = as_vec(s)
    if len(sv) != base.hrep.num_facets:
        raise ValueError("offset vector length must match the facet count")
    raw = HPolytope(
        base.dim,
        tuple(
            HalfSpace(h.normal, h.offset + si)
            for h, si in zip(base.hrep.halfspaces, sv)
        ),
    )
    try:
        reduced = remove_redundant(raw)
    except EmptyPolytopeError as exc:
        raise PerturbationError("empty", str(exc)) from exc
    except DegeneratePolytopeError as exc:
        raise PerturbationError("empty", "no interior") from exc
    if len(reduced.halfspaces) != len(raw.halfspaces):
        raise PerturbationError(
            "lost facet",
            f"{len(raw.halfspaces) - len(reduced.halfspaces)} facet(s) became redundant",
        )
    try:
        D = validate_delzant(reduced)
    except NotDelzantError as exc:
        raise PerturbationError("not Delzant", str(exc)) from exc
    if not same_fan(D, base):
        raise PerturbationError("fan changed")
    return D


def is_admissible(base: DelzantPolytope, s) -> bool:
    try:
        perturb(base, s)
    except PerturbationError:
        return False
    return True


def _probe_directions(base: DelzantPolytope, rng: random.Random) -> list[Vec]:
    """Max-norm-one probe directions: coordinate axes, the all-ones
    diagonals, and 2F seeded random rational directions."""
    F = base.hrep.num_facets
    dirs: list[Vec] = []
    for i in range(F):
        e = tuple(Fraction(int(i == j)) for j in range(F))
        dirs.append(e)
        dirs.append(vec_scale(-1, e))
    ones = tuple(Fraction(1) for _ in range(F))
    dirs.append(ones)
    dirs.append(vec_scale(-1, ones))
    while len(dirs) < 4 * F + 2:
        cand = tuple(
            Fraction(rng.randint(-12, 12), rng.randint(1, 12)) for _ in range(F)
        )
        m = max(abs(c) for c in cand)
        if m == 0:
            continue
        dirs.append(vec_scale(1 / m, cand))
    return dirs


def safe_radius_estimate(
    base: DelzantPolytope, seed: int | None = None, iterations: int = 14
) -> Fraction:
    """Conservative admissibility radius in the max-norm.

    Bisects on rho so that every probe direction scaled to max-norm rho is
    admissible.  Along a fixed ray admissibility holds on an interval
    [0, rho_max), so per-direction bisection is sound.  The result is a
    sampled lower-bound heuristic, never claimed exact; downstream code
    revalidates every parameter it actually uses.
    """
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    dirs = _probe_directions(base, rng)

    def passes(rho: Fraction) -> bool:
        return all(is_admissible(base, vec_scale(rho, d)) for d in dirs)

    hi = min(base.corner_radii)
    if passes(hi):
        return hi
    lo = hi / 2
    guard = 0
    while not passes(lo):
        hi = lo
        lo = lo / 2
        guard += 1
        if guard > 200:
            raise ArithmeticError("no admissible radius found")
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Exact comparisons of n-th root combinations.


def compare_root_midpoint(mid: Fraction, left: Fraction, right: Fraction, n: int) -> int:
    """Sign of 2*mid^(1/n) - left^(1/n) - right^(1/n), exactly.

    If left/mid and right/mid are both rational n-th powers the comparison
    is rational.  Otherwise the two sides differ (incommensurable radicals
    over Q cannot cancel against 2*mid^(1/n)), and adaptive-precision
    integer root bounds settle the sign.
    """
    if mid <= 0 or left <= 0 or right <= 0:
        raise ValueError("root comparison requires positive values")
    if n == 1:
        diff = 2 * mid - left - right
        return (diff > 0) - (diff < 0)
    rl = rational_nthroot(left / mid, n)
    rr = rational_nthroot(right / mid, n)
    if rl is not None and rr is not None:
        diff = 2 - rl - rr
        return (diff > 0) - (diff < 0)
    prec = 30
    while prec <= 4000:
        lo_m, hi_m = nthroot_bounds(mid, n, prec)
        lo_l, hi_l = nthroot_bounds(left, n, prec)
        lo_r, hi_r = nthroot_bounds(right, n, prec)
        if 2 * lo_m - hi_l - hi_r > 0:
            return 1
        if 2 * hi_m - lo_l - lo_r < 0:
            return -1
        prec *= 2
    raise ArithmeticError("root comparison did not separate")


def is_homothetic(D1: DelzantPolytope, D2: DelzantPolytope) -> bool:
    """Exact test for D2 = lam * D1 + v with rational lam > 0.

    With rational vertex data any homothety ratio is rational, so lam must
    be the rational n-th root of the volume ratio; the translation is fixed
    by the lexicographically smallest vertices and verified on the full
    vertex sets.
    """
    if D1.dim != D2.dim:
        raise ValueError("dimension mismatch")
    lam = rational_nthroot(D2.euclidean_volume / D1.euclidean_volume, D1.dim)
    if lam is None:
        return False
    v = tuple(
        b - lam * a for a, b in zip(D1.vertices[0], D2.vertices[0])
    )
    mapped = {vec_add(vec_scale(lam, w), v) for w in D1.vertices}
    return mapped == set(D2.vertices)


# ---------------------------------------------------------------------------
# Segment scans.


@dataclass(frozen=True)
class ScanResult:
    """Exact per-sample data along an admissible offset segment.

    ``omega_root_decimals`` renders omega^(1/n) to 30 significant digits
    for reporting; every certificate below is decided by exact comparison
    of n-th powers, independent of that rendering.
    """

    samples: int
    ts: tuple[Fraction, ...]
    volumes: tuple[Fraction, ...]
    omegas: tuple[Fraction, ...]
    omega_root_decimals: tuple[str, ...]
    maximizer_counts: tuple[int, ...]
    vol_root_midpoint_concave: bool
    vol_root_strictly_concave_somewhere: bool
    vol_root_all_midpoints_equal: bool
    omega_root_midpoint_convex_near_zero: bool
    endpoints_homothetic: bool


def scan_segment(
    base: DelzantPolytope, s1, s2, samples: int
) -> ScanResult:
    """Scan t -> Delta_{(1-t) s1 + t s2} at t = k/samples, k = 0..samples.

    Every sample is validated; an inadmissible one raises ScanError naming
    its t.  Certificates: midpoint concavity of vol^(1/n) over the whole
    segment and midpoint convexity of omega^(1/n) for triples within
    [0, 1/4], all in exact arithmetic.
    """
    if samples < 1:
        raise ValueError("need at least one subdivision")
    v1 = as_vec(s1)
    v2 = as_vec(s2)
    ts: list[Fraction] = []
    vols: list[Fraction] = []
    omegas: list[Fraction] = []
    decs: list[str] = []
    counts: list[int] = []
    first: DelzantPolytope | None = None
    last: DelzantPolytope | None = None
    n = base.dim
    for k in range(samples + 1):
        t = Fraction(k, samples)
        s = vec_add(vec_scale(1 - t, v1), vec_scale(t, v2))
        try:
            D = perturb(base, s)
        except PerturbationError as exc:
            raise ScanError(f"inadmissible sample at t = {t}: {exc}") from exc
        if k == 0:
            first = D
        if k == samples:
            last = D
        omega, packs = maximize(D)
        ts.append(t)
        vols.append(D.euclidean_volume)
        omegas.append(omega)
        decs.append(nthroot_decimal(omega, n))
        counts.append(len(packs))

    vol_cmps = [
        compare_root_midpoint(vols[k], vols[k - 1], vols[k + 1], n)
        for k in range(1, samples)
    ]
    near_zero = [
        compare_root_midpoint(omegas[k], omegas[k - 1], omegas[k + 1], n)
        for k in range(1, samples)
        if Fraction(k + 1, samples) <= Fraction(1, 4)
    ]
    assert first is not None and last is not None
    return ScanResult(
        samples=samples,
        ts=tuple(ts),
        volumes=tuple(vols),
        omegas=tuple(omegas),
        omega_root_decimals=tuple(decs),
        maximizer_counts=tuple(counts),
        vol_root_midpoint_concave=all(c >= 0 for c in vol_cmps),
        vol_root_strictly_concave_somewhere=any(c > 0 for c in vol_cmps),
        vol_root_all_midpoints_equal=all(c == 0 for c in vol_cmps),
        omega_root_midpoint_convex_near_zero=all(c <= 0 for c in near_zero),
        endpoints_homothetic=is_homothetic(first, last),
    )


def vertex_affinity_check(base: DelzantPolytope, s1, s2, t) -> bool:
    """Exact check that vertices interpolate affinely in the offsets:
    v_i((1-t) s1 + t s2) = (1-t) v_i(s1) + t v_i(s2), matched through the
    shared fan (vertices correspond by active facet set)."""
    tq = Fraction(t)
    v1 = as_vec(s1)
    v2 = as_vec(s2)
    D1 = perturb(base, v1)
    D2 = perturb(base, v2)
    mid = perturb(base, vec_add(vec_scale(1 - tq, v1), vec_scale(tq, v2)))

    def by_active(D: DelzantPolytope) -> dict[frozenset[int], Vec]:
        return {
            frozenset(inc): v
            for v, inc in zip(D.vertices, D.vdata.incidence)
        }

    m1, m2, mm = by_active(D1), by_active(D2), by_active(mid)
    for key, vm in mm.items():
        expect = vec_add(vec_scale(1 - tq, m1[key]), vec_scale(tq, m2[key]))
        if vm != expect:
            return False
    return True
