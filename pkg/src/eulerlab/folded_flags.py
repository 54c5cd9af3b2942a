"""Folded-flag double counting directly on the polytope.

A transversal line q passes through the relative interiors of two chosen
facets.  For every face F of dimension <= k-1, the plane L spanned by q and
F's base point cuts the polytope in a polygon with that base point as a
vertex; the two incident polygon sides, each inside a unique facet, are the
face's two folded flags.  Per-facet sums are checked against their exact
expected values, including the central-projection shadow criterion for the
facets the line does not meet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import GeneralPositionError, SamplingBudgetError
from .euler import f_vector
from .linalg import (
    SpanBuilder,
    Vector,
    affine_dim,
    affine_hull,
    barycenter,
    dot,
    is_zero,
    line_hyperplane_intersection,
    line_meets_affine,
    vadd,
    vscale,
    vsub,
)
from .polytope import Face, Polytope, face_lattice, facet_polytope
from .projection import Shadow, project_from_point

SAMPLE_BUDGET = 256
RANGE_DOUBLING_PERIOD = 32


@dataclass(frozen=True)
class CertificateEntry:
    """One exact check (by kind) backing a sampled transversal line."""

    kind: str  # "facet-not-parallel" | "direction-independent" | "affine-miss" | "incidence"
    subject: tuple
    ok: bool


@dataclass(frozen=True)
class TransversalLine:
    """Line through relative-interior points of two facets, with exact
    general-position certificate and its intersection point on every
    facet's hyperplane."""

    facet_pair: tuple[int, int]
    t1: Vector
    t2: Vector
    direction: Vector
    facet_points: tuple[Vector, ...]
    certificate: tuple[CertificateEntry, ...]


@dataclass(frozen=True)
class FoldedFlag:
    """A polygon side incident to a base point, inside a unique facet."""

    base_face: Face
    base_point: Vector
    assigned_facet: int
    segment: tuple[Vector, Vector]
    value: Fraction


def _relint_point(p: Polytope, facet_index: int, rng: random.Random, bound: int) -> Vector:
    """Random positive rational convex combination of the facet's vertices."""
    idx = sorted(p.facets[facet_index].vertex_indices)
    weights = [Fraction(rng.randint(1, bound)) for _ in idx]
    total = sum(weights)
    point = tuple(Fraction(0) for _ in range(p.dim))
    for w, i in zip(weights, idx):
        point = vadd(point, vscale(p.vertices[i], w / total))
    return point


def sample_transversal(
    p: Polytope, seed: int, facet_pair: Optional[tuple[int, int]] = None
) -> TransversalLine:
    """Sample interior points on two facets until the joining line passes
    every general-position check; all checks land in the certificate.

    The incidence condition - the line's point on facet hyperplane i lies
    on the facet itself exactly for the two chosen facets - is a theorem
    given convexity, so its failure raises instead of resampling.
    """
    if p.dim < 3:
        raise ValueError("transversal proof requires d >= 3")
    rng = random.Random(seed)
    nf = len(p.facets)
    if facet_pair is None:
        i1 = rng.randrange(nf)
        i2 = rng.randrange(nf - 1)
        if i2 >= i1:
            i2 += 1
        facet_pair = (i1, i2)
    i1, i2 = facet_pair
    if i1 == i2 or not (0 <= i1 < nf and 0 <= i2 < nf):
        raise ValueError(f"invalid facet pair {facet_pair}")

    lat = face_lattice(p)
    k = p.dim - 1
    face_data = []
    for c in range(0, k):
        for idx, face in enumerate(lat.faces(c)):
            pts = p.face_points(face)
            sb = SpanBuilder(p.dim)
            for q in pts[1:]:
                sb.add(vsub(q, pts[0]))
            face_data.append((c, idx, sb, affine_hull(pts)))

    bound = 9
    for attempt in range(SAMPLE_BUDGET):
        if attempt and attempt % RANGE_DOUBLING_PERIOD == 0:
            bound *= 2
        t1 = _relint_point(p, i1, rng, bound)
        t2 = _relint_point(p, i2, rng, bound)
        direction = vsub(t2, t1)
        if is_zero(direction):
            continue
        entries = []
        ok = True
        for j, f in enumerate(p.facets):
            good = dot(f.hyperplane.normal, direction) != 0
            entries.append(CertificateEntry("facet-not-parallel", (j,), good))
            ok = ok and good
        for c, idx, sb, hull in face_data:
            if c >= 1:
                good = not sb.contains(direction)
                entries.append(CertificateEntry("direction-independent", (c, idx), good))
                ok = ok and good
                if not good:
                    continue
            good = not line_meets_affine(t1, direction, hull)
            entries.append(CertificateEntry("affine-miss", (c, idx), good))
            ok = ok and good
        if not ok:
            continue
        hits = tuple(
            line_hyperplane_intersection(t1, direction, f.hyperplane)
            for f in p.facets
        )
        for j, hit in enumerate(hits):
            on_facet = p.contains(hit)
            if j in (i1, i2):
                good = p.in_relative_interior_of_facet(hit, j)
            else:
                good = not on_facet
            entries.append(CertificateEntry("incidence", (j,), good))
            if not good:
                raise GeneralPositionError("general position violated")
        return TransversalLine(
            facet_pair=(i1, i2),
            t1=t1,
            t2=t2,
            direction=direction,
            facet_points=hits,
            certificate=tuple(entries),
        )
    raise SamplingBudgetError("no transversal line found")


def _section_polygon(p: Polytope, line: TransversalLine, x: Vector):
    """The section N = P cut by the plane through q and x, as 2D data.

    Returns (vertices, constraints) where vertices are exact (u, w)
    coordinates in the chart t1 + u*direction + w*(x - t1), and constraints
    are rows (alpha, beta, gamma) meaning alpha*u + beta*w <= gamma, one per
    facet of p (same order).
    """
    e = line.direction
    g = vsub(x, line.t1)
    cons = []
    for f in p.facets:
        n = f.hyperplane.normal
        cons.append(
            (dot(n, e), dot(n, g), f.hyperplane.offset - dot(n, line.t1))
        )
    verts = set()
    m = len(cons)
    for i in range(m):
        a1, b1, g1 = cons[i]
        for j in range(i + 1, m):
            a2, b2, g2 = cons[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            u = (g1 * b2 - g2 * b1) / det
            w = (a1 * g2 - a2 * g1) / det
            if all(a * u + b * w <= c for a, b, c in cons):
                verts.add((u, w))
    return sorted(verts), cons


def fold_flags(
    p: Polytope, face: Face, line: TransversalLine
) -> tuple[FoldedFlag, FoldedFlag]:
    """Fold the face's two flags onto facets via the plane section.

    The base point must turn out to be a vertex of the section polygon and
    each incident side must lie in exactly one facet, with the two sides in
    different facets; all three are consequences of the certificate, so
    violations raise GeneralPositionError.
    """
    x = barycenter(p.face_points(face))
    verts, cons = _section_polygon(p, line, x)
    x_chart = (Fraction(0), Fraction(1))
    if x_chart not in verts:
        raise GeneralPositionError("general position violated")

    def to_frame(uw):
        u, w = uw
        return vadd(
            line.t1, vadd(vscale(line.direction, u), vscale(vsub(x, line.t1), w))
        )

    # Sides incident to x: among all polygon vertices, the two neighbours of
    # x are found via the active-constraint structure: a side is the segment
    # between two vertices sharing an active constraint, all other vertices
    # strictly inside it.
    sides = []
    for j, (a, b, c) in enumerate(cons):
        if a * x_chart[0] + b * x_chart[1] != c:
            continue
        mates = [
            v
            for v in verts
            if v != x_chart and a * v[0] + b * v[1] == c
        ]
        for v in mates:
            mid = ((x_chart[0] + v[0]) / 2, (x_chart[1] + v[1]) / 2)
            active = [
                jj
                for jj, (aa, bb, cc) in enumerate(cons)
                if aa * mid[0] + bb * mid[1] == cc
            ]
            if len(active) != 1:
                raise GeneralPositionError("general position violated")
            sides.append((active[0], v))
    # A polygon vertex has exactly two incident sides, necessarily in
    # distinct facets; anything else means the certificate lied.
    by_facet: dict[int, tuple] = {}
    for facet_idx, v in sides:
        if by_facet.get(facet_idx, v) != v:
            raise GeneralPositionError("general position violated")
        by_facet[facet_idx] = v
    if len(by_facet) != 2:
        raise GeneralPositionError("general position violated")
    value = Fraction((-1) ** face.dimension, 2)
    out = []
    for facet_idx, v in sorted(by_facet.items()):
        out.append(
            FoldedFlag(
                base_face=face,
                base_point=x,
                assigned_facet=facet_idx,
                segment=(x, to_frame(v)),
                value=value,
            )
        )
    return out[0], out[1]


def flag_collinear_with_assigned_point(flag: FoldedFlag, line: TransversalLine) -> bool:
    """Whether the flag's segment line passes through the line's point on
    its assigned facet's hyperplane (exact)."""
    t = line.facet_points[flag.assigned_facet]
    return affine_dim([flag.segment[0], flag.segment[1], t]) <= 1


@dataclass
class FoldedReport:
    """Per-facet folded-flag sums with their full identity chains."""

    dimension: int
    facet_pair: tuple[int, int]
    seed: Optional[int]
    special_pair_sum: Fraction
    per_facet_sums: dict[int, Fraction]
    total_by_base: Fraction
    total_by_facet: Fraction
    expected_special: Fraction
    expected_per_facet: Fraction
    lhs_needed: Fraction
    rhs_needed: Fraction
    flag_count: int
    failures: list[str] = field(default_factory=list)

    @property
    def total(self) -> Fraction:
        return self.total_by_facet

    @property
    def passed(self) -> bool:
        return not self.failures


def _half_alternating(counts, upto: int) -> Fraction:
    return Fraction(sum((-1) ** c * counts[c] for c in range(upto + 1)), 2)


def facet_assignment_sums(
    p: Polytope, line: TransversalLine, seed: Optional[int] = None
) -> FoldedReport:
    """Fold every flag, group by assigned facet, and check all identities.

    The two chosen facets get exactly one flag per own face and together sum
    to 1-(-1)^k; every other facet is checked face-by-face against its
    central-projection shadow from the line's exterior point and sums to
    -(-1)^k; the grand total is checked both ways against the alternating
    face-count sum.
    """
    k = p.dim - 1
    sign_k = (-1) ** k
    lat = face_lattice(p)
    failures: list[str] = []

    flags: list[FoldedFlag] = []
    for c in range(0, k):
        for face in lat.faces(c):
            f1, f2 = fold_flags(p, face, line)
            if f1.assigned_facet == f2.assigned_facet:
                failures.append(
                    f"flags of face {sorted(face.vertex_indices)} share facet "
                    f"{f1.assigned_facet}"
                )
            flags.extend((f1, f2))

    for flag in flags:
        if not flag_collinear_with_assigned_point(flag, line):
            failures.append(
                f"flag at {flag.base_point} not collinear with its facet point"
            )

    sums = {i: Fraction(0) for i in range(len(p.facets))}
    counts: dict[tuple[frozenset, int], int] = {}
    for flag in flags:
        sums[flag.assigned_facet] += flag.value
        key = (flag.base_face.vertex_indices, flag.assigned_facet)
        counts[key] = counts.get(key, 0) + 1

    i1, i2 = line.facet_pair
    expected_special = Fraction(1 - sign_k)
    expected_per_facet = Fraction(-sign_k)

    for i in (i1, i2):
        t_poly = facet_polytope(p, i)
        fv = f_vector(face_lattice(t_poly))
        own_faces = [
            face
            for face in lat.all_faces()
            if face.dimension <= k - 1
            and face.vertex_indices <= p.facets[i].vertex_indices
        ]
        for face in own_faces:
            got = counts.get((face.vertex_indices, i), 0)
            if got != 1:
                failures.append(
                    f"facet {i}: face {sorted(face.vertex_indices)} contributed "
                    f"{got} flags, expected 1"
                )
        via_counts = _half_alternating(fv, k - 1)
        via_top = Fraction(1 - sign_k * fv[k], 2)
        if not (sums[i] == via_counts == via_top == expected_special / 2):
            failures.append(
                f"special facet {i}: sum chain {sums[i]} = {via_counts} = "
                f"{via_top} = {expected_special / 2} broken"
            )
    if sums[i1] + sums[i2] != expected_special:
        failures.append(
            f"special pair sum {sums[i1] + sums[i2]} != {expected_special}"
        )

    per_facet = {}
    for i in range(len(p.facets)):
        if i in (i1, i2):
            continue
        per_facet[i] = sums[i]
        t_poly = facet_polytope(p, i)
        local = {v: idx for idx, v in enumerate(t_poly.embedded_vertices)}
        apex = t_poly.frame.to_working(line.facet_points[i])
        shadow = project_from_point(t_poly, apex)
        fv = f_vector(face_lattice(t_poly))
        gv = f_vector(face_lattice(shadow.polytope))
        if fv[k] != 1 or gv[k - 1] != 1:
            failures.append(f"facet {i}: top-face counts are {fv[k]}, {gv[k - 1]}")
        for face in lat.all_faces():
            if face.dimension > k - 1:
                continue
            if not face.vertex_indices <= p.facets[i].vertex_indices:
                continue
            local_key = frozenset(local[p.vertices[v]] for v in face.vertex_indices)
            got = counts.get((face.vertex_indices, i), 0)
            if face.dimension == k - 1:
                expected = 1
            else:
                expected = 0 if shadow.face_image[local_key] else 1
            if got != expected:
                failures.append(
                    f"facet {i}: face {sorted(face.vertex_indices)} contributed "
                    f"{got} flags, criterion expects {expected}"
                )
        via_counts = _half_alternating(fv, k - 1) - _half_alternating(gv, k - 2)
        via_tops = Fraction(1 - sign_k * fv[k], 2) - Fraction(
            1 + sign_k * gv[k - 1], 2
        )
        if not (sums[i] == via_counts == via_tops == expected_per_facet):
            failures.append(
                f"facet {i}: sum chain {sums[i]} = {via_counts} = {via_tops} "
                f"= {expected_per_facet} broken"
            )

    f_p = f_vector(lat)
    lhs = Fraction(sum((-1) ** c * f_p[c] for c in range(k)))
    rhs = 1 + sign_k * (1 - f_p[k])
    total_by_base = sum((f.value for f in flags), Fraction(0))
    total_by_facet = sum(sums.values(), Fraction(0))
    if total_by_base != lhs:
        failures.append(f"flag total {total_by_base} != alternating sum {lhs}")
    if total_by_base != total_by_facet:
        failures.append(
            f"double count broken: {total_by_base} by base, "
            f"{total_by_facet} by facet"
        )
    decomposition = expected_special + (f_p[k] - 2) * expected_per_facet
    if total_by_facet != decomposition:
        failures.append(
            f"classified total {total_by_facet} != decomposition {decomposition}"
        )
    if lhs != rhs:
        failures.append(f"needed identity broken: {lhs} != {rhs}")

    return FoldedReport(
        dimension=p.dim,
        facet_pair=line.facet_pair,
        seed=seed,
        special_pair_sum=sums[i1] + sums[i2],
        per_facet_sums=per_facet,
        total_by_base=total_by_base,
        total_by_facet=total_by_facet,
        expected_special=expected_special,
        expected_per_facet=expected_per_facet,
        lhs_needed=lhs,
        rhs_needed=rhs,
        flag_count=len(flags),
        failures=failures,
    )


def verify_proof_folded(
    p: Polytope, seed: int, facet_pair: Optional[tuple[int, int]] = None
) -> FoldedReport:
    """Sample a certified transversal line and run the full folded check."""
    line = sample_transversal(p, seed, facet_pair)
    return facet_assignment_sums(p, line, seed=seed)
