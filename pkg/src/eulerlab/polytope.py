"""Polytopes from vertex sets: exact hull, face lattice, oracle, generators.

A Polytope always stores its vertices in a full-dimensional "working" frame
of its own intrinsic dimension.  Inputs of lower affine dimension are
re-expressed in a rational affine frame (the original embedding is kept in
`embedded_vertices` and `frame`).  Facet enumeration is incremental
beneath-beyond insertion with exact predicates; the independent oracle
decides face-ness of every vertex subset by exact linear feasibility.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .errors import (
    DegenerateInputError,
    DimensionMismatchError,
    OracleBoundError,
    SamplingBudgetError,
)
from .linalg import (
    AffineSubspace,
    Hyperplane,
    SpanBuilder,
    Vector,
    affine_dim,
    affine_hull,
    as_vector,
    barycenter,
    dot,
    hyperplane_through,
    linear_feasible,
    nullspace,
    rank,
    solve_linear,
    vadd,
    vscale,
    vsub,
)

ORACLE_BOUND = 12
GENERATOR_RETRIES = 64


@dataclass(frozen=True)
class AffineFrame:
    """Rational chart mapping working coordinates into an ambient space."""

    base: Vector
    basis: tuple[Vector, ...]

    def to_ambient(self, w: Vector) -> Vector:
        x = self.base
        for c, b in zip(w, self.basis, strict=True):
            x = vadd(x, vscale(b, c))
        return x

    def to_working(self, x: Vector) -> Vector:
        """Coordinates of an ambient point lying on the frame's subspace."""
        rows = [tuple(b[j] for b in self.basis) for j in range(len(self.base))]
        w = solve_linear(rows, vsub(x, self.base))
        if w is None:
            raise ValueError("point not on the frame's affine subspace")
        return w


@dataclass(frozen=True)
class Facet:
    """A supporting hyperplane (inward: normal·x <= offset) and its vertices."""

    hyperplane: Hyperplane
    vertex_indices: frozenset[int]


@dataclass(frozen=True)
class Face:
    """A face identified by its exact vertex-index set."""

    vertex_indices: frozenset[int]
    dimension: int


class FaceLattice:
    """All faces of a polytope grouped by dimension, with cover incidences."""

    def __init__(self, faces_by_dimension: dict[int, tuple[Face, ...]]):
        self.faces_by_dimension = faces_by_dimension
        self.dim = max(faces_by_dimension)

    def faces(self, c: int) -> tuple[Face, ...]:
        return self.faces_by_dimension.get(c, ())

    def all_faces(self):
        for c in sorted(self.faces_by_dimension):
            yield from self.faces_by_dimension[c]

    @property
    def top(self) -> Face:
        (top,) = self.faces_by_dimension[self.dim]
        return top

    @cached_property
    def incidence(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """Map c -> pairs (i, j) with faces(c)[i] contained in faces(c+1)[j]."""
        out = {}
        for c in range(self.dim):
            pairs = []
            for i, g in enumerate(self.faces(c)):
                for j, h in enumerate(self.faces(c + 1)):
                    if g.vertex_indices <= h.vertex_indices:
                        pairs.append((i, j))
            out[c] = tuple(pairs)
        return out

    def children(self, face: Face) -> tuple[Face, ...]:
        """Faces of one dimension lower contained in the given face."""
        return tuple(
            g
            for g in self.faces(face.dimension - 1)
            if g.vertex_indices <= face.vertex_indices
        )

    def vertex_set_families(self) -> dict[int, frozenset[frozenset[int]]]:
        return {
            c: frozenset(f.vertex_indices for f in faces)
            for c, faces in self.faces_by_dimension.items()
        }

    def same_faces(self, other: "FaceLattice") -> bool:
        return self.vertex_set_families() == other.vertex_set_families()


@dataclass(frozen=True)
class Polytope:
    """Immutable V-polytope, full-dimensional in its working frame.

    `vertices` are the extreme points in working coordinates (length = dim);
    `embedded_vertices` are the same points in the original input frame and
    equal `vertices` when no reframing happened (frame is None then).
    """

    ambient_dim: int
    dim: int
    vertices: tuple[Vector, ...]
    embedded_vertices: tuple[Vector, ...]
    facets: tuple[Facet, ...]
    frame: Optional[AffineFrame] = None

    @cached_property
    def lattice(self) -> FaceLattice:
        return _lattice_from_facets(self)

    def facet_vertices(self, i: int) -> tuple[Vector, ...]:
        return tuple(self.vertices[j] for j in sorted(self.facets[i].vertex_indices))

    def face_points(self, face: Face) -> tuple[Vector, ...]:
        return tuple(self.vertices[j] for j in sorted(face.vertex_indices))

    def contains(self, x: Vector) -> bool:
        if self.dim == 0:
            return x == self.vertices[0]
        return all(f.hyperplane.side(x) <= 0 for f in self.facets)

    def active_facets(self, x: Vector) -> tuple[int, ...]:
        """Indices of facets whose hyperplane passes through x (x must be in P)."""
        return tuple(
            i for i, f in enumerate(self.facets) if f.hyperplane.side(x) == 0
        )

    def in_tangent_cone(self, x: Vector, u: Vector) -> bool:
        """Whether x + epsilon·u stays inside for all small epsilon > 0.

        Exact test on the facet inequalities active at x; x must be in P.
        """
        return all(
            dot(self.facets[i].hyperplane.normal, u) <= 0
            for i in self.active_facets(x)
        )

    def in_relative_interior_of_facet(self, x: Vector, i: int) -> bool:
        if self.facets[i].hyperplane.side(x) != 0:
            return False
        return all(
            f.hyperplane.side(x) < 0 for j, f in enumerate(self.facets) if j != i
        )


class _WorkFacet:
    __slots__ = ("h", "inc")

    def __init__(self, h: Hyperplane, inc: set[int]):
        self.h = h
        self.inc = inc


def _initial_simplex(points: Sequence[Vector], k: int) -> list[int]:
    span = SpanBuilder(k)
    chosen = [0]
    for i in range(1, len(points)):
        if span.add(vsub(points[i], points[0])):
            chosen.append(i)
            if len(chosen) == k + 1:
                return chosen
    raise DegenerateInputError("points do not span the working frame")


def _hull_facets(points: Sequence[Vector], k: int) -> list[_WorkFacet]:
    """Beneath-beyond hull of full-dimensional points; exact, degeneracy-safe."""
    simplex = _initial_simplex(points, k)
    interior = barycenter([points[i] for i in simplex])
    facets: list[_WorkFacet] = []
    for omit in simplex:
        wall = [points[i] for i in simplex if i != omit]
        h = hyperplane_through(wall, interior)
        facets.append(_WorkFacet(h, {i for i in simplex if h.side(points[i]) == 0}))
    processed = set(simplex)
    for j, p in enumerate(points):
        if j in processed:
            continue
        sides = [f.h.side(p) for f in facets]
        if all(s <= 0 for s in sides):
            for f, s in zip(facets, sides):
                if s == 0:
                    f.inc.add(j)
            processed.add(j)
            continue
        visible = [f for f, s in zip(facets, sides) if s > 0]
        kept = [f for f, s in zip(facets, sides) if s <= 0]
        for f, s in zip(facets, sides):
            if s == 0:
                f.inc.add(j)
        kept_planes = {(f.h.normal, f.h.offset) for f in kept}
        candidates: dict[tuple, Hyperplane] = {}
        for v in visible:
            for b in kept:
                shared = v.inc & b.inc
                if affine_dim([points[i] for i in shared]) != k - 2:
                    continue
                wall = [points[i] for i in sorted(shared)] + [p]
                h = hyperplane_through(wall, interior)
                candidates[(h.normal, h.offset)] = h
        for key, h in candidates.items():
            if key in kept_planes:
                continue  # p was coplanar with an existing facet; already extended
            inc = {i for i in processed if h.side(points[i]) == 0}
            inc.add(j)
            kept.append(_WorkFacet(h, inc))
        facets = kept
        processed.add(j)
    return facets


def _reframe(points: Sequence[Vector], hull: AffineSubspace) -> list[Vector]:
    ambient = len(hull.base_point)
    rows = [tuple(b[j] for b in hull.direction_basis) for j in range(ambient)]
    out = []
    for p in points:
        w = solve_linear(rows, vsub(p, hull.base_point))
        if w is None:  # cannot happen: hull spans the points
            raise DegenerateInputError("point outside its own affine hull")
        out.append(w)
    return out


def _assemble(
    work_points: Sequence[Vector],
    original_points: Sequence[Vector],
    k: int,
    ambient: int,
    frame: Optional[AffineFrame],
) -> Polytope:
    facets_work = _hull_facets(work_points, k)
    active: dict[int, list[Vector]] = {}
    for f in facets_work:
        for i in f.inc:
            active.setdefault(i, []).append(f.h.normal)
    extreme = [i for i in range(len(work_points)) if rank(active.get(i, [])) == k]
    extreme.sort(key=lambda i: work_points[i])
    renum = {old: new for new, old in enumerate(extreme)}
    facet_list = []
    for f in facets_work:
        idx = frozenset(renum[i] for i in f.inc if i in renum)
        pts = [work_points[i] for i in f.inc if i in renum]
        if affine_dim(pts) != k - 1:
            raise RuntimeError("facet vertex set does not span dimension k-1")
        facet_list.append(Facet(f.h, idx))
    facet_list.sort(key=lambda f: (f.hyperplane.normal, f.hyperplane.offset))
    return Polytope(
        ambient_dim=ambient,
        dim=k,
        vertices=tuple(work_points[i] for i in extreme),
        embedded_vertices=tuple(original_points[i] for i in extreme),
        facets=tuple(facet_list),
        frame=frame,
    )


def build_polytope(points: Sequence[Sequence]) -> Polytope:
    """Convex hull of the given rational points as a canonical Polytope.

    Raises DegenerateInputError for fewer than 2 distinct points.  Inputs
    whose affine hull has lower dimension than the ambient space are restated
    in an intrinsic rational frame (recorded in `frame`).
    """
    pts = [as_vector(p) for p in points]
    if not pts:
        raise DegenerateInputError("degenerate input")
    ambient = len(pts[0])
    for p in pts:
        if len(p) != ambient:
            raise DimensionMismatchError("points of mixed dimension")
    distinct: list[Vector] = []
    seen = set()
    for p in pts:
        if p not in seen:
            seen.add(p)
            distinct.append(p)
    if len(distinct) < 2:
        raise DegenerateInputError("degenerate input")
    hull = affine_hull(distinct)
    k = hull.dim
    if k == ambient:
        return _assemble(distinct, distinct, k, ambient, None)
    frame = AffineFrame(hull.base_point, hull.direction_basis)
    work = _reframe(distinct, hull)
    return _assemble(work, distinct, k, ambient, frame)


def point_polytope(point: Sequence) -> Polytope:
    """Internal 0-dimensional polytope (a single point); shadows need these."""
    p = as_vector(point)
    frame = AffineFrame(p, ())
    return Polytope(
        ambient_dim=len(p),
        dim=0,
        vertices=(tuple(),),
        embedded_vertices=(p,),
        facets=(),
        frame=frame,
    )


def _lattice_from_facets(p: Polytope) -> FaceLattice:
    n = len(p.vertices)
    full = (1 << n) - 1
    if p.dim == 0:
        return FaceLattice({0: (Face(frozenset({0}), 0),)})
    facet_masks = []
    for f in p.facets:
        m = 0
        for i in f.vertex_indices:
            m |= 1 << i
        facet_masks.append(m)
    seen: set[int] = set(facet_masks)
    stack = list(seen)
    while stack:
        m = stack.pop()
        for fm in facet_masks:
            x = m & fm
            if x and x not in seen:
                seen.add(x)
                stack.append(x)
    seen.add(full)
    by_dim: dict[int, list[Face]] = {}
    for m in seen:
        idx = frozenset(i for i in range(n) if m >> i & 1)
        d = affine_dim([p.vertices[i] for i in sorted(idx)])
        by_dim.setdefault(d, []).append(Face(idx, d))
    for faces in by_dim.values():
        faces.sort(key=lambda f: sorted(f.vertex_indices))
    return FaceLattice({c: tuple(faces) for c, faces in by_dim.items()})


def face_lattice(p: Polytope) -> FaceLattice:
    """All faces of p (dimensions 0..dim) by closing facet vertex sets
    under intersection; dimensions assigned by exact affine rank."""
    return p.lattice


def _is_face_lp(p: Polytope, subset: tuple[int, ...], outside: list[int]) -> bool:
    """Exact test: does a hyperplane contain `subset` with all `outside`
    vertices strictly on one side?  Decided by rational linear feasibility."""
    d = p.dim
    # Solutions (a, b) of a·s = b for s in subset form the nullspace of these rows.
    eq_rows = [p.vertices[i] + (Fraction(-1),) for i in subset]
    basis = nullspace(eq_rows, d + 1)
    if not basis:
        return False
    # Strict separation a·v - b < 0 scales to a·v - b <= -1.
    cons = []
    for v in outside:
        row = p.vertices[v] + (Fraction(-1),)
        cons.append(tuple(dot(row, nb) for nb in basis))
    rhs = [Fraction(-1)] * len(cons)
    return linear_feasible(cons, rhs) is not None


def brute_force_face_lattice(p: Polytope, bound: int = ORACLE_BOUND) -> FaceLattice:
    """Independent oracle: decide face-ness of every vertex subset by LP.

    Exponential in the vertex count; refuses instances above `bound`.
    """
    n = len(p.vertices)
    if n > bound:
        raise OracleBoundError("oracle bound exceeded")
    if p.dim == 0:
        return FaceLattice({0: (Face(frozenset({0}), 0),)})
    by_dim: dict[int, list[Face]] = {p.dim: [Face(frozenset(range(n)), p.dim)]}
    seen: set[frozenset[int]] = set()
    for size in range(1, n):
        for subset in itertools.combinations(range(n), size):
            base = p.vertices[subset[0]]
            span = SpanBuilder(p.dim)
            for i in subset[1:]:
                span.add(vsub(p.vertices[i], base))
            if span.rank == p.dim:
                continue
            outside = [i for i in range(n) if i not in subset]
            # A vertex of P in the affine hull of S but outside S kills S
            # outright (it would have to lie on the separating hyperplane).
            if any(span.contains(vsub(p.vertices[v], base)) for v in outside):
                continue
            if not _is_face_lp(p, subset, outside):
                continue
            key = frozenset(subset)
            if key not in seen:
                seen.add(key)
                by_dim.setdefault(span.rank, []).append(Face(key, span.rank))
    for faces in by_dim.values():
        faces.sort(key=lambda f: sorted(f.vertex_indices))
    return FaceLattice({c: tuple(faces) for c, faces in by_dim.items()})


def facet_polytope(p: Polytope, i: int) -> Polytope:
    """Facet i of p as a polytope of its own (working frame of dimension d-1).

    The sub-polytope's `embedded_vertices` live in p's working frame.
    """
    return build_polytope(p.facet_vertices(i))


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    mat = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                f = mat[r][col] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return det


def _triangulate(
    lat: FaceLattice, face: Face, memo: dict[Face, list[tuple[int, ...]]]
) -> list[tuple[int, ...]]:
    """Pulling triangulation of a face into vertex-index simplices."""
    if face in memo:
        return memo[face]
    if face.dimension == 0:
        (v,) = face.vertex_indices
        memo[face] = [(v,)]
        return memo[face]
    pivot = min(face.vertex_indices)
    simplices = []
    for child in lat.children(face):
        if pivot in child.vertex_indices:
            continue
        for s in _triangulate(lat, child, memo):
            simplices.append(s + (pivot,))
    memo[face] = simplices
    return simplices


def volume(p: Polytope) -> Fraction:
    """Exact dim(p)-dimensional volume in the working frame."""
    k = p.dim
    if k == 0:
        return Fraction(1)
    lat = face_lattice(p)
    memo: dict[Face, list[tuple[int, ...]]] = {}
    total = Fraction(0)
    for s in _triangulate(lat, lat.top, memo):
        rows = [list(vsub(p.vertices[i], p.vertices[s[0]])) for i in s[1:]]
        total += abs(_det(rows))
    return total / math.factorial(k)


def _parse_family(kind: str) -> tuple[str, list[int]]:
    name, _, argstr = kind.partition(":")
    name = name.strip().lower()
    if name == "hypercube":
        name = "cube"
    if name not in {"simplex", "cube", "crosspolytope", "random"}:
        raise ValueError(f"unknown family {name!r}")
    if not argstr:
        raise ValueError(f"family {name!r} needs arguments, e.g. {name}:3")
    try:
        args = [int(a) for a in argstr.split(",")]
    except ValueError:
        raise ValueError(f"non-integer family arguments in {kind!r}") from None
    expected = 3 if name == "random" else 1
    if len(args) != expected:
        raise ValueError(f"family {name!r} takes {expected} argument(s)")
    return name, args


def generate(kind: str, seed: int = 0) -> Polytope:
    """Standard or random test families.

    kind: "simplex:d" | "cube:d" | "crosspolytope:d" | "random:d,n,bound".
    The random family draws n integer points uniformly from [-bound, bound]^d
    with a seeded generator and re-samples (bounded retries) until the hull
    is full-dimensional.  The seed is ignored by the deterministic families.
    """
    name, args = _parse_family(kind)
    d = args[0]
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if name == "simplex":
        pts = [tuple(Fraction(0) for _ in range(d))]
        for i in range(d):
            pts.append(tuple(Fraction(1 if j == i else 0) for j in range(d)))
        return build_polytope(pts)
    if name == "cube":
        pts = [tuple(map(Fraction, bits)) for bits in itertools.product((0, 1), repeat=d)]
        return build_polytope(pts)
    if name == "crosspolytope":
        pts = []
        for i in range(d):
            for s in (1, -1):
                pts.append(tuple(Fraction(s if j == i else 0) for j in range(d)))
        return build_polytope(pts)
    _, n, bound = args
    if n < d + 1:
        raise ValueError(f"random family needs n >= d+1, got n={n}, d={d}")
    if bound < 1:
        raise ValueError("coordinate bound must be >= 1")
    rng = random.Random(seed)
    for _ in range(GENERATOR_RETRIES):
        pts = [
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d))
            for _ in range(n)
        ]
        try:
            p = build_polytope(pts)
        except DegenerateInputError:
            continue
        if p.dim == d:
            return p
    raise SamplingBudgetError(
        f"no full-dimensional sample after {GENERATOR_RETRIES} retries"
    )
