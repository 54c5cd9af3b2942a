"""Projections shared by both verification harnesses.

Three constructions: the Schlegel complex of a polytope at a facet (central
projection from a beyond point onto the facet's hyperplane), orthogonal
projection of a polytope along a direction, and central projection from an
exterior point in the polytope's own hyperplane.  Shadows carry the exact
"image of this face is a face of the shadow" predicate, computed by full
face-lattice comparison rather than any silhouette criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .errors import DimensionMismatchError, GeneralPositionError
from .linalg import (
    Hyperplane,
    Vector,
    affine_hull,
    barycenter,
    dot,
    is_zero,
    nullspace,
    vadd,
    vscale,
    vsub,
)
from .polytope import (
    AffineFrame,
    Face,
    Polytope,
    build_polytope,
    face_lattice,
    point_polytope,
)


def _facet_index(p: Polytope, facet: Union[int, Face]) -> int:
    if isinstance(facet, int):
        if not 0 <= facet < len(p.facets):
            raise ValueError(f"facet index {facet} out of range")
        return facet
    for i, f in enumerate(p.facets):
        if f.vertex_indices == facet.vertex_indices:
            return i
    raise ValueError("face is not a facet of this polytope")


def beyond_point(p: Polytope, facet: Union[int, Face]) -> Vector:
    """A rational point beyond the given facet and beneath all others.

    Starts one unit outward from the facet's vertex barycenter and halves
    the step until every strict inequality holds (all are open conditions
    satisfied in the limit, so this terminates).
    """
    i = _facet_index(p, facet)
    h = p.facets[i].hyperplane
    center = barycenter(p.facet_vertices(i))
    step = Fraction(1)
    while True:
        cand = vadd(center, vscale(h.normal, step))
        if h.side(cand) > 0 and all(
            f.hyperplane.side(cand) < 0 for j, f in enumerate(p.facets) if j != i
        ):
            return cand
        step /= 2


@dataclass(frozen=True)
class ComplexFace:
    """A face of a polyhedral complex, identified by its exact point set."""

    points: frozenset[Vector]
    dimension: int

    @cached_property
    def base_point(self) -> Vector:
        """Vertex barycenter; always in the relative interior."""
        return barycenter(sorted(self.points))


class SchlegelComplex:
    """Subdivision of the facet `carrier` induced by projecting the other
    facets of `source` from a viewpoint just beyond the carrier.

    Carrier and cells are full-dimensional polytopes in a shared working
    frame of the carrier's hyperplane; `frame` maps those coordinates back
    into the source polytope's frame.
    """

    def __init__(
        self,
        source: Polytope,
        facet_index: int,
        viewpoint: Vector,
        frame: AffineFrame,
        carrier: Polytope,
        cells: tuple[Polytope, ...],
        cell_origin: tuple[int, ...],
    ):
        self.source = source
        self.facet_index = facet_index
        self.viewpoint = viewpoint
        self.frame = frame
        self.carrier = carrier
        self.cells = cells
        self.cell_origin = cell_origin

    @property
    def a(self) -> int:
        return len(self.cells)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def faces_by_dimension(self) -> dict[int, tuple[ComplexFace, ...]]:
        """Distinct proper faces of the complex (dims 0..k-1), deduplicated
        by exact point set across all cells."""
        seen: dict[int, set[frozenset[Vector]]] = {}
        for cell in self.cells:
            lat = face_lattice(cell)
            for c in range(cell.dim):
                for face in lat.faces(c):
                    pts = frozenset(cell.face_points(face))
                    seen.setdefault(c, set()).add(pts)
        return {
            c: tuple(
                ComplexFace(pts, c)
                for pts in sorted(seen[c], key=lambda s: sorted(s))
            )
            for c in sorted(seen)
        }

    def faces(self, c: int) -> tuple[ComplexFace, ...]:
        return self.faces_by_dimension.get(c, ())


def schlegel(p: Polytope, facet: Union[int, Face]) -> SchlegelComplex:
    """Schlegel complex of p at the given facet.

    Every other facet is centrally projected from a beyond point onto the
    facet's hyperplane; the resulting cells tile the carrier.
    """
    if p.dim < 3:
        raise ValueError("Schlegel requires d >= 3")
    t_index = _facet_index(p, facet)
    t = p.facets[t_index]
    v = beyond_point(p, t_index)
    n, b = t.hyperplane.normal, t.hyperplane.offset
    t_points = [p.vertices[i] for i in sorted(t.vertex_indices)]
    frame = AffineFrame(t_points[0], affine_hull(t_points).direction_basis)
    carrier = build_polytope([frame.to_working(x) for x in t_points])
    denom_v = dot(n, v) - b  # > 0: the viewpoint is beyond the carrier plane
    cells = []
    origins = []
    for j, f in enumerate(p.facets):
        if j == t_index:
            continue
        imgs = []
        for idx in sorted(f.vertex_indices):
            x = p.vertices[idx]
            s = denom_v / (denom_v - (dot(n, x) - b))
            imgs.append(frame.to_working(vadd(v, vscale(vsub(x, v), s))))
        cells.append(build_polytope(imgs))
        origins.append(j)
    return SchlegelComplex(
        source=p,
        facet_index=t_index,
        viewpoint=v,
        frame=frame,
        carrier=carrier,
        cells=tuple(cells),
        cell_origin=tuple(origins),
    )


@dataclass
class Shadow:
    """Projection image of a polytope, one dimension down.

    `vertex_images` holds the image of every source vertex in the shadow's
    embedding coordinates; `face_image` maps each source face (by vertex
    index set) to whether its image is a face of the shadow.
    """

    source: Polytope
    polytope: Polytope
    vertex_images: tuple[Vector, ...]
    face_image: dict[frozenset[int], bool]

    def is_face_image(self, face: Face) -> bool:
        return self.face_image[face.vertex_indices]

    def face_source_labels(self) -> dict[int, frozenset[frozenset[int]]]:
        """Shadow faces per dimension, each named by the set of source
        vertices landing on its vertex set (for frame-free comparison)."""
        lat = face_lattice(self.polytope)
        out: dict[int, set[frozenset[int]]] = {}
        for c in range(lat.dim + 1):
            for g in lat.faces(c):
                pts = {self.polytope.embedded_vertices[i] for i in g.vertex_indices}
                label = frozenset(
                    v for v, img in enumerate(self.vertex_images) if img in pts
                )
                out.setdefault(c, set()).add(label)
        return {c: frozenset(labels) for c, labels in out.items()}


def _make_shadow(src: Polytope, images: Sequence[Vector]) -> Shadow:
    distinct = set(images)
    if len(distinct) == 1:
        shadow_poly = point_polytope(images[0])
    else:
        shadow_poly = build_polytope(images)
    if shadow_poly.dim != src.dim - 1:
        raise GeneralPositionError(
            f"shadow has dimension {shadow_poly.dim}, expected {src.dim - 1}"
        )
    shadow_lat = face_lattice(shadow_poly)
    by_dim: dict[int, list[frozenset[Vector]]] = {}
    for c in range(shadow_poly.dim + 1):
        by_dim[c] = [
            frozenset(shadow_poly.embedded_vertices[i] for i in g.vertex_indices)
            for g in shadow_lat.faces(c)
        ]
    face_image = {}
    for face in face_lattice(src).all_faces():
        img = frozenset(images[i] for i in face.vertex_indices)
        face_image[face.vertex_indices] = img in by_dim.get(face.dimension, ())
    return Shadow(
        source=src,
        polytope=shadow_poly,
        vertex_images=tuple(images),
        face_image=face_image,
    )


def project_along(src: Polytope, direction: Vector) -> Shadow:
    """Orthogonal projection of src along a direction of its working frame.

    The screen is the direction's orthogonal complement, realized by the
    rational linear map x -> (w_1·x, ..., w_{k-1}·x) whose kernel is the
    direction; the image of a face is a face of the shadow iff its
    projected vertex set equals the vertex set of a shadow face of the
    same dimension.
    """
    if len(direction) != src.dim:
        raise DimensionMismatchError(
            "direction must live in the source's working frame"
        )
    if is_zero(direction):
        raise ValueError("direction must be nonzero")
    functionals = nullspace([direction], src.dim)
    images = [
        tuple(dot(w, x) for w in functionals) for x in src.vertices
    ]
    return _make_shadow(src, images)


def project_from_point(
    src: Polytope, apex: Vector, screen: Optional[Hyperplane] = None
) -> Shadow:
    """Central projection of src from an exterior apex in its working frame.

    The default screen separates the apex from src halfway along a violated
    facet inequality (normal·x = (b+b')/2); any screen with the apex
    strictly on one side and every vertex strictly on the other is
    admissible and yields the same face structure.
    """
    if len(apex) != src.dim:
        raise DimensionMismatchError("apex must live in the source's working frame")
    if src.contains(apex):
        raise ValueError("apex not exterior")
    if screen is None:
        violated = next(
            f.hyperplane for f in src.facets if f.hyperplane.side(apex) > 0
        )
        n, b = violated.normal, violated.offset
        screen = Hyperplane(n, (b + dot(n, apex)) / 2)
    apex_side = screen.side(apex)
    if apex_side == 0 or any(
        screen.side(v) == 0 or (screen.side(v) > 0) == (apex_side > 0)
        for v in src.vertices
    ):
        raise ValueError("screen must strictly separate the apex from the source")
    images = []
    for v in src.vertices:
        s = apex_side / (apex_side - screen.side(v))
        images.append(vadd(apex, vscale(vsub(v, apex), s)))
    return _make_shadow(src, images)
