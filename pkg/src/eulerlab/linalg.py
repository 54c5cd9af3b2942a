"""Exact rational linear algebra and affine-geometry predicates.

Every coordinate in this package is a :class:`fractions.Fraction`, so all
predicates (rank, incidence, sidedness) are decided exactly.  Vectors are
plain tuples of Fractions; matrices are lists of such row tuples.  Rank
computations lift rows to integers and run fraction-free (Bareiss)
elimination, which is much faster than Fraction pivoting at this scale.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatchError

Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def vec(*coords) -> Vector:
    """Build a Vector, coercing ints/strings to Fraction."""
    return tuple(Fraction(c) for c in coords)


def as_vector(coords: Iterable) -> Vector:
    return tuple(Fraction(c) for c in coords)


def parse_rational(text: str) -> Fraction:
    """Parse the canonical text form 'p' or 'p/q' (q > 0)."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(a: Vector, s) -> Vector:
    s = Fraction(s)
    return tuple(x * s for x in a)


def dot(a: Vector, b: Vector) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dot of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero(a: Vector) -> bool:
    return all(x == 0 for x in a)


def barycenter(points: Sequence[Vector]) -> Vector:
    if not points:
        raise ValueError("no points")
    n = Fraction(len(points))
    return tuple(sum(col, Fraction(0)) / n for col in zip(*points))


def _lift_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row by a positive integer so all entries are ints."""
    denoms = [Fraction(x).denominator for x in row]
    m = math.lcm(*denoms) if denoms else 1
    return [int(x * m) for x in row]


def _int_rank(rows: list[list[int]]) -> Optional[int]:
    """Fraction-free (Bareiss) elimination rank; None if exact division fails.

    Division failure cannot corrupt the result: the caller falls back to
    plain Fraction elimination.
    """
    mat = [row[:] for row in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, m):
            f = mat[r][col]
            if f:
                prow, rrow = mat[rank], mat[r]
                for c in range(col + 1, n):
                    num = p * rrow[c] - f * prow[c]
                    q, rem = divmod(num, prev)
                    if rem:
                        return None
                    rrow[c] = q
                rrow[col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _fraction_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    mat = [list(map(Fraction, row)) for row in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, m) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, m):
            f = mat[r][col] / p
            if f:
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def rank(rows: Sequence[Vector]) -> int:
    """Exact rank of the linear span of the given row vectors."""
    rows = [r for r in rows]
    if not rows:
        return 0
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise DimensionMismatchError("rows of unequal length")
    if width == 0:
        return 0
    lifted = [_lift_row(r) for r in rows]
    result = _int_rank(lifted)
    if result is None:
        result = _fraction_rank(rows)
    return result


class SpanBuilder:
    """Incrementally maintained row space; supports exact membership tests."""

    def __init__(self, width: int):
        self.width = width
        self._rows: list[list[Fraction]] = []  # reduced rows
        self._pivots: list[int] = []

    def _reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        v = list(v)
        for row, p in zip(self._rows, self._pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self._reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add v to the span; True if it enlarged the space."""
        red = self._reduce(v)
        for p, x in enumerate(red):
            if x:
                self._rows.append([a / x for a in red])
                self._pivots.append(p)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self._rows)


def solve_linear(rows: Sequence[Vector], rhs: Sequence[Fraction]) -> Optional[Vector]:
    """One exact solution of rows·x = rhs, or None if inconsistent.

    For underdetermined consistent systems the free variables are set to 0.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][col]
        aug[r] = [a / p for a in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return tuple(x)


def nullspace(rows: Sequence[Vector], width: int) -> list[Vector]:
    """Basis of {x : rows·x = 0} in Q^width."""
    mat = [list(map(Fraction, r)) for r in rows]
    m = len(mat)
    pivots: list[int] = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][col]
        mat[r] = [a / p for a in mat[r]]
        for i in range(m):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * width
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : normal·x = offset}; normal must be nonzero."""

    normal: Vector
    offset: Fraction

    def __post_init__(self):
        if is_zero(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def side(self, point: Vector) -> Fraction:
        """normal·point - offset: 0 on the plane, sign gives the side."""
        return dot(self.normal, point) - self.offset

    def normalized(self) -> "Hyperplane":
        """Integer coefficients with gcd 1; orientation preserved."""
        lifted = _lift_row(list(self.normal) + [self.offset])
        g = math.gcd(*(abs(v) for v in lifted))
        lifted = [v // g for v in lifted]
        return Hyperplane(tuple(Fraction(v) for v in lifted[:-1]), Fraction(lifted[-1]))


@dataclass(frozen=True)
class AffineSubspace:
    """base_point + span(direction_basis), with an independent basis."""

    base_point: Vector
    direction_basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.direction_basis)

    def contains(self, point: Vector) -> bool:
        diff = vsub(point, self.base_point)
        return rank(list(self.direction_basis) + [diff]) == len(self.direction_basis)


def affine_hull(points: Sequence[Vector]) -> AffineSubspace:
    """Smallest affine subspace containing the points."""
    if not points:
        raise ValueError("no points")
    base = points[0]
    span = SpanBuilder(len(base))
    basis = []
    for p in points[1:]:
        d = vsub(p, base)
        if span.add(d):
            basis.append(d)
    return AffineSubspace(base, tuple(basis))


def affine_dim(points: Sequence[Vector]) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    if not points:
        return -1
    base = points[0]
    return rank([vsub(p, base) for p in points[1:]])


def line_hyperplane_intersection(
    line_point: Vector, line_dir: Vector, h: Hyperplane
) -> Optional[Vector]:
    """Unique line/hyperplane intersection point, or None when parallel."""
    if is_zero(line_dir):
        raise ValueError("line direction must be nonzero")
    denom = dot(h.normal, line_dir)
    if denom == 0:
        return None
    t = (h.offset - dot(h.normal, line_point)) / denom
    return vadd(line_point, vscale(line_dir, t))


def line_meets_affine(line_point: Vector, line_dir: Vector, sub: AffineSubspace) -> bool:
    """Whether the line {p + t·u} intersects the affine subspace."""
    rows = list(sub.direction_basis) + [line_dir]
    diff = vsub(line_point, sub.base_point)
    return rank(rows + [diff]) == rank(rows)


def hyperplane_through(points: Sequence[Vector], beneath: Vector) -> Hyperplane:
    """Hyperplane spanned by `points`, oriented so normal·beneath < offset.

    The points must span affine dimension d-1 in ambient dimension d; the
    beneath point must be strictly off the plane.
    """
    base = points[0]
    width = len(base)
    diffs = [vsub(p, base) for p in points[1:]]
    normals = nullspace(diffs, width)
    if len(normals) != 1:
        raise ValueError(
            f"points span affine dimension {width - len(normals)}, need {width - 1}"
        )
    normal = normals[0]
    offset = dot(normal, base)
    gap = dot(normal, beneath) - offset
    if gap == 0:
        raise ValueError("orientation point lies on the hyperplane")
    if gap > 0:
        normal = vscale(normal, -1)
        offset = -offset
    return Hyperplane(normal, offset).normalized()


def linear_feasible(
    rows: Sequence[Vector], rhs: Sequence[Fraction]
) -> Optional[Vector]:
    """Exact witness for {y : rows·y <= rhs}, or None when infeasible.

    Phase-1 simplex with Bland's rule over rationals.  Free variables are
    split as y = u - w; each constraint gets a slack, and rows whose
    right-hand side is negative get an artificial variable.
    """
    m = len(rows)
    if m == 0:
        return tuple()
    n = len(rows[0])
    ncols = 2 * n + m  # u, w, slacks; artificials appended after
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    for i in range(m):
        row = [Fraction(c) for c in rows[i]]
        b = Fraction(rhs[i])
        sign = 1 if b >= 0 else -1
        line = [sign * c for c in row] + [-sign * c for c in row]
        line += [Fraction(0)] * m
        line[2 * n + i] = Fraction(sign)
        tableau.append([*line, sign * b])
        if sign == 1:
            basis.append(2 * n + i)
        else:
            basis.append(-1)  # placeholder, artificial assigned below
    for i in range(m):
        if basis[i] == -1:
            col = ncols + len(art_cols)
            art_cols.append(col)
            for r in range(m):
                tableau[r].insert(col, Fraction(1 if r == i else 0))
            basis[i] = col
    total = ncols + len(art_cols)
    cost = [Fraction(0)] * total
    for c in art_cols:
        cost[c] = Fraction(1)

    def reduced_cost(j: int) -> Fraction:
        return cost[j] - sum(cost[basis[i]] * tableau[i][j] for i in range(m))

    while True:
        enter = next((j for j in range(total) if reduced_cost(j) < 0), None)
        if enter is None:
            break
        ratios = [
            (tableau[i][total] / tableau[i][enter], basis[i], i)
            for i in range(m)
            if tableau[i][enter] > 0
        ]
        if not ratios:  # unbounded phase-1 objective cannot happen
            raise RuntimeError("phase-1 simplex unbounded")
        _, _, leave = min(ratios)
        pr = tableau[leave]
        p = pr[enter]
        tableau[leave] = [a / p for a in pr]
        for i in range(m):
            if i != leave and tableau[i][enter]:
                f = tableau[i][enter]
                tableau[i] = [a - f * b for a, b in zip(tableau[i], tableau[leave])]
        basis[leave] = enter

    objective = sum(cost[basis[i]] * tableau[i][total] for i in range(m))
    if objective != 0:
        return None
    y = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        if bcol < n:
            y[bcol] += tableau[i][total]
        elif bcol < 2 * n:
            y[bcol - n] -= tableau[i][total]
    return tuple(y)
