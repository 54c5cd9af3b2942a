"""f-vectors and the alternating-sum check f^0 - f^1 + ... + (-1)^d f^d = 1."""

from __future__ import annotations

from .polytope import FaceLattice, Polytope, face_lattice

FVector = tuple[int, ...]


def f_vector(lattice: FaceLattice) -> FVector:
    """Face counts by dimension, (f^0, ..., f^d); includes the top face."""
    counts = tuple(len(lattice.faces(c)) for c in range(lattice.dim + 1))
    if counts[-1] != 1:
        raise ValueError("lattice has no unique top face")
    return counts


def euler_alternating_sum(f: FVector) -> int:
    """sum of (-1)^c f^c over all dimensions c, computed exactly."""
    return sum((-1) ** c * n for c, n in enumerate(f))


def check_euler(p: Polytope) -> bool:
    """Whether the alternating face-count sum of p equals 1."""
    return euler_alternating_sum(f_vector(face_lattice(p))) == 1
