"""Shared small complexes used across the suite."""

from __future__ import annotations

import random

from raaghom.complexes import SimplicialComplex, flag_completion

# The 6-vertex triangulation of the real projective plane (antipodal
# quotient of the icosahedron): every pair of vertices spans an edge,
# every vertex link is a 5-cycle, 10 triangles in total.
RP2_6_TRIANGLES = [
    (1, 2, 3),
    (1, 3, 4),
    (1, 4, 5),
    (1, 5, 6),
    (1, 2, 6),
    (2, 3, 5),
    (2, 4, 5),
    (2, 4, 6),
    (3, 5, 6),
    (3, 4, 6),
]


def rp2_six() -> SimplicialComplex:
    return SimplicialComplex(range(1, 7), RP2_6_TRIANGLES)


def c4() -> SimplicialComplex:
    return flag_completion([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 0)])


def cycle_complex(n: int) -> SimplicialComplex:
    """Hollow n-cycle (not flag-completed, so n = 3 stays a circle)."""
    return SimplicialComplex(range(n), [(i, (i + 1) % n) for i in range(n)])


def full_simplex(n: int) -> SimplicialComplex:
    verts = list(range(n))
    return flag_completion(verts, [(i, j) for i in range(n) for j in range(i + 1, n)])


def two_points() -> SimplicialComplex:
    return SimplicialComplex(["a", "b"], [("a",), ("b",)])


def octahedron() -> SimplicialComplex:
    # join of three pairs of non-adjacent vertices
    verts = ["a0", "a1", "b0", "b1", "c0", "c1"]
    pairs = {"a": ("a0", "a1"), "b": ("b0", "b1"), "c": ("c0", "c1")}
    edges = []
    for x in verts:
        for y in verts:
            if x < y and x[0] != y[0]:
                edges.append((x, y))
    return flag_completion(verts, edges)


def random_flag_complex(rng: random.Random, max_vertices: int, p: float | None = None) -> SimplicialComplex:
    n = rng.randint(0, max_vertices)
    prob = rng.uniform(0.2, 0.8) if p is None else p
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < prob]
    return flag_completion(range(n), edges)
