"""Pinned measurement systems over a prime field.

Plane: squared-distance equations for every edge, with the first edge's
endpoints pinned to kill translations and rotations (x_a = y_a = 0, y_b = 0).
Sphere: unit-norm equations plus inner-product equations for every edge, with
x_1 = y_1 = 0, z_1 = 1 and y_2 = 0.  Either way each residual symmetry class
meets the pinned slice in exactly four points, so a finite solution count is
four times the realisation number.

Measurement values are taken from an actual random realisation rather than
sampled freely; overdetermined systems of non-minimally-rigid graphs then
stay consistent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graphs import Graph
from .polyring import Ring

Poly = dict[int, int]


class DegenerateSample(Exception):
    """The random realisation hit a degeneracy; the caller should resample."""


@dataclass
class PolynomialSystem:
    ring: Ring
    equations: list[Poly]
    provenance: dict = field(default_factory=dict)

    @property
    def variable_names(self) -> tuple[str, ...]:
        return self.ring.names


def _plane_sample(g: Graph, p: int, rng: random.Random) -> tuple[list[tuple[int, int]], dict]:
    points = [(rng.randrange(p), rng.randrange(p)) for _ in range(g.n)]
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if points[i] == points[j]:
                raise DegenerateSample("coincident vertices")
    lam = {}
    for u, v in g.edge_list():
        dx = points[u][0] - points[v][0]
        dy = points[u][1] - points[v][1]
        val = (dx * dx + dy * dy) % p
        if val == 0:
            raise DegenerateSample("isotropic edge length")
        lam[(u, v)] = val
    return points, lam


def build_planar_system(g: Graph, prime: int, rng: random.Random) -> PolynomialSystem:
    """Pinned squared-distance system; rigid input gives a finite solution set."""
    if g.m == 0:
        raise ValueError("graph has no edges")
    points, lam = _plane_sample(g, prime, rng)
    a, b = g.edge_list()[0]  # pin edge: x_a = y_a = 0, y_b = 0

    names = []
    index: dict[tuple[int, str], int] = {}
    for v in range(g.n):
        for coord in ("x", "y"):
            if v == a or (v == b and coord == "y"):
                continue
            index[(v, coord)] = len(names)
            names.append(f"{coord}{v + 1}")
    ring = Ring(names, prime)
    nv = ring.nvars

    def var(v: int, coord: str) -> int | None:
        return index.get((v, coord))

    def sq_diff_terms(i: int, j: int, coord: str) -> list[tuple[list[int], int]]:
        # (c_i - c_j)^2 expanded with pinned coordinates treated as 0
        vi, vj = var(i, coord), var(j, coord)
        terms = []
        if vi is not None:
            e = [0] * nv
            e[vi] = 2
            terms.append((e, 1))
        if vj is not None:
            e = [0] * nv
            e[vj] = 2
            terms.append((e, 1))
        if vi is not None and vj is not None:
            e = [0] * nv
            e[vi] = 1
            e[vj] = 1
            terms.append((e, -2))
        return terms

    equations = []
    for u, v in g.edge_list():
        terms = sq_diff_terms(u, v, "x") + sq_diff_terms(u, v, "y")
        terms.append(([0] * nv, -lam[(u, v)]))
        equations.append(ring.poly_from_terms(terms))
    return PolynomialSystem(
        ring, equations, {"mode": "plane", "points": points, "measurements": lam, "pin": (a, b)}
    )


def _sphere_sample(g: Graph, p: int, rng: random.Random) -> tuple[list[tuple[int, int, int]], dict]:
    points = []
    for _ in range(g.n):
        while True:
            a = rng.randrange(p)
            b = rng.randrange(p)
            d = (1 + a * a + b * b) % p
            if d:
                inv = pow(d, -1, p)
                points.append(
                    (2 * a * inv % p, 2 * b * inv % p, (1 - a * a - b * b) * inv % p)
                )
                break
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if points[i] == points[j]:
                raise DegenerateSample("coincident vertices")
    meas = {}
    for u, v in g.edge_list():
        ip = sum(points[u][t] * points[v][t] for t in range(3)) % p
        if ip == 1 or ip == p - 1:
            raise DegenerateSample("degenerate inner product")
        meas[(u, v)] = ip
    return points, meas


def build_spherical_system(g: Graph, prime: int, rng: random.Random) -> PolynomialSystem:
    """Pinned sphere system: unit-norm equations plus edge inner products."""
    if g.n < 2:
        raise ValueError("need at least two vertices")
    points, meas = _sphere_sample(g, prime, rng)

    names = []
    index: dict[tuple[int, str], int] = {}
    for v in range(g.n):
        for coord in ("x", "y", "z"):
            if v == 0 or (v == 1 and coord == "y"):
                continue
            index[(v, coord)] = len(names)
            names.append(f"{coord}{v + 1}")
    ring = Ring(names, prime)
    nv = ring.nvars
    # pinned coordinate values: vertex 0 at (0, 0, 1), vertex 1 has y = 0
    pinned = {(0, "x"): 0, (0, "y"): 0, (0, "z"): 1, (1, "y"): 0}

    def inner_product_terms(i: int, j: int) -> list[tuple[list[int], int]]:
        terms = []
        for coord in ("x", "y", "z"):
            vi = index.get((i, coord))
            vj = index.get((j, coord))
            ci = pinned.get((i, coord))
            cj = pinned.get((j, coord))
            e = [0] * nv
            if vi is not None and vj is not None:
                if vi == vj:
                    e[vi] = 2
                else:
                    e[vi] = 1
                    e[vj] = 1
                terms.append((e, 1))
            elif vi is not None:
                if cj:
                    e[vi] = 1
                    terms.append((e, cj))
            elif vj is not None:
                if ci:
                    e[vj] = 1
                    terms.append((e, ci))
            else:
                if ci and cj:
                    terms.append((e, ci * cj))
        return terms

    equations = []
    for v in range(1, g.n):
        terms = inner_product_terms(v, v)
        terms.append(([0] * nv, -1))
        equations.append(ring.poly_from_terms(terms))
    for u, v in g.edge_list():
        terms = inner_product_terms(u, v)
        terms.append(([0] * nv, -meas[(u, v)]))
        equations.append(ring.poly_from_terms(terms))
    return PolynomialSystem(
        ring, equations, {"mode": "sphere", "points": points, "measurements": meas}
    )
