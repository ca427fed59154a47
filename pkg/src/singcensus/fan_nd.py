"""Face censuses of simplicial fans in arbitrary dimension.

A fan is given explicitly as primitive rays plus the index sets of its
maximal cones, all of size ``d``.  Since every cone is simplicial, each of
its generator subsets spans a face, so the face poset is pure subset
combinatorics; the counts per dimension satisfy the Euler identity of a
triangulated sphere and the trivial binomial bounds, and smoothness of a
cone is decided by the invariant factors of its generator matrix.

Completeness in dimension >= 3 is NOT verified (that would need a sphere
covering check).  The constructor enforces a pseudo-manifold proxy instead:
every facet, i.e. every (d-1)-subset of a maximal cone, must be shared by
exactly two maximal cones.  The census only uses the triangulation
structure, so the proxy is all it needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from . import toric
from .lattice import det_int, invariant_factors, primitive


@dataclass(frozen=True)
class FanNd:
    """Simplicial fan data: dimension, primitive rays, maximal cone index sets."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]


def simplicial_fan(
    dim: int,
    rays: Sequence[Sequence[int]],
    maximal_cones: Iterable[Sequence[int]],
) -> FanNd:
    """Validate and normalize explicit fan data.

    Checks ray primitivity and dimension, simpliciality of every maximal
    cone (nonsingular generator matrix), the facet-sharing condition, and
    that every ray is used.
    """
    if dim < 2:
        raise ValueError("dimension must be >= 2")
    prims = []
    for r in rays:
        p = primitive(tuple(r))
        if len(p) != dim:
            raise ValueError(f"ray {tuple(r)} does not have dimension {dim}")
        if p != tuple(r):
            raise ValueError(f"ray {tuple(r)} is not primitive")
        prims.append(p)
    if len(set(prims)) != len(prims):
        raise ValueError("duplicate rays")
    cones = []
    for cone in maximal_cones:
        idx = tuple(sorted(cone))
        if len(set(idx)) != dim:
            raise ValueError(f"maximal cone {tuple(cone)} must have {dim} distinct rays")
        if any(i < 0 or i >= len(prims) for i in idx):
            raise ValueError(f"maximal cone {idx} has a ray index out of range")
        matrix = tuple(zip(*(prims[i] for i in idx)))  # rays as columns
        if det_int(matrix) == 0:
            raise ValueError(f"maximal cone {idx} is not simplicial")
        cones.append(idx)
    if len(set(cones)) != len(cones):
        raise ValueError("duplicate maximal cones")
    facet_count: dict[tuple[int, ...], int] = {}
    for idx in cones:
        for drop in range(dim):
            facet = idx[:drop] + idx[drop + 1 :]
            facet_count[facet] = facet_count.get(facet, 0) + 1
    bad = [f for f, c in facet_count.items() if c != 2]
    if bad:
        raise ValueError(
            f"facet {bad[0]} is shared by {facet_count[bad[0]]} maximal cones, expected 2"
        )
    used = {i for idx in cones for i in idx}
    if used != set(range(len(prims))):
        raise ValueError("every ray must appear in at least one maximal cone")
    return FanNd(dim, tuple(prims), tuple(sorted(cones)))


def fannd_from_dict(data) -> FanNd:
    for field in ("dimension", "rays", "maximal_cones"):
        if not isinstance(data, Mapping) or field not in data:
            raise ValueError(f'fan file needs a "{field}" field')
    return simplicial_fan(data["dimension"], data["rays"], data["maximal_cones"])


def fannd_to_dict(fan: FanNd) -> dict:
    return {
        "dimension": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "maximal_cones": [list(c) for c in fan.maximal_cones],
    }


def fan2_to_nd(fan: toric.Fan2) -> FanNd:
    """Reinterpret a complete plane fan as explicit two-dimensional fan data."""
    n = len(fan.rays)
    cones = [tuple(sorted((i, (i + 1) % n))) for i in range(n)]
    return simplicial_fan(2, fan.rays, cones)


def faces(fan: FanNd) -> dict[int, set[tuple[int, ...]]]:
    """All cones of the fan, keyed by dimension.

    Every nonempty subset of a simplicial cone's generators spans a face;
    faces shared between maximal cones are deduplicated.
    """
    result: dict[int, set[tuple[int, ...]]] = {k: set() for k in range(1, fan.dim + 1)}
    for cone in fan.maximal_cones:
        for k in range(1, fan.dim + 1):
            result[k].update(combinations(cone, k))
    return result


def cone_invariant_factors(fan: FanNd, cone: Sequence[int]) -> tuple[int, ...]:
    matrix = tuple(zip(*(fan.rays[i] for i in cone)))  # generators as columns
    return invariant_factors(matrix)


def is_smooth_cone(fan: FanNd, cone: Sequence[int]) -> bool:
    """A cone is smooth iff its generators extend to a basis of the lattice,
    i.e. all invariant factors of the generator matrix are 1."""
    return all(f == 1 for f in cone_invariant_factors(fan, cone))


@dataclass(frozen=True)
class CensusReport:
    """Counts of cones by dimension together with the classical identities.

    ``singular_counts[k]`` counts all non-smooth k-cones;
    ``minimally_singular_counts[k]`` counts the non-smooth k-cones all of
    whose proper faces are smooth (the singularity genuinely appears on that
    stratum, not on a deeper one).  Both readings of "singular points of
    codimension k" are reported.
    """

    dim: int
    counts: dict[int, int]
    singular_counts: dict[int, int]
    minimally_singular_counts: dict[int, int]
    euler_ok: bool
    binomial_ok: bool
    picard_number: int


def census(fan: FanNd) -> CensusReport:
    """Face census: counts by dimension, Euler and binomial identities.

    The alternating sum of the counts must equal the Euler characteristic
    ``1 - (-1)^d`` of the sphere the fan triangulates, the count in each
    dimension ``k <= d-1`` is at most ``C(#rays, k)``, and the Picard number
    is ``#rays - d``.
    """
    face_map = faces(fan)
    counts = {k: len(face_map[k]) for k in face_map}
    d = fan.dim
    euler = sum((-1) ** (k - 1) * counts[k] for k in range(1, d + 1))
    euler_ok = euler == 1 - (-1) ** d
    n_rays = counts[1]
    binomial_ok = all(
        counts[k] <= math.comb(n_rays, k) for k in range(1, d)
    )
    smooth: dict[tuple[int, ...], bool] = {}
    for k in range(1, d + 1):
        for cone in face_map[k]:
            smooth[cone] = is_smooth_cone(fan, cone)
    singular_counts = {}
    minimal_counts = {}
    for k in range(1, d + 1):
        bad = [c for c in face_map[k] if not smooth[c]]
        singular_counts[k] = len(bad)
        minimal_counts[k] = sum(
            1
            for c in bad
            if all(
                smooth[f]
                for kk in range(1, k)
                for f in combinations(c, kk)
            )
        )
    return CensusReport(
        dim=d,
        counts=counts,
        singular_counts=singular_counts,
        minimally_singular_counts=minimal_counts,
        euler_ok=euler_ok,
        binomial_ok=binomial_ok,
        picard_number=n_rays - d,
    )


def singular_orbit_count(fan: FanNd, k: int) -> int:
    """Number of non-smooth cones of dimension ``k``, for ``2 <= k <= d``."""
    if not 2 <= k <= fan.dim:
        raise ValueError(f"codimension {k} out of range 2..{fan.dim}")
    return sum(1 for cone in faces(fan)[k] if not is_smooth_cone(fan, cone))


def census_to_dict(report: CensusReport) -> dict:
    return {
        "dimension": report.dim,
        "counts": {str(k): v for k, v in sorted(report.counts.items())},
        "singular_counts": {
            str(k): v for k, v in sorted(report.singular_counts.items())
        },
        "minimally_singular_counts": {
            str(k): v
            for k, v in sorted(report.minimally_singular_counts.items())
        },
        "euler_ok": report.euler_ok,
        "binomial_ok": report.binomial_ok,
        "picard_number": report.picard_number,
    }


def standard_fans() -> dict[str, FanNd]:
    """A small library of explicit fans in dimensions 2, 3 and 4."""
    e = lambda i, d: tuple(int(j == i) for j in range(d))  # noqa: E731

    def simplex_fan(d: int, last=None) -> FanNd:
        rays = [e(i, d) for i in range(d)]
        rays.append(tuple(-x for x in last) if last else tuple([-1] * d))
        cones = [
            tuple(j for j in range(d + 1) if j != drop) for drop in range(d + 1)
        ]
        return simplicial_fan(d, rays, cones)

    def orthant_fan(d: int) -> FanNd:
        rays = [e(i, d) for i in range(d)] + [
            tuple(-x for x in e(i, d)) for i in range(d)
        ]
        cones = []
        for signs in product((0, 1), repeat=d):
            cones.append(tuple(i + d * s for i, s in zip(range(d), signs)))
        return simplicial_fan(d, rays, cones)

    def product_with_line(base: FanNd) -> FanNd:
        d = base.dim + 1
        rays = [r + (0,) for r in base.rays]
        up, down = len(rays), len(rays) + 1
        rays += [e(d - 1, d), tuple(-x for x in e(d - 1, d))]
        cones = []
        for cone in base.maximal_cones:
            cones.append(tuple(cone) + (up,))
            cones.append(tuple(cone) + (down,))
        return simplicial_fan(d, rays, cones)

    plane = fan2_to_nd(toric.fan_from_rays([(1, 0), (0, 1), (-1, -1)]))
    quadric = fan2_to_nd(
        toric.fan_from_rays([(1, 0), (0, 1), (-1, 0), (0, -1)])
    )
    fake_plane = fan2_to_nd(toric.fan_from_rays([(1, 0), (0, 1), (-1, -2)]))
    weighted_plane = fan2_to_nd(toric.fan_from_rays([(1, 0), (0, 1), (-2, -3)]))
    hexagon = fan2_to_nd(
        toric.fan_from_rays(
            [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
        )
    )
    parabolic = fan2_to_nd(toric.parabolic_fan_family(3))
    return {
        "projective-plane": plane,
        "quadric-surface": quadric,
        "half-point-plane": fake_plane,
        "weighted-plane-1-2-3": weighted_plane,
        "hexagon-del-pezzo": hexagon,
        "parabolic-family-3": parabolic,
        "projective-3-space": simplex_fan(3),
        "weighted-3-space-1-1-1-2": simplex_fan(3, last=(1, 1, 2)),
        "cube-fan-3": orthant_fan(3),
        "plane-times-line": product_with_line(plane),
        "projective-4-space": simplex_fan(4),
        "weighted-4-space-1-1-1-1-3": simplex_fan(4, last=(1, 1, 1, 3)),
        "cross-polytope-4": orthant_fan(4),
        "three-space-times-line": product_with_line(simplex_fan(3)),
    }
