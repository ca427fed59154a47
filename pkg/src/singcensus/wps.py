"""Arithmetic audit of singular strata of general weighted hypersurfaces.

For a general member of degree ``d`` in a weighted projective space the
questions answered here are purely arithmetic: a coordinate point lies on
the general member iff its weight does not divide ``d`` (no pure power of
that coordinate has degree ``d``), and a coordinate line with both weights
equal to ``w | d`` meets the general member in ``d/w`` points with stabilizer
of order ``w``.  Everything else is flagged for manual analysis rather than
guessed.

The local quotient-type triples attached to the audited family are quoted
results, not derived ones; the report marks the provenance of every item so
derived counts are never confused with quoted types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class WeightedFamily:
    """General hypersurfaces of fixed degree in a weighted projective space."""

    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if len(self.weights) < 2:
            raise ValueError("need at least 2 weights")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        if self.degree < 1:
            raise ValueError("degree must be positive")


@dataclass(frozen=True)
class VertexMembership:
    """Does the i-th coordinate point lie on the general member?"""

    index: int
    weight: int
    on_member: bool
    stabilizer: int | None  # weight of the point when it lies on the member

    @property
    def is_singular_point(self) -> bool:
        return self.on_member and self.weight > 1


def vertex_membership(family: WeightedFamily, i: int) -> VertexMembership:
    """The coordinate point P_i lies on the general member iff w_i does not
    divide the degree (otherwise the pure power x_i^(d/w_i) separates it)."""
    if not 0 <= i < len(family.weights):
        raise ValueError(f"vertex index {i} out of range")
    w = family.weights[i]
    on = family.degree % w != 0
    return VertexMembership(i, w, on, w if on else None)


@dataclass(frozen=True)
class StratumAnalysis:
    """General-member points on the coordinate line through vertices i and j."""

    indices: tuple[int, int]
    shared_factor: int
    countable: bool
    point_count: int | None
    stabilizer: int | None
    note: str


def stratum_points(family: WeightedFamily, i: int, j: int) -> StratumAnalysis:
    """Count general-member points on a one-dimensional singular stratum.

    Only the clean case is counted: equal weights ``w`` dividing the degree,
    where the restriction of a general form is a binary form of degree
    ``d/w`` with that many simple roots.  Anything else (unequal weights
    sharing a factor, or a weight not dividing the degree, which would put
    the whole line inside the member) is flagged, never guessed.
    """
    if i == j:
        raise ValueError("a stratum needs two distinct vertices")
    wi, wj = family.weights[i], family.weights[j]
    g = math.gcd(wi, wj)
    if g <= 1:
        raise ValueError(
            f"weights {wi} and {wj} are coprime; the stratum is not singular"
        )
    pair = (min(i, j), max(i, j))
    if wi != wj:
        return StratumAnalysis(
            pair, g, False, None, None,
            "unequal weights sharing a factor: manual analysis required",
        )
    if family.degree % wi != 0:
        return StratumAnalysis(
            pair, g, False, None, None,
            "weight does not divide the degree: the general member contains "
            "the stratum; manual analysis required",
        )
    return StratumAnalysis(
        pair, g, True, family.degree // wi, wi, ""
    )


@dataclass(frozen=True)
class QuotedType:
    """A local quotient-singularity type attached verbatim, not derived."""

    order: int
    weights: tuple[int, ...]
    provenance: str = "quoted"


@dataclass(frozen=True)
class StratumReport:
    weights: tuple[int, ...]
    degree: int
    vertices: tuple[VertexMembership, ...]
    strata: tuple[StratumAnalysis, ...]
    total: int | None  # None when some stratum needs manual analysis
    quoted_types: tuple[QuotedType, ...]

    @property
    def flagged(self) -> tuple[StratumAnalysis, ...]:
        return tuple(s for s in self.strata if not s.countable)

    @property
    def stabilizer_orders(self) -> tuple[int, ...]:
        """Multiset of stabilizer orders of the counted singular points."""
        orders: list[int] = []
        for v in self.vertices:
            if v.is_singular_point:
                orders.append(v.stabilizer)
        for s in self.strata:
            if s.countable and s.stabilizer and s.stabilizer > 1:
                orders.extend([s.stabilizer] * s.point_count)
        return tuple(sorted(orders))


def audit(
    weights: Sequence[int], degree: int, quoted_types: Sequence[QuotedType] = ()
) -> StratumReport:
    """Full vertex-and-line audit of one weighted family.

    The total counts isolated singular points of the general member found on
    vertices and on countable one-dimensional strata; it is None whenever a
    stratum had to be flagged.
    """
    family = WeightedFamily(tuple(weights), degree)
    n = len(family.weights)
    vertices = tuple(vertex_membership(family, i) for i in range(n))
    strata = []
    for i in range(n):
        for j in range(i + 1, n):
            if math.gcd(family.weights[i], family.weights[j]) > 1:
                strata.append(stratum_points(family, i, j))
    strata = tuple(strata)
    if any(not s.countable for s in strata):
        total = None
    else:
        total = sum(1 for v in vertices if v.is_singular_point) + sum(
            s.point_count
            for s in strata
            if s.stabilizer and s.stabilizer > 1
        )
    return StratumReport(
        weights=family.weights,
        degree=degree,
        vertices=vertices,
        strata=strata,
        total=total,
        quoted_types=tuple(quoted_types),
    )


def audit_family(k: int) -> StratumReport:
    """Audit the degree-(6k+3) family in weights (1, 3, 3, 3k+1, 3k+2).

    The general member has 2k+3 isolated singular points: the two vertices
    of weights 3k+1 and 3k+2 (their weights never divide 6k+3) plus 2k+1
    points on the line where both weights equal 3.  The count grows without
    bound in k while the Picard number stays 1, so no bound on isolated
    singular points in terms of the Picard number alone can exist for
    threefolds.  The attached local types are quoted, not derived.
    """
    if k < 1:
        raise ValueError("the family is indexed by k >= 1")
    weights = (1, 3, 3, 3 * k + 1, 3 * k + 2)
    degree = 6 * k + 3
    quoted = (
        QuotedType(3 * k + 1, (1, 3, 3)),
        QuotedType(3 * k + 2, (1, 3, 3)),
        QuotedType(3, (1, 1, 2)),
    )
    return audit(weights, degree, quoted)


def report_to_dict(report: StratumReport) -> dict:
    return {
        "weights": list(report.weights),
        "degree": report.degree,
        "vertices": [
            {
                "index": v.index,
                "weight": v.weight,
                "on_member": v.on_member,
                "stabilizer": v.stabilizer,
                "singular": v.is_singular_point,
                "provenance": "derived",
            }
            for v in report.vertices
        ],
        "strata": [
            {
                "indices": list(s.indices),
                "shared_factor": s.shared_factor,
                "countable": s.countable,
                "point_count": s.point_count,
                "stabilizer": s.stabilizer,
                "note": s.note,
                "provenance": "derived",
            }
            for s in report.strata
        ],
        "total": report.total,
        "quoted_types": [
            {
                "order": q.order,
                "weights": list(q.weights),
                "provenance": q.provenance,
            }
            for q in report.quoted_types
        ],
    }
