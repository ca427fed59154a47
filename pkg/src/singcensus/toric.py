"""Complete fans in the plane: singularity census, resolutions, positivity,
contractions, and bound scanning.

A complete fan is stored as the tuple of its primitive ray generators in
counterclockwise order, rotated so the lexicographically smallest ray comes
first.  Every maximal cone is spanned by two cyclically adjacent rays, so the
whole intersection theory of the surface reduces to 2x2 determinants of
adjacent ray pairs, which stay exact integers.

Conventions used throughout:

* the index of the cone spanned by adjacent rays ``u``, ``v`` is
  ``det2(u, v) >= 1``; the cone is smooth exactly when the index is 1;
* a cone of index ``r`` carries the cyclic quotient singularity
  ``1/r(1, a)``, where ``a`` is read off from the unimodular normal form
  ``Cone((r, -a), (0, 1))``;
* the anticanonical class is the sum of all invariant divisors, and its
  positivity is decided by the convex-hull position of the ray generators.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .lattice import det2, primitive, solve_rational, xgcd

Ray = tuple[int, int]

AMPLE = "ample"
NEF_NOT_AMPLE = "nef_not_ample"
NOT_NEF = "not_nef"


class NotContractibleError(ValueError):
    """The chosen invariant curve has nonnegative self-intersection."""


class NotKNegativeError(ValueError):
    """The chosen contraction is not a K-negative step."""


# ---------------------------------------------------------------------------
# cones and quotient singularities


@dataclass(frozen=True)
class Cone2:
    """A strictly convex rational cone spanned by two primitive plane rays.

    Generators are stored positively oriented (``det2 > 0``); the constructor
    accepts either order.  The determinant equals the index of the sublattice
    spanned by the generators, so index 1 means a smooth cone.
    """

    generators: tuple[Ray, Ray]

    @staticmethod
    def spanned_by(u: Sequence[int], v: Sequence[int]) -> "Cone2":
        pu, pv = primitive(tuple(u)), primitive(tuple(v))
        if len(pu) != 2 or len(pv) != 2:
            raise ValueError("plane cones need 2-dimensional generators")
        d = det2(pu, pv)
        if d == 0:
            raise ValueError(f"generators {pu} and {pv} are linearly dependent")
        if d < 0:
            pu, pv = pv, pu
        return Cone2((pu, pv))

    @property
    def index(self) -> int:
        return det2(*self.generators)


@dataclass(frozen=True)
class QuotientSingularity:
    """Cyclic quotient singularity of type ``1/r(1, a)``.

    ``r == 1`` encodes a smooth point (then ``a == 0``); otherwise
    ``0 < a < r`` and ``gcd(a, r) == 1``.
    """

    r: int
    a: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("order must be positive")
        if self.r == 1:
            if self.a != 0:
                raise ValueError("a smooth point is encoded as 1/1(1,0)")
        elif not 0 < self.a < self.r:
            raise ValueError("weight must satisfy 0 < a < r")
        elif math.gcd(self.a, self.r) != 1:
            raise ValueError("weight must be coprime to the order")

    @property
    def is_smooth(self) -> bool:
        return self.r == 1

    def __str__(self) -> str:
        return f"1/{self.r}(1,{self.a})"


def quotient_type(cone: Cone2) -> QuotientSingularity:
    """Singularity type of the torus-fixed point of a plane cone.

    Computed by the unimodular change of basis that sends the second
    generator to ``(0, 1)`` and the first to ``(r, -a)`` with ``0 <= a < r``.
    The result is a GL(2, Z) invariant; since ``1/r(1, a)`` and
    ``1/r(1, a^{-1} mod r)`` are the same germ (the two generators swap
    roles), the reported weight is the smaller of the pair.
    """
    u, v = cone.generators
    r = det2(u, v)
    if r == 1:
        return QuotientSingularity(1, 0)
    p, q = v
    _, s, t = xgcd(p, q)  # s*p + t*q == 1, so [[q, -p], [s, t]] has det 1
    y = s * u[0] + t * u[1]
    a = (-y) % r
    a = min(a, pow(a, -1, r))
    return QuotientSingularity(r, a)


def hj_expand(r: int, a: int) -> tuple[int, ...]:
    """Continued-fraction expansion ``r/a = b1 - 1/(b2 - 1/(...))``.

    All ``b_i >= 2``; this is the expansion whose chain of rational curves
    with self-intersections ``-b_i`` is the exceptional locus of the minimal
    resolution of ``1/r(1, a)``.
    """
    if not 0 < a < r:
        raise ValueError("need 0 < a < r")
    if math.gcd(a, r) != 1:
        raise ValueError("need gcd(a, r) = 1")
    chain = []
    while a > 0:
        b = -(-r // a)  # ceil(r / a)
        chain.append(b)
        r, a = a, b * a - r
    return tuple(chain)


@dataclass(frozen=True)
class HJResolution:
    """Minimal-resolution data of a cyclic quotient surface singularity.

    ``chain[i]`` is the negated self-intersection of the i-th exceptional
    curve; ``discrepancies[i]`` solves the adjunction system on the chain and
    lies in ``(-1, 0]``.
    """

    chain: tuple[int, ...]
    discrepancies: tuple[Fraction, ...]

    @property
    def log_discrepancies(self) -> tuple[Fraction, ...]:
        return tuple(d + 1 for d in self.discrepancies)


def chain_gram(chain: Sequence[int]) -> tuple[tuple[Fraction, ...], ...]:
    """Intersection matrix of a string of curves with self-intersections -b_i."""
    k = len(chain)
    return tuple(
        tuple(
            Fraction(-chain[i]) if i == j else Fraction(int(abs(i - j) == 1))
            for j in range(k)
        )
        for i in range(k)
    )


def resolve_singularity(q: QuotientSingularity) -> HJResolution:
    """Exceptional chain and exact discrepancies of ``1/r(1, a)``.

    Solves ``sum_i d_i (E_i . E_j) = K . E_j`` on the chain, where adjunction
    on the rational curves gives ``K . E_j = b_j - 2``.
    """
    if q.r == 1:
        raise ValueError("a smooth point has nothing to resolve")
    chain = hj_expand(q.r, q.a)
    gram = chain_gram(chain)
    rhs = [Fraction(b - 2) for b in chain]
    disc = solve_rational(gram, rhs)
    return HJResolution(chain, tuple(disc))


# ---------------------------------------------------------------------------
# fans


def _half(v: Ray) -> int:
    # 0 for polar angles in [0, pi), 1 for [pi, 2*pi)
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angular_cmp(a: Ray, b: Ray) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    d = det2(a, b)
    if d > 0:
        return -1
    if d < 0:
        return 1
    return 0


_angular_key = functools.cmp_to_key(_angular_cmp)


@dataclass(frozen=True)
class Fan2:
    """A complete simplicial fan in the plane.

    ``rays`` are primitive, pairwise distinct, listed counterclockwise with
    every adjacent pair (cyclically) positively oriented, and rotated so the
    lexicographically smallest ray comes first.  Build instances through
    :func:`fan_from_rays`, which validates all of that.
    """

    rays: tuple[Ray, ...]

    def cone(self, i: int) -> Cone2:
        n = len(self.rays)
        return Cone2((self.rays[i % n], self.rays[(i + 1) % n]))

    def cones(self) -> tuple[Cone2, ...]:
        return tuple(self.cone(i) for i in range(len(self.rays)))

    def wall_determinants(self) -> tuple[int, ...]:
        """Index of each maximal cone, in ray order."""
        n = len(self.rays)
        return tuple(
            det2(self.rays[i], self.rays[(i + 1) % n]) for i in range(n)
        )

    @property
    def picard_number(self) -> int:
        return len(self.rays) - 2


def fan_from_rays(rays: Sequence[Sequence[int]]) -> Fan2:
    """Normalize a set of ray generators into a complete fan.

    Primitivizes, sorts counterclockwise, checks completeness, and rotates to
    the canonical starting ray.  Raises ``ValueError`` when fewer than three
    rays remain, when two rays share a direction, or when the rays stay
    inside a closed half-plane (so the fan would not be complete).
    """
    prims = []
    for r in rays:
        p = primitive(tuple(r))
        if len(p) != 2:
            raise ValueError("plane fans need 2-dimensional rays")
        prims.append(p)
    if len(prims) < 3:
        raise ValueError(f"a complete fan needs at least 3 rays, got {len(prims)}")
    prims.sort(key=_angular_key)
    n = len(prims)
    for i in range(n):
        u, v = prims[i], prims[(i + 1) % n]
        if u == v:
            raise ValueError(f"duplicate ray direction {u}")
        if det2(u, v) <= 0:
            raise ValueError(
                "rays lie in a closed half-plane; the fan is not complete"
            )
    start = prims.index(min(prims))
    return Fan2(tuple(prims[start:] + prims[:start]))


def fan_to_dict(fan: Fan2) -> dict:
    return {"rays": [list(r) for r in fan.rays]}


def fan_from_dict(data) -> Fan2:
    if not isinstance(data, Mapping) or "rays" not in data:
        raise ValueError('fan file needs an object with a "rays" field')
    rays = data["rays"]
    if not isinstance(rays, Sequence) or isinstance(rays, (str, bytes)):
        raise ValueError('"rays" must be a list of 2-element integer lists')
    for i, r in enumerate(rays):
        if (
            not isinstance(r, Sequence)
            or len(r) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in r)
        ):
            raise ValueError(f"ray #{i} is not a 2-element integer list: {r!r}")
    return fan_from_rays([tuple(r) for r in rays])


# ---------------------------------------------------------------------------
# intersection theory


def toric_intersection(fan: Fan2) -> tuple[tuple[Fraction, ...], ...]:
    """Exact intersection matrix of the invariant divisors.

    Cyclically adjacent divisors meet in one torus-fixed point of local index
    ``det2(u_i, u_{i+1})``, non-adjacent invariant divisors are disjoint, and
    the self-intersection comes from the wall relation between the two
    neighbours of a ray.
    """
    rays = fan.rays
    n = len(rays)
    walls = fan.wall_determinants()
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        j = (i + 1) % n
        m[i][j] = m[j][i] = Fraction(1, walls[i])
    for i in range(n):
        cross = det2(rays[i - 1], rays[(i + 1) % n])
        m[i][i] = Fraction(-cross, walls[i - 1] * walls[i])
    return tuple(tuple(row) for row in m)


def ray_self_intersection(fan: Fan2, i: int) -> Fraction:
    rays = fan.rays
    n = len(rays)
    d_prev = det2(rays[i - 1], rays[i])
    d_next = det2(rays[i], rays[(i + 1) % n])
    cross = det2(rays[i - 1], rays[(i + 1) % n])
    return Fraction(-cross, d_prev * d_next)


def anticanonical_degree(fan: Fan2, i: int) -> Fraction:
    """Degree ``-K . D_i`` of the anticanonical class on the i-th divisor."""
    rays = fan.rays
    n = len(rays)
    d_prev = det2(rays[i - 1], rays[i])
    d_next = det2(rays[i], rays[(i + 1) % n])
    cross = det2(rays[i - 1], rays[(i + 1) % n])
    # 1/d_prev + D_i^2 + 1/d_next with D_i^2 = -cross/(d_prev*d_next)
    return Fraction(d_prev + d_next - cross, d_prev * d_next)


# ---------------------------------------------------------------------------
# positivity of -K


def _cross(o: Ray, a: Ray, b: Ray) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Ray]) -> list[Ray]:
    """Strict convex hull (no collinear points kept), counterclockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Ray] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Ray] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _on_boundary(p: Ray, hull: Sequence[Ray]) -> bool:
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if _cross(a, b, p) == 0:
            t = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
            if 0 <= t <= (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2:
                return True
    return False


def anticanonical_positivity(fan: Fan2) -> str:
    """Classify -K as ample, nef-but-not-ample, or not nef.

    Completeness puts the origin in the interior of the convex hull of the
    ray generators, so -K is ample iff every ray generator is a hull vertex,
    and nef iff every generator at least lies on the hull boundary.
    """
    hull = convex_hull(fan.rays)
    vertex_set = set(hull)
    inner = [p for p in fan.rays if p not in vertex_set]
    if not inner:
        return AMPLE
    if all(_on_boundary(p, hull) for p in inner):
        return NEF_NOT_AMPLE
    return NOT_NEF


# ---------------------------------------------------------------------------
# census and bound checks


@dataclass(frozen=True)
class BoundCheck:
    """One singular-point bound evaluated on a fan."""

    name: str
    applicable: bool
    limit: int | None
    value: int
    passed: bool

    @property
    def slack(self) -> int | None:
        return None if self.limit is None else self.limit - self.value


@dataclass(frozen=True)
class ToricSurfaceReport:
    fan: Fan2
    picard_number: int
    singular_points: tuple[tuple[Cone2, QuotientSingularity], ...]
    positivity: str
    bound_checks: tuple[BoundCheck, ...]

    @property
    def singular_count(self) -> int:
        return len(self.singular_points)

    def bound(self, name: str) -> BoundCheck:
        for check in self.bound_checks:
            if check.name == name:
                return check
        raise KeyError(name)


FANO_BOUND = "fano-singular-bound"  # n <= 2*rho + 2 when -K is ample
NEF_BOUND = "nef-singular-bound"  # n <= 2*rho + 4 when -K is nef


def census(fan: Fan2) -> ToricSurfaceReport:
    """Count and classify the singular torus-fixed points of a fan.

    The Picard number of a complete toric surface is ``#rays - 2``.  Bound
    checks are attached according to the positivity of -K: the ample bound
    ``n <= 2*rho + 2`` when -K is ample, and the nef bound ``n <= 2*rho + 4``
    whenever -K is nef (K is never numerically trivial here, so the nef
    bound applies to the ample case too).
    """
    rho = fan.picard_number
    walls = fan.wall_determinants()
    singular = tuple(
        (fan.cone(i), quotient_type(fan.cone(i)))
        for i, d in enumerate(walls)
        if d > 1
    )
    positivity = anticanonical_positivity(fan)
    n_sing = len(singular)
    is_ample = positivity == AMPLE
    is_nef = positivity in (AMPLE, NEF_NOT_AMPLE)
    checks = (
        BoundCheck(
            FANO_BOUND,
            is_ample,
            2 * rho + 2 if is_ample else None,
            n_sing,
            n_sing <= 2 * rho + 2 if is_ample else True,
        ),
        BoundCheck(
            NEF_BOUND,
            is_nef,
            2 * rho + 4 if is_nef else None,
            n_sing,
            n_sing <= 2 * rho + 4 if is_nef else True,
        ),
    )
    return ToricSurfaceReport(fan, rho, singular, positivity, checks)


def report_to_dict(report: ToricSurfaceReport) -> dict:
    return {
        "rays": [list(r) for r in report.fan.rays],
        "picard_number": report.picard_number,
        "singular_points": [
            {
                "cone_rays": [list(r) for r in cone.generators],
                "r": q.r,
                "a": q.a,
            }
            for cone, q in report.singular_points
        ],
        "positivity": report.positivity,
        "bounds": [
            {
                "name": c.name,
                "applicable": c.applicable,
                "limit": c.limit,
                "value": c.value,
                "pass": c.passed,
                "slack": c.slack,
            }
            for c in report.bound_checks
        ],
    }


def parabolic_fan_family(n: int) -> Fan2:
    """The fan on ``(-1, 0)`` and ``(i, i^2 - 1)`` for ``0 <= i <= n``.

    All generators sit on the parabola ``y = x^2 - 1``, so the fan is
    anticanonically ample for every ``n >= 2``; it has ``n + 2`` rays, Picard
    number ``n``, and exactly ``n`` singular fixed points, which shows that a
    singular-point bound for these surfaces must grow at least linearly in
    the Picard number.
    """
    if n < 2:
        raise ValueError("the family starts at n = 2")
    rays = [(-1, 0)] + [(i, i * i - 1) for i in range(n + 1)]
    return fan_from_rays(rays)


# ---------------------------------------------------------------------------
# divisorial contractions and the toric MMP


@dataclass(frozen=True)
class MMPStep:
    """Report of one K-negative divisorial contraction of a fan."""

    ray: Ray
    fan_before: Fan2
    fan_after: Fan2
    singular_before: int
    singular_after: int
    adjacent_singular_cones: int

    @property
    def picard_before(self) -> int:
        return self.fan_before.picard_number

    @property
    def picard_after(self) -> int:
        return self.fan_after.picard_number


def _singular_cone_count(fan: Fan2) -> int:
    return sum(1 for d in fan.wall_determinants() if d > 1)


def _contraction_numerators(fan: Fan2, i: int) -> tuple[int, int, int]:
    rays = fan.rays
    n = len(rays)
    d_prev = det2(rays[i - 1], rays[i])
    d_next = det2(rays[i], rays[(i + 1) % n])
    cross = det2(rays[i - 1], rays[(i + 1) % n])
    return d_prev, d_next, cross


def contract_ray(fan: Fan2, i: int) -> tuple[Fan2, MMPStep]:
    """Remove ray ``i``, contracting its invariant curve.

    Preconditions (checked exactly): the curve is contractible
    (``D_i^2 < 0``) and the step is K-negative (``K . D_i < 0``).  The two
    cones adjacent to the removed ray merge, so at most two singular points
    disappear and at most one new one appears; the step report records the
    counts and asserts both facts.
    """
    n = len(fan.rays)
    if not 0 <= i < n:
        raise IndexError(f"ray index {i} out of range")
    d_prev, d_next, cross = _contraction_numerators(fan, i)
    # D_i^2 = -cross/(d_prev*d_next);  K.D_i < 0  iff  d_prev+d_next-cross > 0
    if cross <= 0:
        raise NotContractibleError(
            f"ray {fan.rays[i]} has self-intersection >= 0; not contractible"
        )
    if d_prev + d_next - cross <= 0:
        raise NotKNegativeError(
            f"contracting ray {fan.rays[i]} is not a K-negative step"
        )
    adjacent_singular = int(d_prev > 1) + int(d_next > 1)
    remaining = [r for j, r in enumerate(fan.rays) if j != i]
    new_fan = fan_from_rays(remaining)
    before = _singular_cone_count(fan)
    after = _singular_cone_count(new_fan)
    assert adjacent_singular <= 2, "a contracted curve meets at most 2 singular points"
    assert before <= after + 2, "a divisorial step drops at most 2 singular points"
    step = MMPStep(
        ray=fan.rays[i],
        fan_before=fan,
        fan_after=new_fan,
        singular_before=before,
        singular_after=after,
        adjacent_singular_cones=adjacent_singular,
    )
    return new_fan, step


def toric_mmp(fan: Fan2) -> tuple[MMPStep, ...]:
    """Greedily contract K-negative curves until none are left.

    The tie-break is deterministic: the lowest ray index (in canonical fan
    order) goes first.  On a complete toric surface the run ends at Picard
    number 1 or at a fibration with Picard number 2.
    """
    steps: list[MMPStep] = []
    while True:
        target = None
        for i in range(len(fan.rays)):
            d_prev, d_next, cross = _contraction_numerators(fan, i)
            if cross > 0 and d_prev + d_next - cross > 0:
                target = i
                break
        if target is None:
            return tuple(steps)
        fan, step = contract_ray(fan, target)
        steps.append(step)


# ---------------------------------------------------------------------------
# enumeration and fuzzing


@functools.lru_cache(maxsize=None)
def box_primitive_rays(bound: int) -> tuple[Ray, ...]:
    """All primitive vectors in ``[-bound, bound]^2``, in counterclockwise order."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    pts = [
        (x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if (x, y) != (0, 0) and math.gcd(x, y) == 1
    ]
    pts.sort(key=_angular_key)
    return tuple(pts)


def _turn(a: Ray, b: Ray, c: Ray) -> int:
    return (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])


def _convex_cycles(
    cands: Sequence[Ray], start: int
) -> Iterator[tuple[Ray, ...]]:
    """Strictly convex closable chains beginning at ``cands[start]``.

    Chains grow in global angular order, keeping two exact invariants: each
    consecutive pair is positively oriented with angular gap below pi
    (completeness of the fan) and each vertex is a strict left turn (every
    generator a hull vertex, so -K is ample).
    """
    seq = [cands[start]]

    def rec(from_index: int) -> Iterator[tuple[Ray, ...]]:
        if (
            len(seq) >= 3
            and det2(seq[-1], seq[0]) > 0
            and _turn(seq[-2], seq[-1], seq[0]) > 0
            and _turn(seq[-1], seq[0], seq[1]) > 0
        ):
            yield tuple(seq)
        for t in range(from_index, len(cands)):
            w = cands[t]
            if det2(seq[-1], w) <= 0:
                break  # gap >= pi; later candidates only sit further around
            if len(seq) >= 2 and _turn(seq[-2], seq[-1], w) <= 0:
                continue
            seq.append(w)
            yield from rec(t + 1)
            seq.pop()

    return rec(start + 1)


def ldp_enumerate(
    bound: int, dedupe: bool = False, start: int | None = None
) -> Iterator[Fan2]:
    """Enumerate every anticanonically ample fan with rays in a box.

    Yields each fan exactly once, canonically normalized, in a deterministic
    order.  With ``dedupe=True`` only one representative per GL(2, Z) orbit
    is emitted.  ``start`` restricts the enumeration to fans whose angularly
    smallest ray is ``box_primitive_rays(bound)[start]``, which is how scan
    workers partition the search space.
    """
    cands = box_primitive_rays(bound)
    seen: set[tuple[Ray, ...]] = set()
    starts = range(len(cands)) if start is None else (start,)
    for s in starts:
        for cycle in _convex_cycles(cands, s):
            fan = fan_from_rays(cycle)
            if dedupe:
                key = gl2_canonical_key(fan)
                if key in seen:
                    continue
                seen.add(key)
            yield fan


def _cone_normal_form_matrix(u: Ray, v: Ray) -> tuple[tuple[int, int], tuple[int, int]]:
    """The unimodular map sending ``v`` to ``(0,1)`` and ``u`` to ``(r,-a)``.

    Unique once ``0 <= a < r`` is required, which makes it usable as a
    canonical marking of the wall ``(u, v)``.
    """
    r = det2(u, v)
    p, q = v
    _, s, t = xgcd(p, q)
    row1 = (q, -p)
    y = s * u[0] + t * u[1]
    a = (-y) % r
    k = (y + a) // r
    row2 = (s - k * row1[0], t - k * row1[1])
    return (row1, row2)


def _apply2(m: tuple[tuple[int, int], tuple[int, int]], v: Ray) -> Ray:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def gl2_canonical_key(fan: Fan2) -> tuple[Ray, ...]:
    """A complete invariant of the fan under the GL(2, Z) action.

    For every wall and both orientations, move that wall to its normal form
    and read off the transformed ray tuple; the minimum over all choices only
    depends on the lattice-equivalence class of the fan.
    """
    best: tuple[Ray, ...] | None = None
    for mirrored in (False, True):
        rays = (
            [(x, -y) for (x, y) in fan.rays] if mirrored else list(fan.rays)
        )
        base = fan_from_rays(rays)
        n = len(base.rays)
        for i in range(n):
            u, v = base.rays[i], base.rays[(i + 1) % n]
            m = _cone_normal_form_matrix(u, v)
            image = fan_from_rays([_apply2(m, w) for w in base.rays])
            if best is None or image.rays < best:
                best = image.rays
    assert best is not None
    return best


def random_complete_fan(seed: int, max_rays: int = 8, bound: int = 3) -> Fan2:
    """Deterministic pseudo-random complete fan.

    Starts from the full fan on all primitive rays in the box and removes
    rays in a seeded random order while the fan stays complete, aiming for a
    random target size.  The same seed always returns the same fan.
    """
    if max_rays < 3:
        raise ValueError("max_rays must be >= 3")
    rng = random.Random(seed)
    rays = box_primitive_rays(bound)
    n = len(rays)
    target = rng.randint(3, min(max_rays, n))
    nxt = list(range(1, n)) + [0]
    prv = [n - 1] + list(range(n - 1))
    alive = n
    order = list(range(n))
    rng.shuffle(order)
    dead = [False] * n
    for pos in order:
        if alive <= target:
            break
        a, b = prv[pos], nxt[pos]
        if det2(rays[a], rays[b]) > 0:
            nxt[a], prv[b] = b, a
            dead[pos] = True
            alive -= 1
    return fan_from_rays([rays[i] for i in range(n) if not dead[i]])
