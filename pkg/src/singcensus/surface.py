"""Picard-lattice calculus for iterated blow-ups and contractions.

A surface model is a basis of divisor classes with an exact rational Gram
matrix, a canonical class, and a dictionary of tracked curve classes.  Blow-up
points are never coordinates: a point is specified purely by incidence, i.e.
which tracked curves pass through it with which multiplicity.  Intersection
theory only sees incidence, so this is enough to mechanize every blow-up /
blow-down computation that usually gets waved through as "elementary".

Contractions solve the adjunction system for exact discrepancies and
represent the quotient lattice by pullback vectors inside the ambient one.
Numerical (here: Q-linear) equivalence downstairs is then literal vector
equality, which is what :func:`check_equiv` tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lattice import negative_definite_failure, solve_many

Vec = tuple[Fraction, ...]


class NotNegativeDefiniteError(ValueError):
    """A contraction was requested on a configuration that is not negative
    definite; carries the order of the offending leading principal minor."""

    def __init__(self, minor_order: int, labels: Sequence[str]):
        self.minor_order = minor_order
        self.labels = tuple(labels)
        super().__init__(
            f"configuration {self.labels} is not negative definite: leading "
            f"principal minor of order {minor_order} has the wrong sign"
        )


@dataclass(frozen=True)
class CurveClass:
    """A divisor class tracked through blow-ups, with a genus tag.

    The genus cannot be read off the lattice, so it is carried along
    explicitly; every curve in the constructions here is rational.
    """

    label: str
    coefficients: Vec
    genus: int = 0


@dataclass(frozen=True)
class SurfaceModel:
    """Picard lattice of a rational surface with tracked curve classes.

    ``basis`` names the generators (initial classes plus one exceptional
    class per blow-up), ``gram`` is the symmetric intersection form, and
    ``canonical`` is the canonical class K.  On a quotient model (after a
    contraction) ``contracted`` lists the collapsed curves and every tracked
    class is stored as its pullback, orthogonal to the contracted span.
    """

    basis: tuple[str, ...]
    gram: tuple[Vec, ...]
    canonical: Vec
    curves: dict[str, CurveClass] = field(default_factory=dict)
    contracted: tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def picard_rank(self) -> int:
        return self.rank - len(self.contracted)

    def curve(self, label: str) -> CurveClass:
        try:
            return self.curves[label]
        except KeyError:
            raise ValueError(f"no tracked curve named {label!r}") from None


ClassLike = "str | CurveClass | Mapping[str, object] | Sequence"


def class_vector(model: SurfaceModel, cls) -> Vec:
    """Coefficient vector of a class given as label, curve, combination
    dictionary (label -> coefficient, with "K" for the canonical class), or
    raw coefficient sequence."""
    if isinstance(cls, str):
        if cls == "K":
            return model.canonical
        return model.curve(cls).coefficients
    if isinstance(cls, CurveClass):
        return cls.coefficients
    if isinstance(cls, Mapping):
        total = [Fraction(0)] * model.rank
        for label, coeff in cls.items():
            vec = class_vector(model, label)
            c = Fraction(coeff)
            if c:
                for i, x in enumerate(vec):
                    if x:
                        total[i] += c * x
        return tuple(total)
    vec = tuple(Fraction(c) for c in cls)
    if len(vec) != model.rank:
        raise ValueError(
            f"class vector has length {len(vec)}, lattice rank is {model.rank}"
        )
    return vec


def _gram_times(model: SurfaceModel, vec: Vec) -> Vec:
    gram = model.gram
    out = [Fraction(0)] * len(vec)
    for j, c in enumerate(vec):
        if c:
            row = gram[j]
            for i, g in enumerate(row):
                if g:
                    out[i] += c * g
    return tuple(out)


def pairing(model: SurfaceModel, a, b) -> Fraction:
    """Exact intersection number of two classes."""
    va = class_vector(model, a)
    vb = class_vector(model, b)
    gv = _gram_times(model, vb)
    return sum((x * y for x, y in zip(va, gv) if x and y), Fraction(0))


def self_intersection(model: SurfaceModel, cls) -> Fraction:
    return pairing(model, cls, cls)


def canonical_degree(model: SurfaceModel, cls) -> Fraction:
    return pairing(model, model.canonical, cls)


def check_equiv(model: SurfaceModel, lhs, rhs) -> bool:
    """Whether two classes agree exactly (numerical = Q-linear equivalence
    on the rational surfaces built here).  On a quotient model both sides are
    expanded through pullback vectors, so this decides equivalence
    downstairs."""
    return class_vector(model, lhs) == class_vector(model, rhs)


def adjunction_defect(model: SurfaceModel, label: str) -> Fraction:
    """``K.C - (2 g(C) - 2 - C^2)``; zero for every honest tracked curve on a
    smooth model."""
    c = model.curve(label)
    return canonical_degree(model, c) - (
        2 * c.genus - 2 - self_intersection(model, c)
    )


# ---------------------------------------------------------------------------
# constructors and elementary operations


def _fr(*values) -> Vec:
    return tuple(Fraction(v) for v in values)


def start_quadric() -> SurfaceModel:
    """The quadric surface: two rulings L, R with L.R = 1 and K = -2L - 2R."""
    return SurfaceModel(
        basis=("L", "R"),
        gram=(_fr(0, 1), _fr(1, 0)),
        canonical=_fr(-2, -2),
        curves={
            "L": CurveClass("L", _fr(1, 0)),
            "R": CurveClass("R", _fr(0, 1)),
        },
    )


def start_hirzebruch(m: int) -> SurfaceModel:
    """The m-th ruled surface: section s with s^2 = -m, fiber t, K = -2s-(m+2)t."""
    if m < 0:
        raise ValueError("the ruled surfaces are indexed by m >= 0")
    return SurfaceModel(
        basis=("s", "t"),
        gram=(_fr(-m, 1), _fr(1, 0)),
        canonical=_fr(-2, -(m + 2)),
        curves={
            "s": CurveClass("s", _fr(1, 0)),
            "t": CurveClass("t", _fr(0, 1)),
        },
    )


def track(
    model: SurfaceModel, label: str, coefficients: Sequence, genus: int = 0
) -> SurfaceModel:
    """Track an additional curve class on the current lattice."""
    if label in model.curves or label == "K":
        raise ValueError(f"label {label!r} is already in use")
    vec = tuple(Fraction(c) for c in coefficients)
    if len(vec) != model.rank:
        raise ValueError("coefficient vector does not match the lattice rank")
    curves = dict(model.curves)
    curves[label] = CurveClass(label, vec, genus)
    return replace(model, curves=curves)


def blow_up(
    model: SurfaceModel,
    incidence: Mapping[str, int] | None = None,
    label: str | None = None,
) -> SurfaceModel:
    """Blow up one point, specified by incidence multiplicities.

    The lattice grows by the exceptional class e with e^2 = -1, orthogonal
    to everything old; K gains +e; a tracked curve through the point with
    multiplicity m is replaced by its strict transform C - m*e (its genus
    drops by m(m-1)/2); the exceptional curve itself is tracked under
    ``label``.
    """
    if model.contracted:
        raise ValueError("blow up the smooth model, not a quotient model")
    incidence = dict(incidence or {})
    for lbl, mult in incidence.items():
        if lbl not in model.curves:
            raise ValueError(f"no tracked curve named {lbl!r}")
        if not isinstance(mult, int) or mult < 0:
            raise ValueError("multiplicities must be nonnegative integers")
    if label is None:
        label = f"e{model.rank + 1}"
    if label in model.curves or label in model.basis or label == "K":
        raise ValueError(f"label {label!r} is already in use")
    rank = model.rank
    gram = tuple(row + (Fraction(0),) for row in model.gram) + (
        tuple(Fraction(0) for _ in range(rank)) + (Fraction(-1),),
    )
    canonical = model.canonical + (Fraction(1),)
    curves: dict[str, CurveClass] = {}
    for lbl, curve in model.curves.items():
        m = incidence.get(lbl, 0)
        coeffs = curve.coefficients + (Fraction(-m),)
        genus = curve.genus - m * (m - 1) // 2
        curves[lbl] = CurveClass(lbl, coeffs, genus)
    curves[label] = CurveClass(
        label, tuple(Fraction(0) for _ in range(rank)) + (Fraction(1),)
    )
    return SurfaceModel(
        basis=model.basis + (label,),
        gram=gram,
        canonical=canonical,
        curves=curves,
    )


# ---------------------------------------------------------------------------
# dual graphs


@dataclass(frozen=True)
class DualGraph:
    """Curves as vertices, pairwise intersection numbers as edge multiplicities."""

    vertices: tuple[str, ...]
    edges: dict[tuple[str, str], int]

    def components(self) -> tuple[tuple[str, ...], ...]:
        adjacency: dict[str, set[str]] = {v: set() for v in self.vertices}
        for (a, b), mult in self.edges.items():
            if mult:
                adjacency[a].add(b)
                adjacency[b].add(a)
        seen: set[str] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], []
            while stack:
                w = stack.pop()
                if w in seen:
                    continue
                seen.add(w)
                comp.append(w)
                stack.extend(adjacency[w] - seen)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_tree(self) -> bool:
        """No cycles: total edge count (with multiplicities) equals
        vertices minus components.  A double edge already counts as a cycle."""
        total = sum(self.edges.values())
        return total == len(self.vertices) - len(self.components())


def dual_graph(model: SurfaceModel, labels: Sequence[str]) -> DualGraph:
    verts = tuple(labels)
    if len(set(verts)) != len(verts):
        raise ValueError("duplicate labels")
    edges: dict[tuple[str, str], int] = {}
    for i, a in enumerate(verts):
        for b in verts[i + 1 :]:
            m = pairing(model, a, b)
            if m.denominator != 1 or m < 0:
                raise ValueError(
                    f"{a}.{b} = {m} is not a nonnegative integer; the dual "
                    "graph needs honest curve intersections"
                )
            if m:
                edges[(a, b)] = int(m)
    return DualGraph(verts, edges)


# ---------------------------------------------------------------------------
# contractions


@dataclass(frozen=True)
class ContractionResult:
    """Outcome of contracting a negative-definite configuration.

    ``quotient`` keeps the ambient basis and stores every surviving class as
    its pullback; ``discrepancies`` solves the adjunction system exactly;
    ``components`` partitions the contracted curves into connected dual-graph
    components, one per point of the target surface.
    """

    quotient: SurfaceModel
    discrepancies: dict[str, Fraction]
    components: tuple[tuple[str, ...], ...]

    def log_discrepancy(self, label: str) -> Fraction:
        return self.discrepancies[label] + 1


def contract(model: SurfaceModel, labels: Sequence[str]) -> ContractionResult:
    """Contract the named curves, solving for exact discrepancies.

    The Gram block of the contracted configuration must be negative
    definite.  Discrepancies d solve ``sum_i d_i (C_i . C_j) = K . C_j`` for
    every contracted j; the pullback of a surviving class D is the unique
    correction of D in the contracted span meeting every C_j in 0.
    """
    labels = tuple(labels)
    if model.contracted:
        raise ValueError("model already carries a contraction")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels")
    contracted = [model.curve(lbl) for lbl in labels]
    k = len(contracted)
    if k == 0:
        raise ValueError("nothing to contract")
    gram_images = [_gram_times(model, c.coefficients) for c in contracted]

    def pair_with(vec: Vec, j: int) -> Fraction:
        gv = gram_images[j]
        return sum((x * y for x, y in zip(vec, gv) if x and y), Fraction(0))

    block = [
        [pair_with(contracted[i].coefficients, j) for j in range(k)]
        for i in range(k)
    ]
    failure = negative_definite_failure(block)
    if failure is not None:
        raise NotNegativeDefiniteError(failure, labels)

    survivors = [c for lbl, c in model.curves.items() if lbl not in set(labels)]
    columns = [[canonical_degree(model, c) for c in contracted]]
    for s in survivors:
        columns.append([-pair_with(s.coefficients, j) for j in range(k)])
    solutions = solve_many(block, columns)
    disc = solutions[0]

    def add_span(vec: Vec, weights: Sequence[Fraction]) -> Vec:
        out = list(vec)
        for w, c in zip(weights, contracted):
            if w:
                for i, x in enumerate(c.coefficients):
                    if x:
                        out[i] += w * x
        return tuple(out)

    curves = {
        s.label: CurveClass(s.label, add_span(s.coefficients, solutions[1 + i]), s.genus)
        for i, s in enumerate(survivors)
    }
    canonical = add_span(model.canonical, tuple(-d for d in disc))
    quotient = SurfaceModel(
        basis=model.basis,
        gram=model.gram,
        canonical=canonical,
        curves=curves,
        contracted=labels,
    )
    components = dual_graph(model, labels).components()
    return ContractionResult(
        quotient=quotient,
        discrepancies={lbl: d for lbl, d in zip(labels, disc)},
        components=components,
    )


def component_contracts_to_smooth_point(
    model: SurfaceModel, component: Sequence[str]
) -> bool:
    """Castelnuovo test: the configuration blows down to a smooth point iff
    repeatedly contracting (-1)-curves (C^2 = K.C = -1) empties it.

    Only C^2 and K.C need tracking: contracting E updates
    A.B += (A.E)(B.E) and K.A -= A.E.
    """
    labels = list(component)
    pairs: dict[tuple[int, int], Fraction] = {}
    for i, a in enumerate(labels):
        for j in range(i, len(labels)):
            pairs[(i, j)] = pairing(model, a, labels[j])
    kdeg = {i: canonical_degree(model, lbl) for i, lbl in enumerate(labels)}
    live = set(range(len(labels)))

    def get(i: int, j: int) -> Fraction:
        return pairs[(i, j) if i <= j else (j, i)]

    while live:
        target = next(
            (i for i in live if get(i, i) == -1 and kdeg[i] == -1), None
        )
        if target is None:
            return False
        live.discard(target)
        for i in live:
            for j in live:
                if i <= j:
                    pairs[(i, j)] = get(i, j) + get(i, target) * get(j, target)
            kdeg[i] = kdeg[i] - get(i, target)
    return True


def count_singular_points(
    model: SurfaceModel, result: ContractionResult
) -> int:
    """Number of contracted components that become singular points."""
    return sum(
        1
        for comp in result.components
        if not component_contracts_to_smooth_point(model, comp)
    )


# ---------------------------------------------------------------------------
# the quadric double-blow-up scenarios


def _validate_partition(n: int, pattern: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    blocks = tuple(tuple(sorted(block)) for block in pattern)
    flat = [i for block in blocks for i in block]
    if sorted(flat) != list(range(1, n + 1)):
        raise ValueError(f"pattern {pattern} is not a partition of 1..{n}")
    return tuple(sorted(blocks))


def quadric_double_blowup(
    n: int, pattern: Sequence[Sequence[int]]
) -> SurfaceModel:
    """Blow up the quadric twice along n fiber pairs.

    Points z_i = (u_i, v_i) with distinct u_i sit on vertical fibers L_i and
    on one horizontal fiber per block of ``pattern`` (blocks say which z_i
    share the second coordinate).  The first round of blow-ups inserts E_i
    over z_i; the second round blows up L_i ∩ E_i and inserts F_i.  The
    result carries 2n disjoint (-2)-curves: the strict transforms of the
    E_i and of the L_i.
    """
    if n < 1:
        raise ValueError("need n >= 1 points")
    blocks = _validate_partition(n, pattern)
    model = start_quadric()
    for i in range(1, n + 1):
        model = track(model, f"L{i}", class_vector(model, "L"))
    block_of: dict[int, int] = {}
    for b, block in enumerate(blocks, start=1):
        model = track(model, f"R{b}", class_vector(model, "R"))
        for i in block:
            block_of[i] = b
    for i in range(1, n + 1):
        model = blow_up(
            model, {f"L{i}": 1, f"R{block_of[i]}": 1}, label=f"E{i}"
        )
    for i in range(1, n + 1):
        model = blow_up(model, {f"L{i}": 1, f"E{i}": 1}, label=f"F{i}")
    return model


def scenario_a1_cluster(n: int, pattern: Sequence[Sequence[int]]):
    """Contract the 2n (-2)-curves of the double blow-up.

    Returns ``(X, result, report)``: the smooth model, the contraction, and
    a report with the singular-point count (always 2n half-points, all with
    discrepancy 0), the Picard rank 2 of the target, and the class
    identities that hold for the given pattern:

    * one block:  -K = 4 F1 + 2 R1, an effective anticanonical witness;
    * n = 4, two blocks:  K + R1 + R2 = 0, a log Calabi-Yau pair;
    * all blocks singletons, n = 3:  -K = 2 R_k with R_k^2 = 1/2 for each k,
      and the target has 6 = 2*rho + 2 singular points.
    """
    blocks = _validate_partition(n, pattern)
    x = quadric_double_blowup(n, blocks)
    to_contract = [f"E{i}" for i in range(1, n + 1)] + [
        f"L{i}" for i in range(1, n + 1)
    ]
    result = contract(x, to_contract)
    s = result.quotient
    identities = []
    if len(blocks) == 1:
        identities.append(
            {
                "lhs": "-K",
                "rhs": "4*F1 + 2*R1",
                "equal": check_equiv(s, {"K": -1}, {"F1": 4, "R1": 2}),
            }
        )
    if n == 4 and len(blocks) == 2:
        identities.append(
            {
                "lhs": "K + R1 + R2",
                "rhs": "0",
                "equal": check_equiv(
                    s, {"K": 1, "R1": 1, "R2": 1}, {}
                ),
            }
        )
    if len(blocks) == n:
        for k in range(1, n + 1):
            identities.append(
                {
                    "lhs": "-K",
                    "rhs": f"2*R{k}",
                    "equal": check_equiv(s, {"K": -1}, {f"R{k}": 2}),
                }
            )
    report = {
        "n": n,
        "pattern": [list(b) for b in blocks],
        "picard_rank": s.picard_rank,
        "points": len(result.components),
        "singular_points": count_singular_points(x, result),
        "discrepancies": dict(result.discrepancies),
        "all_canonical": all(d == 0 for d in result.discrepancies.values()),
        "identities": identities,
    }
    return x, result, report


def scenario_fiber_collapse(n: int):
    """Additionally contract the horizontal fiber through all n points.

    With all second coordinates equal, the curve R1 passes through every
    z_i; contracting the full (2n+1)-curve configuration from the smooth
    model collapses R1 together with the n curves E_i to one point and each
    L_i to its own point, so the target has n + 1 points at Picard rank 1.
    The log discrepancy of R1 over the target is exactly (4 - n)/n, which is
    positive for n = 3, zero for n = 4 and negative from n = 5 on: the
    target is klt, properly lc, or not lc accordingly, while its
    singular-point count n + 1 grows without bound.
    """
    if n < 3:
        raise ValueError("the collapse needs n >= 3")
    x = quadric_double_blowup(n, [list(range(1, n + 1))])
    es = [f"E{i}" for i in range(1, n + 1)]
    ls = [f"L{i}" for i in range(1, n + 1)]
    s_result = contract(x, es + ls)
    t_result = contract(x, ["R1"] + es + ls)

    log_disc = {lbl: d + 1 for lbl, d in t_result.discrepancies.items()}
    minimum = min(log_disc.values())
    if minimum > 0:
        classification = "klt"
    elif minimum == 0:
        classification = "lc"
    else:
        classification = "non-lc"

    s = s_result.quotient
    coeff = Fraction(2 * (n - 2), n)
    identities = [
        {
            "lhs": f"-(K + {coeff}*R1)",
            "rhs": f"4*F1 + {Fraction(4, n)}*R1",
            "equal": check_equiv(
                s,
                {"K": -1, "R1": -coeff},
                {"F1": 4, "R1": Fraction(4, n)},
            ),
        },
        {
            "lhs": f"-{n}*(K + {coeff}*R1)",
            "rhs": f"{4 * n}*F1 + 4*R1",
            "equal": check_equiv(
                s,
                {"K": -n, "R1": -n * coeff},
                {"F1": 4 * n, "R1": 4},
            ),
        },
        {
            "lhs": f"{4 * n}*F1 + 4*R1",
            "rhs": "4*R'",  # a second horizontal fiber missing the points
            "equal": check_equiv(s, {"F1": 4 * n, "R1": 4}, {"R": 4}),
        },
    ]
    report = {
        "n": n,
        "log_discrepancy_R1": log_disc["R1"],
        "min_log_discrepancy": minimum,
        "classification": classification,
        "points": len(t_result.components),
        "picard_rank": t_result.quotient.picard_rank,
        "identities": identities,
    }
    return x, t_result, report


# ---------------------------------------------------------------------------
# chain configurations (cross-check against the toric resolutions)


def chain_configuration(chain: Sequence[int]) -> tuple[SurfaceModel, tuple[str, ...]]:
    """Build a smooth rational surface containing a string of rational curves
    with self-intersections ``-chain[i]`` meeting consecutively in one point.

    Construction: take a ruling fiber, blow up a point on the last curve of
    the string to append the next one, then blow up free points to push each
    self-intersection down to its target.  Contracting the resulting string
    reproduces the discrepancies of the corresponding quotient singularity
    by a route independent of any continued-fraction computation.
    """
    if len(chain) == 0:
        raise ValueError("empty chain")
    if any(b < 2 for b in chain):
        raise ValueError("chain entries must be >= 2")
    k = len(chain)
    model = start_quadric()
    model = track(model, "C1", class_vector(model, "L"))
    for i in range(2, k + 1):
        model = blow_up(model, {f"C{i - 1}": 1}, label=f"C{i}")
    deficits = {}
    if k == 1:
        deficits["C1"] = chain[0]  # fiber starts at self-intersection 0
    else:
        deficits["C1"] = chain[0] - 1
        for i in range(2, k):
            deficits[f"C{i}"] = chain[i - 1] - 2
        deficits[f"C{k}"] = chain[k - 1] - 1
    free = 0
    for label, deficit in deficits.items():
        for _ in range(deficit):
            free += 1
            model = blow_up(model, {label: 1}, label=f"G{free}")
    return model, tuple(f"C{i}" for i in range(1, k + 1))


def chain_discrepancies(chain: Sequence[int]) -> tuple[Fraction, ...]:
    """Discrepancies of contracting the chain, computed by blow-up calculus."""
    model, labels = chain_configuration(chain)
    result = contract(model, labels)
    return tuple(result.discrepancies[lbl] for lbl in labels)
