"""Registry of verification claims.

Each claim binds a stable id and a one-line statement to an executable
check.  The registry is data: adding a claim means adding a row here, and
every claim id or statement appearing in a report has to come from this
table, never from free-form strings scattered around the code.

The statements are the exact mathematical facts the test suite and the
``paper-suite`` CLI command re-verify; the suite-scale parameters below are
chosen so the whole registry runs in well under a minute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import fan_nd, surface, toric, wps


@dataclass(frozen=True)
class ClaimResult:
    passed: bool
    detail: str
    witness: object | None = None


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    check: Callable[[], ClaimResult]


def _family_fans(limit: int):
    return [(n, toric.parabolic_fan_family(n)) for n in range(2, limit + 1)]


def _check_family_ample() -> ClaimResult:
    for n, fan in _family_fans(200):
        if toric.anticanonical_positivity(fan) != toric.AMPLE:
            return ClaimResult(False, f"family member n={n} is not ample", n)
    return ClaimResult(True, "anticanonical class ample for n = 2..200")


def _check_family_picard() -> ClaimResult:
    for n, fan in _family_fans(200):
        if fan.picard_number != n:
            return ClaimResult(
                False, f"family member n={n} has rank {fan.picard_number}", n
            )
    return ClaimResult(True, "Picard number equals n for n = 2..200")


def _check_family_singular_count() -> ClaimResult:
    for n, fan in _family_fans(200):
        rep = toric.census(fan)
        if rep.singular_count != n:
            return ClaimResult(
                False,
                f"family member n={n} has {rep.singular_count} singular points",
                n,
            )
    return ClaimResult(True, "exactly n singular points for n = 2..200")


def _check_ample_scan() -> ClaimResult:
    total = 0
    worst = None
    for bound in (1, 2):
        for fan in toric.ldp_enumerate(bound):
            total += 1
            rep = toric.census(fan)
            check = rep.bound(toric.FANO_BOUND)
            if not check.passed:
                return ClaimResult(
                    False, f"bound violated by {fan.rays}", fan.rays
                )
            excess = rep.singular_count - 2 * rep.picard_number
            if worst is None or excess > worst:
                worst = excess
    return ClaimResult(
        True,
        f"{total} ample fans scanned at bounds 1-2; max n - 2*rho = {worst} <= 2",
    )


def _check_nef_fuzz() -> ClaimResult:
    nef_seen = 0
    for seed in range(3000):
        fan = toric.random_complete_fan(seed, max_rays=9, bound=3)
        rep = toric.census(fan)
        check = rep.bound(toric.NEF_BOUND)
        if not check.applicable:
            continue
        nef_seen += 1
        if not check.passed:
            return ClaimResult(False, f"nef bound violated by {fan.rays}", fan.rays)
    if nef_seen == 0:
        return ClaimResult(False, "fuzzing produced no nef fans at all")
    return ClaimResult(True, f"{nef_seen} nef fans fuzzed, no violation of 2*rho+4")


def _check_mmp_invariant() -> ClaimResult:
    runs = 0
    steps = 0
    fans = [fan for _, fan in _family_fans(60)]
    fans.extend(toric.ldp_enumerate(2))
    for fan in fans:
        runs += 1
        for step in toric.toric_mmp(fan):
            steps += 1
            if step.adjacent_singular_cones > 2:
                return ClaimResult(
                    False, f"step at {step.ray} meets 3+ singular points", step
                )
            if step.singular_before > step.singular_after + 2:
                return ClaimResult(
                    False, f"step at {step.ray} dropped 3+ singular points", step
                )
    return ClaimResult(
        True, f"{steps} divisorial steps over {runs} runs kept both step bounds"
    )


def _check_hj_roundtrip() -> ClaimResult:
    count = 0
    for r in range(2, 201):
        for a in range(1, r):
            if math.gcd(a, r) != 1:
                continue
            chain = toric.hj_expand(r, a)
            if any(b < 2 for b in chain):
                return ClaimResult(False, f"entry < 2 in chain of {r}/{a}", (r, a))
            value = Fraction(chain[-1])
            for b in reversed(chain[:-1]):
                value = b - 1 / value
            if value != Fraction(r, a):
                return ClaimResult(False, f"chain of {r}/{a} evaluates to {value}", (r, a))
            count += 1
    return ClaimResult(True, f"{count} expansions with r <= 200 reproduce r/a")


def _check_discrepancy_range() -> ClaimResult:
    for r in range(2, 51):
        for a in range(1, r):
            if math.gcd(a, r) != 1:
                continue
            res = toric.resolve_singularity(toric.QuotientSingularity(r, a))
            if not all(-1 < d <= 0 for d in res.discrepancies):
                return ClaimResult(False, f"discrepancy out of (-1,0] for 1/{r}(1,{a})", (r, a))
            du_val = all(b == 2 for b in res.chain)
            zero = all(d == 0 for d in res.discrepancies)
            if du_val != zero:
                return ClaimResult(
                    False, f"canonical iff chain of 2s fails for 1/{r}(1,{a})", (r, a)
                )
    return ClaimResult(True, "discrepancies in (-1,0], canonical iff chain of 2s, r <= 50")


def _check_cross_oracle() -> ClaimResult:
    pairs = 0
    for r in range(2, 51):
        for a in range(1, r):
            if math.gcd(a, r) != 1:
                continue
            res = toric.resolve_singularity(toric.QuotientSingularity(r, a))
            alt = surface.chain_discrepancies(res.chain)
            if alt != res.discrepancies:
                return ClaimResult(
                    False,
                    f"blow-up calculus disagrees with the resolution of 1/{r}(1,{a})",
                    (r, a),
                )
            pairs += 1
    return ClaimResult(
        True, f"{pairs} singularities with r <= 50 agree across both routes"
    )


def _a1_patterns(n: int):
    yield [list(range(1, n + 1))]
    yield [[i] for i in range(1, n + 1)]
    if n >= 2:
        half = (n + 1) // 2
        yield [list(range(1, half + 1)), list(range(half + 1, n + 1))]


def _check_a1_cluster() -> ClaimResult:
    cases = 0
    for n in range(1, 13):
        for pattern in _a1_patterns(n):
            _, result, report = surface.scenario_a1_cluster(n, pattern)
            if report["points"] != 2 * n or report["singular_points"] != 2 * n:
                return ClaimResult(False, f"n={n}: point count is not 2n", report)
            if not report["all_canonical"]:
                return ClaimResult(False, f"n={n}: nonzero discrepancy", report)
            if report["picard_rank"] != 2:
                return ClaimResult(False, f"n={n}: target rank != 2", report)
            cases += 1
    return ClaimResult(
        True, f"{cases} cases: 2n half-points, discrepancy 0, target rank 2"
    )


def _check_effective_witness() -> ClaimResult:
    for n in range(1, 13):
        _, _, report = surface.scenario_a1_cluster(n, [list(range(1, n + 1))])
        if not all(item["equal"] for item in report["identities"]):
            return ClaimResult(False, f"n={n}: -K = 4F1 + 2R1 fails", report)
    return ClaimResult(True, "-K = 4*F1 + 2*R1 on the target for n = 1..12")


def _check_log_calabi_yau() -> ClaimResult:
    _, _, report = surface.scenario_a1_cluster(4, [[1, 3], [2, 4]])
    identity = next(i for i in report["identities"] if i["rhs"] == "0")
    if not identity["equal"]:
        return ClaimResult(False, "K + R1 + R2 is nonzero for the paired pattern", report)
    return ClaimResult(True, "K + R1 + R2 = 0 for n = 4 with paired fibers")


def _check_six_points() -> ClaimResult:
    x, result, report = surface.scenario_a1_cluster(3, [[1], [2], [3]])
    if not all(item["equal"] for item in report["identities"]):
        return ClaimResult(False, "-K = 2*R_k fails", report)
    s = result.quotient
    for k in (1, 2, 3):
        sq = surface.self_intersection(s, f"R{k}")
        if sq != Fraction(1, 2):
            return ClaimResult(False, f"R{k}^2 = {sq} instead of 1/2", sq)
    if report["singular_points"] != 6 or report["picard_rank"] != 2:
        return ClaimResult(False, "target does not show 6 = 2*rho + 2", report)
    return ClaimResult(True, "6 singular points at rank 2, -K = 2*R_k, R_k^2 = 1/2")


def _check_collapse_discrepancy() -> ClaimResult:
    for n in range(3, 51):
        _, _, report = surface.scenario_fiber_collapse(n)
        if report["log_discrepancy_R1"] != Fraction(4 - n, n):
            return ClaimResult(
                False, f"n={n}: log discrepancy {report['log_discrepancy_R1']}", n
            )
        expected = "klt" if n == 3 else ("lc" if n == 4 else "non-lc")
        if report["classification"] != expected:
            return ClaimResult(
                False, f"n={n}: classified {report['classification']}", n
            )
    return ClaimResult(
        True, "log discrepancy (4-n)/n for n = 3..50; class flips at n = 4"
    )


def _check_collapse_points() -> ClaimResult:
    for n in range(3, 51):
        _, _, report = surface.scenario_fiber_collapse(n)
        if report["points"] != n + 1 or report["picard_rank"] != 1:
            return ClaimResult(False, f"n={n}: {report['points']} points", report)
    return ClaimResult(True, "n + 1 target points at rank 1 for n = 3..50")


def _check_collapse_identity() -> ClaimResult:
    for n in range(3, 51):
        _, _, report = surface.scenario_fiber_collapse(n)
        if not all(item["equal"] for item in report["identities"]):
            return ClaimResult(False, f"n={n}: class identity fails", report)
    return ClaimResult(
        True, "-(K + (2(n-2)/n) R1) = 4F1 + (4/n)R1 and its multiples, n = 3..50"
    )


def _check_euler() -> ClaimResult:
    library = fan_nd.standard_fans()
    for name, fan in library.items():
        rep = fan_nd.census(fan)
        if not rep.euler_ok:
            return ClaimResult(False, f"Euler identity fails on {name}", name)
    return ClaimResult(
        True, f"alternating face counts match 1-(-1)^d on {len(library)} fans"
    )


def _check_binomial() -> ClaimResult:
    library = fan_nd.standard_fans()
    for name, fan in library.items():
        rep = fan_nd.census(fan)
        if not rep.binomial_ok:
            return ClaimResult(False, f"binomial bound fails on {name}", name)
    return ClaimResult(True, f"|faces(k)| <= C(#rays, k) on {len(library)} fans")


def _check_picard_identity() -> ClaimResult:
    library = fan_nd.standard_fans()
    for name, fan in library.items():
        rep = fan_nd.census(fan)
        if rep.picard_number + fan.dim != rep.counts[1]:
            return ClaimResult(False, f"ray identity fails on {name}", name)
        if fan.dim == 2:
            two_d = toric.census(toric.fan_from_rays(fan.rays))
            if two_d.picard_number != rep.picard_number:
                return ClaimResult(False, f"2d cross-check fails on {name}", name)
    return ClaimResult(True, "rho + d = #rays, consistent with the plane census")


def _check_wps_total() -> ClaimResult:
    for k in range(1, 101):
        report = wps.audit_family(k)
        if report.total != 2 * k + 3:
            return ClaimResult(False, f"k={k}: total {report.total}", k)
    return ClaimResult(True, "2k + 3 singular points for k = 1..100")


def _check_wps_orders() -> ClaimResult:
    for k in range(1, 101):
        report = wps.audit_family(k)
        expected = tuple(sorted([3] * (2 * k + 1) + [3 * k + 1, 3 * k + 2]))
        if report.stabilizer_orders != expected:
            return ClaimResult(False, f"k={k}: orders {report.stabilizer_orders}", k)
    return ClaimResult(
        True, "stabilizer orders are 3 x (2k+1) plus 3k+1 and 3k+2, k = 1..100"
    )


CLAIMS: tuple[Claim, ...] = (
    Claim(
        "family-ample",
        "every parabolic family fan has ample anticanonical class",
        _check_family_ample,
    ),
    Claim(
        "family-picard-rank",
        "the parabolic family member with n+2 rays has Picard number n",
        _check_family_picard,
    ),
    Claim(
        "family-singular-count",
        "the parabolic family member of Picard number n has exactly n singular points",
        _check_family_singular_count,
    ),
    Claim(
        "ample-scan-exhaustive",
        "every anticanonically ample fan with small rays has at most 2*rho + 2 singular points",
        _check_ample_scan,
    ),
    Claim(
        "nef-fuzz-bound",
        "random complete fans with nef anticanonical class have at most 2*rho + 4 singular points",
        _check_nef_fuzz,
    ),
    Claim(
        "mmp-step-invariant",
        "a K-negative divisorial step meets at most 2 singular points and drops the count by at most 2",
        _check_mmp_invariant,
    ),
    Claim(
        "hj-roundtrip",
        "the resolution chain of 1/r(1,a) evaluates back to r/a with all entries >= 2",
        _check_hj_roundtrip,
    ),
    Claim(
        "resolution-discrepancy-range",
        "quotient-singularity discrepancies lie in (-1, 0] and vanish exactly on chains of 2s",
        _check_discrepancy_range,
    ),
    Claim(
        "resolution-cross-check",
        "toric resolution discrepancies agree with blow-up-calculus chain contractions",
        _check_cross_oracle,
    ),
    Claim(
        "a1-cluster-counts",
        "contracting the 2n (-2)-curves of the double blow-up gives 2n half-points at rank 2",
        _check_a1_cluster,
    ),
    Claim(
        "effective-anticanonical-witness",
        "with one horizontal fiber, -K = 4*F1 + 2*R1 is effective on the target",
        _check_effective_witness,
    ),
    Claim(
        "log-calabi-yau-pair",
        "with n = 4 and paired fibers, K + R1 + R2 = 0 on the target",
        _check_log_calabi_yau,
    ),
    Claim(
        "optimal-six-points",
        "with n = 3 distinct fibers the target is ample with 6 = 2*rho + 2 singular points",
        _check_six_points,
    ),
    Claim(
        "fiber-collapse-discrepancy",
        "collapsing the common fiber has log discrepancy (4-n)/n, flipping type at n = 4",
        _check_collapse_discrepancy,
    ),
    Claim(
        "fiber-collapse-point-count",
        "the collapsed surface has n + 1 singular points at Picard rank 1",
        _check_collapse_points,
    ),
    Claim(
        "fiber-collapse-class-identity",
        "the collapse-defining class equals 4*F1 + (4/n)*R1 and 4 times a disjoint fiber",
        _check_collapse_identity,
    ),
    Claim(
        "euler-census",
        "face counts of a complete simplicial fan alternate to the sphere Euler characteristic",
        _check_euler,
    ),
    Claim(
        "binomial-census",
        "the number of k-cones is at most the binomial coefficient C(#rays, k)",
        _check_binomial,
    ),
    Claim(
        "picard-ray-identity",
        "Picard number plus dimension equals the ray count",
        _check_picard_identity,
    ),
    Claim(
        "wps-family-total",
        "the audited weighted family has exactly 2k + 3 isolated singular points",
        _check_wps_total,
    ),
    Claim(
        "wps-family-orders",
        "the audited family's stabilizer orders are 3 (x 2k+1), 3k+1 and 3k+2",
        _check_wps_orders,
    ),
)


def claim_by_id(claim_id: str) -> Claim:
    for claim in CLAIMS:
        if claim.claim_id == claim_id:
            return claim
    raise KeyError(claim_id)


def run_claims(
    ids: tuple[str, ...] | None = None,
) -> list[tuple[Claim, ClaimResult]]:
    """Run the registered claims (all of them by default), in table order."""
    selected = CLAIMS if ids is None else tuple(claim_by_id(i) for i in ids)
    return [(claim, claim.check()) for claim in selected]
