"""Command-line harness tying the modules together.

Subcommands: ``fan-check``, ``scan``, ``paper-suite``, ``hj``, ``wps``,
``census``, ``mmp``, ``scenario``.  Exit codes are total: 0 means every
applicable check passed, 1 means bad input, 2 means a claim violation.

Scan output is canonical: records are sorted by a canonical key before being
written, and random fans are seeded per index, so the byte content of the
output never depends on the worker count.  Configuration can come from a
JSON file (``--config``), with command-line flags taking precedence;
environment variables are deliberately not consulted.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import fan_nd, registry, surface, toric

OK, INPUT_ERROR, CLAIM_VIOLATION = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; that code is reserved for
    # claim violations here, so remap parse failures to the input-error code.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _fraction_str(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return value


def _jsonify(value):
    """Recursively turn Fractions into exact 'p/q' strings for output."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def _dump(record: dict) -> str:
    return json.dumps(_jsonify(record), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# fan-check


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc


def cmd_fan_check(args) -> int:
    data = _load_json(args.path)
    fan = toric.fan_from_dict(data)
    report = toric.census(fan)
    record = toric.report_to_dict(report)
    if args.format == "records":
        print(_dump(record))
    else:
        print(f"rays: {list(fan.rays)}")
        print(f"picard number: {report.picard_number}")
        print(f"singular points: {report.singular_count}")
        print(f"positivity: {report.positivity}")
        for check in report.bound_checks:
            if not check.applicable:
                print(f"{check.name}: not applicable")
            else:
                verdict = "ok" if check.passed else "VIOLATED"
                print(
                    f"{check.name}: {check.value} <= {check.limit} "
                    f"(slack {check.slack}) {verdict}"
                )
    violated = [
        c for c in report.bound_checks if c.applicable and not c.passed
    ]
    if violated:
        print(
            f"violation witness: rays {list(fan.rays)} break {violated[0].name}",
            file=sys.stderr,
        )
        return CLAIM_VIOLATION
    return OK


# ---------------------------------------------------------------------------
# scan


@dataclass(frozen=True)
class ScanConfig:
    bound: int = 2
    max_rays: int = 9
    seed: int = 0
    random_count: int = 1000
    workers: int = 1
    dedupe: bool = False
    out: str | None = None

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("bound must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.random_count < 0:
            raise ValueError("random_count must be >= 0")
        if self.max_rays < 3:
            raise ValueError("max_rays must be >= 3")


def _fan_record(kind: str, fan: toric.Fan2, extra: dict | None = None) -> dict:
    report = toric.census(fan)
    record = {"kind": kind}
    record.update(toric.report_to_dict(report))
    if extra:
        record.update(extra)
    return record


def _enum_partition(task) -> list[tuple[tuple, str]]:
    bound, start, dedupe = task
    out = []
    for fan in toric.ldp_enumerate(bound, start=start):
        key = (
            toric.gl2_canonical_key(fan) if dedupe else fan.rays
        )
        out.append(((0, key), _dump(_fan_record("ample-scan", fan))))
    return out


def _random_partition(task) -> list[tuple[tuple, str]]:
    seed, lo, hi, max_rays, bound = task
    out = []
    for index in range(lo, hi):
        fan = toric.random_complete_fan(
            seed * 1_000_003 + index, max_rays=max_rays, bound=bound
        )
        record = _fan_record("random-fan", fan, {"index": index})
        out.append(((1, index), _dump(record)))
    return out


def run_scan(config: ScanConfig) -> tuple[list[str], dict]:
    """Run the full scan, returning canonical record lines and a summary."""
    candidates = toric.box_primitive_rays(config.bound)
    enum_tasks = [(config.bound, s, config.dedupe) for s in range(len(candidates))]
    chunk = max(1, config.random_count // (4 * config.workers) or 1)
    random_tasks = [
        (config.seed, lo, min(lo + chunk, config.random_count), config.max_rays, 3)
        for lo in range(0, config.random_count, chunk)
    ]
    keyed: list[tuple[tuple, str]] = []
    if config.workers == 1:
        for task in enum_tasks:
            keyed.extend(_enum_partition(task))
        for task in random_tasks:
            keyed.extend(_random_partition(task))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for part in pool.map(_enum_partition, enum_tasks):
                keyed.extend(part)
            for part in pool.map(_random_partition, random_tasks):
                keyed.extend(part)
    keyed.sort(key=lambda kv: kv[0])
    lines = []
    seen = set()
    for key, line in keyed:
        if config.dedupe and key[0] == 0:
            if key in seen:
                continue
            seen.add(key)
        lines.append(line)

    enumerated = nef_random = violations = 0
    max_excess = None
    for line in lines:
        record = json.loads(line)
        value = next(
            b for b in record["bounds"] if b["name"] == toric.FANO_BOUND
        )
        nef = next(b for b in record["bounds"] if b["name"] == toric.NEF_BOUND)
        if record["kind"] == "ample-scan":
            enumerated += 1
            excess = record["picard_number"] * -2 + len(record["singular_points"])
            if max_excess is None or excess > max_excess:
                max_excess = excess
        elif nef["applicable"]:
            nef_random += 1
        for check in (value, nef):
            if check["applicable"] and not check["pass"]:
                violations += 1
    summary = {
        "bound": config.bound,
        "dedupe": config.dedupe,
        "enumerated": enumerated,
        "random": config.random_count,
        "nef_random": nef_random,
        "violations": violations,
        "max_singular_minus_2rho": max_excess,
    }
    return lines, summary


def cmd_scan(args) -> int:
    settings = {}
    if args.config:
        data = _load_json(args.config)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        settings.update(data)
    for name in ("bound", "max_rays", "seed", "random_count", "workers", "out"):
        value = getattr(args, name)
        if value is not None:
            settings[name] = value
    if args.dedupe:
        settings["dedupe"] = True
    try:
        config = ScanConfig(**settings)
    except TypeError as exc:
        raise ValueError(f"bad scan configuration: {exc}") from exc
    lines, summary = run_scan(config)
    payload = "".join(line + "\n" for line in lines)
    if config.out and config.out != "-":
        try:
            with open(config.out, "w", encoding="utf-8") as handle:
                handle.write(payload)
        except OSError as exc:
            raise ValueError(f"cannot write {config.out}: {exc}") from exc
    else:
        sys.stdout.write(payload)
    print(_dump(summary))
    return CLAIM_VIOLATION if summary["violations"] else OK


# ---------------------------------------------------------------------------
# paper-suite


def cmd_paper_suite(args) -> int:
    results = registry.run_claims()
    failed = []
    for claim, result in results:
        status = "PASS" if result.passed else "FAIL"
        line = f"{status} {claim.claim_id}: {result.detail}"
        if args.format == "records":
            print(
                _dump(
                    {
                        "claim": claim.claim_id,
                        "statement": claim.statement,
                        "pass": result.passed,
                        "detail": result.detail,
                        "witness": repr(result.witness)
                        if result.witness is not None
                        else None,
                    }
                )
            )
        else:
            print(line)
        if not result.passed:
            failed.append(claim.claim_id)
    print(
        _dump(
            {"claims": len(results), "failed": failed, "ok": not failed}
        )
    )
    return CLAIM_VIOLATION if failed else OK


# ---------------------------------------------------------------------------
# small wrappers


def cmd_hj(args) -> int:
    singularity = toric.QuotientSingularity(args.r, args.a)
    res = toric.resolve_singularity(singularity)
    record = {
        "r": args.r,
        "a": args.a,
        "chain": list(res.chain),
        "discrepancies": [str(d) for d in res.discrepancies],
        "log_discrepancies": [str(d) for d in res.log_discrepancies],
    }
    if args.format == "records":
        print(_dump(record))
    else:
        print(f"1/{args.r}(1,{args.a})")
        print(f"chain: {list(res.chain)}")
        print("discrepancies: " + ", ".join(str(d) for d in res.discrepancies))
        print(
            "log discrepancies: "
            + ", ".join(str(d) for d in res.log_discrepancies)
        )
    return OK


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        weights = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"weights must be a comma-separated integer list: {text!r}") from exc
    return weights


def cmd_wps(args) -> int:
    from . import wps

    weights = _parse_weights(args.weights)
    report = wps.audit(weights, args.degree)
    record = wps.report_to_dict(report)
    if args.format == "records":
        print(_dump(record))
    else:
        print(f"weights {list(weights)}, degree {args.degree}")
        for v in report.vertices:
            where = "on" if v.on_member else "off"
            tag = f" (stabilizer {v.stabilizer})" if v.is_singular_point else ""
            print(f"vertex {v.index} (weight {v.weight}): {where} the general member{tag}")
        for s in report.strata:
            if s.countable:
                print(
                    f"stratum {s.indices}: {s.point_count} points of order {s.stabilizer}"
                )
            else:
                print(f"stratum {s.indices}: flagged - {s.note}")
        print(f"total isolated singular points: {report.total}")
    return OK


def cmd_census(args) -> int:
    data = _load_json(args.path)
    fan = fan_nd.fannd_from_dict(data)
    report = fan_nd.census(fan)
    record = fan_nd.census_to_dict(report)
    if args.format == "records":
        print(_dump(record))
    else:
        print(f"dimension {report.dim}, picard number {report.picard_number}")
        for k in sorted(report.counts):
            print(
                f"dim {k}: {report.counts[k]} cones, "
                f"{report.singular_counts[k]} singular "
                f"({report.minimally_singular_counts[k]} with smooth boundary)"
            )
        print(f"euler identity: {'ok' if report.euler_ok else 'VIOLATED'}")
        print(f"binomial bounds: {'ok' if report.binomial_ok else 'VIOLATED'}")
    if not (report.euler_ok and report.binomial_ok):
        return CLAIM_VIOLATION
    return OK


def cmd_mmp(args) -> int:
    data = _load_json(args.path)
    fan = toric.fan_from_dict(data)
    steps = toric.toric_mmp(fan)
    final = steps[-1].fan_after if steps else fan
    if args.format == "records":
        for step in steps:
            print(
                _dump(
                    {
                        "ray": list(step.ray),
                        "singular_before": step.singular_before,
                        "singular_after": step.singular_after,
                        "adjacent_singular_cones": step.adjacent_singular_cones,
                        "picard_after": step.picard_after,
                    }
                )
            )
        print(_dump({"final_rays": [list(r) for r in final.rays]}))
    else:
        for i, step in enumerate(steps, start=1):
            print(
                f"step {i}: contract {step.ray}, singular "
                f"{step.singular_before} -> {step.singular_after}, "
                f"adjacent singular cones {step.adjacent_singular_cones}"
            )
        print(f"final fan: {list(final.rays)} (picard {final.picard_number})")
    return OK


def _parse_pattern(text: str, n: int) -> list[list[int]]:
    if not text:
        return [list(range(1, n + 1))]
    blocks = []
    for part in text.split("/"):
        try:
            blocks.append([int(x) for x in part.split(",")])
        except ValueError as exc:
            raise ValueError(f"bad pattern block {part!r}") from exc
    return blocks


def cmd_scenario(args) -> int:
    if args.name == "a1-cluster":
        pattern = _parse_pattern(args.pattern, args.n)
        _, result, report = surface.scenario_a1_cluster(args.n, pattern)
    elif args.name == "fiber-collapse":
        if args.pattern:
            raise ValueError("fiber-collapse fixes the pattern to one block")
        _, result, report = surface.scenario_fiber_collapse(args.n)
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(f"unknown scenario {args.name!r}")
    record = dict(report)
    record["discrepancies"] = {
        label: str(d) for label, d in result.discrepancies.items()
    }
    record["components"] = [list(c) for c in result.components]
    if args.format == "records":
        print(_dump(record))
    else:
        for key, value in record.items():
            print(f"{key}: {_jsonify(value)}")
    return OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> _Parser:
    parser = _Parser(
        prog="singcensus",
        description="exact singular-point censuses for toric and rational surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format",
            choices=("records", "table"),
            default="table",
            help="line-delimited JSON records or a human-readable table",
        )

    p = sub.add_parser("fan-check", help="census and bound checks for a fan file")
    p.add_argument("path")
    add_format(p)
    p.set_defaults(func=cmd_fan_check)

    p = sub.add_parser("scan", help="enumerate and fuzz fans, checking the bounds")
    p.add_argument("--bound", type=int, default=None, help="ray coordinate box")
    p.add_argument("--max-rays", dest="max_rays", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--random-count", dest="random_count", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--dedupe", action="store_true", help="collapse GL(2,Z) orbits")
    p.add_argument("--out", default=None, help="records file ('-' for stdout)")
    p.add_argument("--config", default=None, help="JSON config file, flags override")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("paper-suite", help="run every registered verification claim")
    add_format(p)
    p.set_defaults(func=cmd_paper_suite)

    p = sub.add_parser("hj", help="resolution chain and discrepancies of 1/r(1,a)")
    p.add_argument("r", type=int)
    p.add_argument("a", type=int)
    add_format(p)
    p.set_defaults(func=cmd_hj)

    p = sub.add_parser("wps", help="singular strata of a general weighted hypersurface")
    p.add_argument("weights", help="comma-separated, e.g. 1,3,3,4,5")
    p.add_argument("degree", type=int)
    add_format(p)
    p.set_defaults(func=cmd_wps)

    p = sub.add_parser("census", help="face census of an explicit fan file")
    p.add_argument("path")
    add_format(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("mmp", help="run the divisorial contraction loop on a fan file")
    p.add_argument("path")
    add_format(p)
    p.set_defaults(func=cmd_mmp)

    p = sub.add_parser("scenario", help="run a blow-up/contraction scenario")
    p.add_argument("name", choices=("a1-cluster", "fiber-collapse"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", default="", help="blocks like 1,3/2,4")
    add_format(p)
    p.set_defaults(func=cmd_scenario)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else INPUT_ERROR
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
