"""Command-line front door.

Commands::

    bft space --n 2 --q 2
    bft apartment --n 2 --q 2 [--base "0,0,1;0,1,0;1,0,0"]
    bft lemmas --n 3 --q 2 [--all | --case K] [--force]
    bft map induce --n 2 --q 2 --matrix "1,0,0;0,1,0;0,0,1" [--target-q Q]
                   [--dual] --out FILE
    bft map analyze FILE [--mode exhaustive|sample] [--k K] [--seed S]

Exit codes are stable across commands: 0 when every check passes, 1 when a
mathematical check fails (the first witness is printed to stderr), 2 for
invalid input.  Reports are emitted on stdout as JSON (default) or CSV and
are byte-identical for identical inputs and seeds; wall-clock timing goes
to stderr only.  The BFT_THREADS environment variable caps worker threads
for the sweep commands.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from math import factorial, prod

from ._parallel import parallel_map
from .buildings import apartment_of, chambers_of
from .chamber_maps import (
    AnalysisError,
    classify,
    induce,
    preserves_apartments,
    reconstruct,
)
from .combinatorics import (
    classify_adjacent_family,
    closed_form,
    complement_adjacent,
    complement_chamber,
    complement_family,
    copoint_family,
    disposition,
    intersection_count,
    is_exact,
    is_exact_by_search,
    max_inexact_family,
    point_copoint_family,
    point_family,
    residual_family,
    star_intersections,
)
from .gf import SUPPORTED_ORDERS, FieldError, GF
from .jsonio import FormatError, dump_map, encode_chamber, load_map, parse_rows
from .projective import Base, MapError, ProjSpace, Semilinear, standard_base

__all__ = ["main", "RunReport", "CheckRow"]

RANK_CAP = 5  # single-apartment sweeps beyond this need --force


# ------------------------------------------------------------- run reports


@dataclass
class CheckRow:
    name: str
    expected: object
    actual: object
    passed: bool
    note: str = ""


@dataclass
class RunReport:
    command: str
    params: dict
    seed: int | None = None
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def add(self, name, expected, actual, passed, note=""):
        self.checks.append(CheckRow(name, expected, actual, bool(passed), note))

    def passed(self) -> bool:
        return all(row.passed for row in self.checks)

    def first_failure(self):
        return next((row for row in self.checks if not row.passed), None)

    def to_dict(self) -> dict:
        out = {"command": self.command, "params": self.params}
        if self.seed is not None:
            out["seed"] = self.seed
        out["checks"] = [
            {
                "name": row.name,
                "expected": row.expected,
                "actual": row.actual,
                "pass": row.passed,
                **({"note": row.note} if row.note else {}),
            }
            for row in self.checks
        ]
        out["passed"] = self.passed()
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "expected", "actual", "pass", "note"])
        for row in self.checks:
            writer.writerow(
                [row.name, row.expected, row.actual, row.passed, row.note]
            )
        return buf.getvalue()


def _emit(report: RunReport, fmt: str) -> None:
    sys.stdout.write(report.to_json() if fmt == "json" else report.to_csv())


def _fail(message: str) -> None:
    sys.stderr.write(message.rstrip() + "\n")


# ------------------------------------------------------------ count formulas


def point_count(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def gaussian_binomial(m: int, k: int, q: int) -> int:
    num = prod(q ** (m - i) - 1 for i in range(k))
    den = prod(q ** (i + 1) - 1 for i in range(k))
    return num // den


def chamber_count(n: int, q: int) -> int:
    return prod((q**k - 1) // (q - 1) for k in range(2, n + 2))


def apartment_count(n: int, q: int) -> int:
    frames = prod((q ** (n + 1) - q**i) // (q - 1) for i in range(n + 1))
    return frames // factorial(n + 1)


# ------------------------------------------------------------------ helpers


def _check_space_args(n: int, q: int) -> str | None:
    if n < 2:
        return f"projective dimension must be at least 2, got {n}"
    if q not in SUPPORTED_ORDERS:
        return (
            f"unsupported field order {q}; supported: "
            + ", ".join(map(str, SUPPORTED_ORDERS))
        )
    return None


def _parse_base(space: ProjSpace, text: str) -> Base:
    rows = parse_rows(text)
    return Base.of(space, rows)


def _encode_point(p) -> list:
    return list(p)


def _encode_base(base: Base) -> list:
    return [_encode_point(p) for p in base.points]


# ----------------------------------------------------------------- commands


def cmd_space(args) -> int:
    problem = _check_space_args(args.n, args.q)
    if problem:
        _fail(problem)
        return 2
    n, q = args.n, args.q
    report = RunReport("space", {"n": n, "q": q})
    for name, value in [
        ("points", point_count(n, q)),
        ("lines", gaussian_binomial(n + 1, 2, q)),
        ("hyperplanes", gaussian_binomial(n + 1, n, q)),
        ("chambers", chamber_count(n, q)),
        ("apartments", apartment_count(n, q)),
    ]:
        report.add(name, None, value, True)
    _emit(report, args.format)
    return 0


def cmd_apartment(args) -> int:
    problem = _check_space_args(args.n, args.q)
    if problem:
        _fail(problem)
        return 2
    if args.n > RANK_CAP and not args.force:
        _fail(f"dimension {args.n} exceeds the cap {RANK_CAP}; use --force")
        return 2
    space = ProjSpace.of(args.n, args.q)
    try:
        base = (
            _parse_base(space, args.base) if args.base else standard_base(space)
        )
    except (FormatError, ValueError) as exc:
        _fail(f"bad base: {exc}")
        return 2
    ap = apartment_of(base)
    report = RunReport("apartment", {"n": args.n, "q": args.q})
    report.add("chambers", factorial(args.n + 1), len(ap), len(ap) == factorial(args.n + 1))
    report.details["base"] = _encode_base(base)
    report.details["chambers"] = [
        {"perm": list(perm), "parts": encode_chamber(ap.chamber_of_perm(perm))}
        for perm in ap.perms
    ]
    _emit(report, args.format)
    return 0 if report.passed() else 1


def _case_row(ap, n, case):
    """One battery row: enumerated overlap vs closed form for one case."""
    pairs = [(i, j) for i in range(n + 1) for j in range(n + 1) if i != j]
    found = {}
    for p1, p2 in itertools.permutations(pairs, 2):
        if disposition(p1, p2) != case:
            continue
        count = intersection_count(ap, p1, p2)
        found.setdefault(count, (p1, p2))
    if case == 6 and n == 2:
        return CheckRow(
            "case-6-overlap",
            "undefined",
            "unrealizable" if not found else sorted(found),
            not found,
            "no four distinct indices exist at n=2",
        )
    expected = closed_form(n, case)
    values = sorted(found)
    actual = values[0] if len(values) == 1 else values
    passed = values == [expected]
    note = ""
    if not passed:
        value, (p1, p2) = next(
            (v, w) for v, w in sorted(found.items()) if v != expected
        )
        note = f"pairs {p1} and {p2} overlap in {value} chambers"
    return CheckRow(f"case-{case}-overlap", expected, actual, passed, note)


def _structural_rows(ap, n, q):
    rows = []
    pairs = [(i, j) for i in range(n + 1) for j in range(n + 1) if i != j]

    ok = True
    for i, j in pairs:
        head = point_family(ap, i) | copoint_family(ap, j)
        tail = residual_family(ap, i, j)
        ok = ok and not (head & tail) and head | tail == complement_family(ap, i, j)
    rows.append(CheckRow("complement-decomposition", True, ok, ok))

    ok = all(
        {complement_chamber(ap, c) for c in complement_family(ap, i, j)}
        == complement_family(ap, j, i)
        for i, j in pairs
    )
    rows.append(CheckRow("complement-involution", True, ok, ok))

    if n == 2:
        ok = all(not residual_family(ap, i, j) for i, j in pairs)
        rows.append(CheckRow("residual-empty", True, ok, ok))
    else:
        ok = True
        for i, j in pairs:
            res = residual_family(ap, i, j)
            rest = [t for t in range(n + 1) if t not in (i, j)]
            for k in rest:
                ok = ok and len(point_family(ap, k) & res) == (n - 2) * factorial(n - 1) // 2
                ok = ok and len(copoint_family(ap, k) & res) == (n - 2) * factorial(n - 1) // 2
            for k, m in itertools.permutations(rest, 2):
                ok = ok and len(point_copoint_family(ap, m, k) & res) == factorial(n - 1) // 2
        rows.append(CheckRow("residual-split", True, ok, ok))

    ok = all(
        star_intersections(ap, i) == (point_family(ap, i), copoint_family(ap, i))
        for i in range(n + 1)
    )
    rows.append(CheckRow("star-intersections", True, ok, ok))

    n1, n2, n4 = closed_form(n, 1), closed_form(n, 2), closed_form(n, 4)
    bad = {n1, n4} | ({closed_form(n, 6)} if n >= 3 else set())
    ok = n2 not in bad
    rows.append(CheckRow("count-distinctness", True, ok, ok))

    if n >= 5:
        ok = (n2 - closed_form(n, 6)) * 12 == factorial(n - 1) * (n * n + n - 24)
        rows.append(CheckRow("difference-identity", True, ok, ok))

    if n <= 5:
        classified = 0
        for family in itertools.combinations(pairs, n):
            if all(
                complement_adjacent(a, b)
                for a, b in itertools.combinations(family, 2)
            ):
                classify_adjacent_family(family)
                classified += 1
        rows.append(
            CheckRow("adjacent-families", 2 * (n + 1), classified, classified == 2 * (n + 1))
        )

    if n == 2 and q <= 3:
        inexact_sets = []
        xs = {frozenset(max_inexact_family(ap, i, j)) for i, j in pairs}
        ok = True
        chambers = ap.chambers
        for bits in range(2 ** len(chambers)):
            subset = frozenset(c for t, c in enumerate(chambers) if bits >> t & 1)
            exact = is_exact(ap, subset)
            ok = ok and exact == is_exact_by_search(ap, subset)
            ok = ok and exact == (not any(subset <= x for x in xs))
            if not exact and all(
                is_exact(ap, subset | {c}) for c in ap.chamber_set - subset
            ):
                inexact_sets.append(subset)
        ok = ok and set(inexact_sets) == xs
        rows.append(CheckRow("maximal-inexact-classification", True, ok, ok))

    return rows


def cmd_lemmas(args) -> int:
    problem = _check_space_args(args.n, args.q)
    if problem:
        _fail(problem)
        return 2
    if args.n > RANK_CAP and not args.force:
        _fail(f"dimension {args.n} exceeds the cap {RANK_CAP}; use --force")
        return 2
    n, q = args.n, args.q
    ap = apartment_of(standard_base(ProjSpace.of(n, q)))
    cases = [args.case] if args.case else list(range(1, 7))
    report = RunReport(
        "lemmas", {"n": n, "q": q, "cases": cases, "all": args.case is None}
    )
    for row in parallel_map(lambda c: _case_row(ap, n, c), cases):
        report.checks.append(row)
    if args.case is None:
        report.checks.extend(_structural_rows(ap, n, q))
    _emit(report, args.format)
    failure = report.first_failure()
    if failure:
        _fail(
            f"FAIL {failure.name}: expected {failure.expected}, "
            f"got {failure.actual}"
            + (f" ({failure.note})" if failure.note else "")
        )
        return 1
    return 0


def cmd_map_induce(args) -> int:
    problem = _check_space_args(args.n, args.q)
    if problem:
        _fail(problem)
        return 2
    target_q = args.target_q if args.target_q is not None else args.q
    if target_q not in SUPPORTED_ORDERS:
        _fail(
            f"unsupported target order {target_q}; supported: "
            + ", ".join(map(str, SUPPORTED_ORDERS))
        )
        return 2
    try:
        matrix = parse_rows(args.matrix)
    except FormatError as exc:
        _fail(f"bad matrix: {exc}")
        return 2
    m = args.n + 1
    if len(matrix) != m or any(len(r) != m for r in matrix):
        _fail(f"matrix must be {m}x{m} for n={args.n}")
        return 2
    if any(not 0 <= x < target_q for row in matrix for x in row):
        _fail(f"matrix entries must be field codes in 0..{target_q - 1}")
        return 2
    source = ProjSpace.of(args.n, args.q)
    target = ProjSpace.of(args.n, target_q)
    try:
        sigma = source.gf.embedding_into(target.gf)
    except FieldError as exc:
        _fail(str(exc))
        return 2
    try:
        semi = Semilinear.of(source, target, matrix, sigma=sigma)
    except MapError as exc:
        _fail(f"matrix does not induce a strong embedding: {exc}")
        return 1
    f = induce(semi, dual=args.dual)
    dump_map(f, args.out, dual=args.dual)
    report = RunReport(
        "map induce",
        {
            "n": args.n,
            "q": args.q,
            "target_q": target_q,
            "dual": bool(args.dual),
            "out": args.out,
        },
    )
    report.add("pairs-written", chamber_count(args.n, args.q), len(f.table), True)
    _emit(report, "json")
    return 0


def cmd_map_analyze(args) -> int:
    try:
        f = load_map(args.path)
    except OSError as exc:
        _fail(f"cannot read {args.path}: {exc}")
        return 2
    except (FormatError, MapError) as exc:
        _fail(f"malformed chamber-map file: {exc}")
        return 2
    mode = args.mode
    if mode is None:
        mode = "exhaustive" if f.source.n <= 3 and f.source.q <= 3 else "sample"
    report = RunReport(
        "map analyze",
        {
            "path": args.path,
            "source": {"n": f.source.n, "q": f.source.q},
            "target": {"n": f.target.n, "q": f.target.q},
            "mode": mode,
            "k": args.k,
        },
        seed=args.seed,
    )
    check = preserves_apartments(f, mode=mode, k=args.k, seed=args.seed)
    report.add(
        "apartments-preserved",
        True,
        check.ok,
        check.ok,
        f"{check.checked} apartments checked ({check.mode})",
    )
    label = "not-apartment-preserving"
    witness = None
    if check.ok:
        try:
            label = classify(f, mode=mode, k=args.k, seed=args.seed)
            decomposition = reconstruct(f)
        except AnalysisError as exc:
            label = "not-apartment-preserving"
            witness = f"reconstruction failed: {exc}"
        else:
            if decomposition.kind == "direct":
                g_table = [
                    [_encode_point(p), _encode_point(img)]
                    for p, img in sorted(decomposition.g.items())
                ]
            else:
                g_table = [
                    [_encode_point(p), [list(r) for r in img.rows]]
                    for p, img in sorted(decomposition.g.items())
                ]
            report.details["kind"] = decomposition.kind
            report.details["g"] = g_table
            report.details["sigma_by_base"] = [
                {
                    "base": _encode_base(base),
                    "sigma": list(sigma),
                    "case": case,
                }
                for base, (sigma, case) in sorted(
                    decomposition.sigma_by_base.items(),
                    key=lambda kv: kv[0].points,
                )
            ]
    else:
        witness = "witness base: " + ";".join(
            ",".join(map(str, p)) for p in check.witness_base.points
        )
    report.add(
        "classification",
        "induced",
        label,
        label != "not-apartment-preserving",
    )
    _emit(report, args.format)
    if label == "not-apartment-preserving":
        if witness:
            _fail(witness)
        return 1
    return 0


# -------------------------------------------------------------- arg parsing


def _add_common(parser, fmt=True):
    if fmt:
        parser.add_argument(
            "--format", choices=("json", "csv"), default="json",
            help="report format on stdout",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bft",
        description=(
            "Chambers, apartments, and chamber-map analysis for projective "
            "spaces over small finite fields."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("space", help="print counting data for PG(n, q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_space)

    p = sub.add_parser("apartment", help="dump one apartment's chambers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--base", help='base points, e.g. "0,0,1;0,1,0;1,0,0"')
    p.add_argument("--force", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_apartment)

    p = sub.add_parser("lemmas", help="verify the apartment counting lemmas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--case", type=int, choices=range(1, 7))
    group.add_argument("--all", action="store_true", default=False)
    p.add_argument("--force", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("map", help="induce or analyze chamber maps")
    map_sub = p.add_subparsers(dest="subcommand", required=True)

    pi = map_sub.add_parser("induce", help="write the chamber map of a matrix")
    pi.add_argument("--n", type=int, required=True)
    pi.add_argument("--q", type=int, required=True)
    pi.add_argument("--target-q", type=int, dest="target_q")
    pi.add_argument("--matrix", required=True)
    pi.add_argument("--dual", action="store_true")
    pi.add_argument("--out", required=True)
    pi.set_defaults(func=cmd_map_induce)

    pa = map_sub.add_parser("analyze", help="classify a chamber-map file")
    pa.add_argument("path")
    pa.add_argument("--mode", choices=("exhaustive", "sample"))
    pa.add_argument("--k", type=int, default=50)
    pa.add_argument("--seed", type=int, default=0)
    _add_common(pa)
    pa.set_defaults(func=cmd_map_analyze)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        return args.func(args)
    finally:
        elapsed = (time.perf_counter() - start) * 1000
        sys.stderr.write(f"elapsed {elapsed:.0f} ms\n")


if __name__ == "__main__":
    sys.exit(main())
