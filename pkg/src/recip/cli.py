"""Command-line front end.

Exit codes: 0 success, 1 property fails under ``--assert``, 2 invalid input,
3 term budget exhausted, 4 an identity that must hold was violated.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from .algebra import (
    OrderSpec,
    VariableSpace,
    equals,
    format_fraction,
    format_monomial,
    series_truncate,
    substitute_inverse,
)
from .ctengine import DEFAULT_BUDGET, ct_all, hadamard_product
from .errors import IdentityViolation, InvalidInput, RecipError, TermBudgetExceeded
from .ldsystem import LDSystem, MatrixForm, crude_E, crude_Ebar
from .oracle import STRICT, enumerate_solutions, indicator_series, positive_solution
from .parsing import parse_rational
from .reciprocity import (
    PER_TERM,
    SUM_LEVEL,
    error_terms,
    i_property,
    monster_check,
    r_property,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_IDENTITY = 4

COMMANDS = (
    "ct",
    "ebar",
    "recip",
    "iprop",
    "monster",
    "error-terms",
    "grid",
    "enumerate",
    "feasible",
    "hadamard",
    "selfcheck",
)
DEFAULT_RANGE = (-12, 12)


class PropertyFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def load_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InvalidInput(f"{path}: top level must be an object with fields 'A' and 'b'")
    return doc


def load_system(path: str) -> tuple[LDSystem, dict]:
    doc = load_document(path)
    try:
        system = LDSystem.from_dict(doc)
    except InvalidInput as exc:
        raise InvalidInput(f"{path}: {exc}") from None
    return system, doc


def rhs_ranges(doc: dict, r: int) -> list:
    ranges = doc.get("b_ranges")
    if ranges is None:
        return [DEFAULT_RANGE] * r
    if not isinstance(ranges, list) or len(ranges) != r:
        raise InvalidInput(f"field 'b_ranges' must list one [lo, hi] pair per equation ({r})")
    out = []
    for k, pair in enumerate(ranges):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise InvalidInput(f"field 'b_ranges' entry {k + 1} must be [lo, hi] with integers")
        out.append(tuple(pair))
    return out


def make_order(args, r: int) -> OrderSpec:
    return OrderSpec.parse(args.order, r, args.reversed)


def engine_kw(args) -> dict:
    kw = {"budget": args.budget}
    if args.trace:
        kw["trace"] = lambda event: print(json.dumps(event), file=sys.stderr)
    return kw


# ---------------------------------------------------------------------------
# serialization


def series_records(series: dict, space) -> list:
    items = sorted(series.items(), key=lambda kv: (space.x_degree(kv[0]), kv[0]))
    return [
        {"monomial": format_monomial(space.x_part(m), _x_space(space)), "coef": format_fraction(c)}
        for m, c in items
    ]


def _x_space(space):
    names = space.variable_names()[space.r:]
    return VariableSpace(0, space.n, tuple(names))


def rational_record(F) -> dict:
    return {"text": str(F), "value": F.to_dict()}


def emit(doc, args, text_lines=None):
    if args.format == "text" and text_lines is not None:
        out = "\n".join(text_lines) + "\n"
    else:
        out = json.dumps(doc, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# commands


def cmd_ct(args, bar=False):
    system, _ = load_system(args.input)
    order = make_order(args, system.r)
    crude = crude_Ebar(system) if bar else crude_E(system)
    value = ct_all(crude, order, **engine_kw(args))
    name = "Ebar" if bar else "E"
    doc = {"command": args.command, "system": system.to_dict(), "order": order.describe()}
    doc[name] = rational_record(value)
    lines = [f"{name}(x) = {value}"]
    if value.is_lambda_free():
        try:
            series = series_truncate(value, args.degree)
        except InvalidInput:
            series = None
        if series is not None:
            doc["degree"] = args.degree
            doc["series"] = series_records(series, value.space)
        if args.verify:
            if series is None:
                raise InvalidInput("result has no power-series expansion to verify")
            if bar:
                sols = enumerate_solutions(system.with_rhs([-c for c in system.b]), args.degree, STRICT)
            else:
                sols = enumerate_solutions(system, args.degree)
            ok = series == indicator_series(sols, system.r)
            doc["verify"] = "pass" if ok else "fail"
            lines.append(f"verify: {doc['verify']}")
            if not ok:
                emit(doc, args, lines)
                raise IdentityViolation("engine series differs from the enumerated solutions")
    emit(doc, args, lines)
    return EXIT_OK


def _check(args, holds: bool):
    if args.assert_ and not holds:
        raise PropertyFailed()


def cmd_recip(args):
    system, _ = load_system(args.input)
    order = make_order(args, system.r)
    d = system.r if args.d is None else args.d
    rep = r_property(crude_E(system), order, d, **engine_kw(args))
    doc = {
        "command": "recip",
        "system": system.to_dict(),
        "order": order.describe(),
        "d": d,
        "r_property": rep.holds,
        "ct": rational_record(rep.ct),
        "ct_reversed": rational_record(rep.ct_reversed),
    }
    lines = [
        f"CT        = {rep.ct}",
        f"CT (rev.) = {rep.ct_reversed}",
        f"R-property (d={d}): {rep.holds}",
    ]
    emit(doc, args, lines)
    _check(args, rep.holds)
    return EXIT_OK


def cmd_iprop(args):
    system, _ = load_system(args.input)
    order = make_order(args, system.r)
    rep = i_property(crude_E(system), order, args.mode, **engine_kw(args))
    doc = {
        "command": "iprop",
        "system": system.to_dict(),
        "order": order.describe(),
        "mode": rep.mode,
        "i_property": rep.holds,
        "stages": rep.stages,
    }
    lines = [f"I-property ({rep.mode}): {rep.holds}"]
    if not rep.holds:
        doc["failed_stage"] = rep.stage
        doc["value"] = rational_record(rep.value)
        lines.append(f"stage {rep.stage}: I = {rep.value}")
    emit(doc, args, lines)
    _check(args, rep.holds)
    return EXIT_OK


def cmd_monster(args):
    system, _ = load_system(args.input)
    order = make_order(args, system.r)
    T = MatrixForm.from_system(system)
    verdict = monster_check(T, order)
    rows = [
        {
            "sequence": list(row.sequence.indices),
            "pivots": [format_fraction(p) for p in row.sequence.pivots],
            "coefficients": list(row.coefficients),
            "columns": list(row.columns),
            "rhs": row.rhs,
            "equation": row.equation(),
            "r_property": row.holds,
        }
        for row in verdict.checked
    ]
    doc = {
        "command": "monster",
        "system": system.to_dict(),
        "order": order.describe(),
        "holds": verdict.holds,
        "checked": rows,
    }
    lines = [T.render(), ""]
    for row in rows:
        seq = "(" + ",".join(map(str, row["sequence"])) + ")"
        lines.append(f"{seq:10} {row['equation']:30} {'ok' if row['r_property'] else 'fails'}")
    lines.append(
        "sufficient condition holds" if verdict.holds else "sufficient condition not established"
    )
    emit(doc, args, lines)
    _check(args, verdict.holds)
    return EXIT_OK


def cmd_error_terms(args):
    system, _ = load_system(args.input)
    order = make_order(args, system.r)
    dec = error_terms(crude_E(system), order, **engine_kw(args))
    doc = {
        "command": "error-terms",
        "system": system.to_dict(),
        "order": order.describe(),
        "terms": [rational_record(t) for t in dec.terms],
        "lhs": rational_record(dec.lhs),
        "rhs": rational_record(dec.rhs),
        "identity": "verified",
    }
    lines = [f"E_{i} = {t}" for i, t in enumerate(dec.terms)]
    lines.append(f"CT (rev.) = {dec.lhs}")
    lines.append("identity verified")
    emit(doc, args, lines)
    return EXIT_OK


# grid ------------------------------------------------------------------


def grid_point(task):
    """Evaluate R, I and the sufficient condition at one right-hand side."""
    A, b, order, budget, mode = task
    system = LDSystem(A, b)
    row = {"b": list(b)}
    try:
        crude = crude_E(system)
        row["R"] = r_property(crude, order, budget=budget).holds
        row["I"] = i_property(crude, order, mode, budget=budget).holds
    except TermBudgetExceeded as exc:
        row["error"] = str(exc)
    try:
        row["monster"] = monster_check(MatrixForm.from_system(system), order).holds
    except InvalidInput as exc:
        row["monster"] = None
        row.setdefault("error", str(exc))
    return row


def spot_check(A, b, order, degree, budget) -> bool:
    """R computed from oracle-validated series of E and Ebar."""
    system = LDSystem(A, b)
    E = ct_all(crude_E(system), order, budget=budget)
    Ebar = ct_all(crude_Ebar(system), order, budget=budget)
    if series_truncate(E, degree) != indicator_series(enumerate_solutions(system, degree), system.r):
        raise IdentityViolation(f"E series at b={list(b)} disagrees with enumeration")
    neg = system.with_rhs([-c for c in b])
    if series_truncate(Ebar, degree) != indicator_series(
        enumerate_solutions(neg, degree, STRICT), system.r
    ):
        raise IdentityViolation(f"Ebar series at b={list(b)} disagrees with enumeration")
    flipped = substitute_inverse(Ebar)
    if (system.n - system.r) % 2:
        flipped = -flipped
    return equals(E, flipped)


def grid_points(ranges):
    points = [()]
    for lo, hi in ranges:
        points = [p + (v,) for p in points for v in range(lo, hi + 1)]
    return points


def run_grid(system: LDSystem, ranges, order, *, jobs=1, budget=DEFAULT_BUDGET, mode=SUM_LEVEL):
    tasks = [(system.A, b, order, budget, mode) for b in grid_points(ranges)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(grid_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [grid_point(t) for t in tasks]


def grid_summary(rows) -> dict:
    def members(key):
        return {tuple(row["b"]) for row in rows if row.get(key)}

    R, I, M = members("R"), members("I"), members("monster")
    return {
        "points": len(rows),
        "R": len(R),
        "I": len(I),
        "monster": len(M),
        "errors": sum(1 for row in rows if "error" in row),
        "I_subset_R": I <= R,
        "monster_subset_R": M <= R,
        "I_proper_subset_R": I < R,
    }


def _rhs_names(r: int) -> list:
    if r == 1:
        return ["b"]
    if r == 2:
        return ["b", "c"]
    return [f"b{k + 1}" for k in range(r)]


def _cell(value) -> str:
    if value is None:
        return "-"
    return "true" if value else "false"


def cmd_grid(args):
    system, doc = load_system(args.input)
    order = make_order(args, system.r)
    ranges = rhs_ranges(doc, system.r)
    jobs = args.jobs or os.cpu_count() or 1
    rows = run_grid(system, ranges, order, jobs=jobs, budget=args.budget, mode=args.mode)
    summary = grid_summary(rows)
    if args.verify and rows:
        rng = random.Random(args.seed)
        picks = rng.sample(range(len(rows)), min(20, len(rows)))
        agree = 0
        for k in sorted(picks):
            row = rows[k]
            if "error" in row:
                continue
            value = spot_check(system.A, tuple(row["b"]), order, args.degree, args.budget)
            agree += value == row["R"]
        summary["spot_checks"] = len(picks)
        summary["spot_checks_agree"] = agree
    if args.format == "structured":
        emit({"command": "grid", "system": system.to_dict(), "rows": rows, "summary": summary}, args)
    else:
        header = _rhs_names(system.r) + ["R", "I", "monster"]
        lines = ["\t".join(header)]
        for row in rows:
            lines.append(
                "\t".join([str(v) for v in row["b"]] + [_cell(row.get(k)) for k in ("R", "I", "monster")])
            )
        out = "\n".join(lines) + "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
        print(
            "summary: " + " ".join(f"{k}={v}" for k, v in summary.items()),
            file=sys.stderr,
        )
    if not (summary["I_subset_R"] and summary["monster_subset_R"]):
        raise IdentityViolation("grid containment failed: I or monster not inside R")
    if summary.get("spot_checks_agree", 0) != summary.get("spot_checks", 0):
        raise IdentityViolation("R disagrees with the oracle comparison on a spot check")
    return EXIT_OK


# misc ------------------------------------------------------------------


def cmd_enumerate(args):
    system, _ = load_system(args.input)
    positivity = STRICT if args.strict else "nonneg"
    sols = enumerate_solutions(system, args.degree, positivity)
    doc = {
        "command": "enumerate",
        "system": system.to_dict(),
        "degree": args.degree,
        "positivity": positivity,
        "solutions": sols.to_list(),
    }
    emit(doc, args, [" ".join(map(str, a)) for a in sols.solutions])
    return EXIT_OK


def cmd_feasible(args):
    system, _ = load_system(args.input)
    witness = positive_solution(system.A)
    doc = {"command": "feasible", "A": [list(r) for r in system.A], "feasible": witness is not None}
    if witness is not None:
        doc["witness"] = list(witness)
    emit(doc, args, [f"feasible: {witness is not None}" + (f" witness {list(witness)}" if witness else "")])
    _check(args, witness is not None)
    return EXIT_OK


def cmd_hadamard(args):
    if len(args.exprs) != 2:
        raise InvalidInput("hadamard takes exactly two expressions")
    f, g = (parse_rational(e, (args.var,)) for e in args.exprs)
    h = hadamard_product(f, g, **engine_kw(args)).collect()
    doc = {"command": "hadamard", "f": str(f), "g": str(g), "product": rational_record(h)}
    doc["series"] = series_records(series_truncate(h, args.degree), h.space)
    emit(doc, args, [str(h)])
    return EXIT_OK


def cmd_selfcheck(args):
    from .selfcheck import run_selfcheck

    results = run_selfcheck(seed=args.seed)
    failed = [name for name, ok, _ in results if not ok]
    doc = {
        "command": "selfcheck",
        "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in results],
        "passed": len(results) - len(failed),
        "failed": len(failed),
    }
    lines = [f"{'PASS' if ok else 'FAIL'}  {n}  {d}" for n, ok, d in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    emit(doc, args, lines)
    return EXIT_PROPERTY if failed else EXIT_OK


HANDLERS = {
    "ct": cmd_ct,
    "ebar": lambda a: cmd_ct(a, bar=True),
    "recip": cmd_recip,
    "iprop": cmd_iprop,
    "monster": cmd_monster,
    "error-terms": cmd_error_terms,
    "grid": cmd_grid,
    "enumerate": cmd_enumerate,
    "feasible": cmd_feasible,
    "hadamard": cmd_hadamard,
    "selfcheck": cmd_selfcheck,
}

NEEDS_INPUT = set(COMMANDS) - {"hadamard", "selfcheck"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="recip",
        description="Constant-term reciprocity checks for linear Diophantine systems.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("exprs", nargs="*", help="expressions (hadamard only)")
    p.add_argument("--input", "-i", help="system document {\"A\": [[...]], \"b\": [...]}")
    p.add_argument("--order", default="case1", choices=("case1", "case2"))
    p.add_argument("--reversed", action="store_true", help="use the reversed order")
    p.add_argument("--degree", type=int, default=8, help="series truncation degree")
    p.add_argument("--mode", default=SUM_LEVEL, choices=(SUM_LEVEL, PER_TERM))
    p.add_argument("--d", type=int, default=None, help="sign exponent for recip (default r)")
    p.add_argument("--assert", dest="assert_", action="store_true", help="exit 1 when the property fails")
    p.add_argument("--verify", action="store_true", help="compare against enumeration")
    p.add_argument("--strict", action="store_true", help="enumerate positive solutions only")
    p.add_argument("--seed", type=int, default=1729)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="live-term budget")
    p.add_argument("--jobs", type=int, default=0, help="grid workers (default: all cores)")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("structured", "tsv", "text"), default=None)
    p.add_argument("--var", default="x", help="variable name for hadamard expressions")
    p.add_argument("--trace", action="store_true", help="engine progress on stderr")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "tsv" if args.command == "grid" else "structured"
    try:
        if args.degree < 0:
            raise InvalidInput("--degree must be nonnegative")
        if args.budget <= 0:
            raise InvalidInput("--budget must be positive")
        if args.command in NEEDS_INPUT and not args.input:
            raise InvalidInput(f"{args.command} needs --input FILE")
        if args.exprs and args.command != "hadamard":
            raise InvalidInput(f"unexpected arguments for {args.command}: {' '.join(args.exprs)}")
        return HANDLERS[args.command](args)
    except PropertyFailed:
        return EXIT_PROPERTY
    except TermBudgetExceeded as exc:
        print(f"recip: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except IdentityViolation as exc:
        print(f"recip: identity violation: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except (InvalidInput, RecipError) as exc:
        print(f"recip: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
