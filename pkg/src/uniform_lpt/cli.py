"""Command-line front end.

Processor and task numbers in all output are 1-based, matching the usual
s(1) >= ... >= s(m), t(1) >= ... >= t(n) notation.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction

from . import acceptance
from .analysis import approx_ratio, gis_bound, graham_bound, rho
from .certify import certify
from .exact import DEFAULT_NODE_BUDGET, ENUMERATION_CAP, SolverRefusal, opt_bnb, opt_enumerate
from .lpt import lpt_schedule
from .model import InstanceError, dumps, load_instance, serialize_instance, validate
from .worstcase import EXCEED_TOL, SearchConfig, generate_gis_instance, ratio_ceiling_check, search_worst

SEED_ENV = "UNIFORM_LPT_SEED"


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _fraction_hint(x: float) -> str:
    frac = Fraction(x).limit_denominator(100)
    if frac.denominator > 1 and abs(float(frac) - x) <= 1e-12:
        return f"{frac.numerator}/{frac.denominator} ~ "
    return ""


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit(fmt: str, data: dict, text: str, rows=None) -> str:
    if fmt == "json":
        return dumps(data, indent=2) + "\n"
    if fmt == "csv":
        if rows is None:
            rows = [("key", "value")] + [(k, v) for k, v in data.items() if not isinstance(v, (dict, list))]
        return _csv(rows)
    return text


def _schedule_rows(instance, sched):
    rows = [("processor", "speed", "tasks", "load", "finish")]
    for p in range(instance.m):
        tasks = " ".join(str(i + 1) for i in sched.tasks_on(p))
        rows.append((p + 1, instance.speeds[p], tasks, sched.loads[p], sched.finish_times[p]))
    return rows


def _schedule_text(title: str, rows, makespan: float) -> str:
    lines = [title]
    for p, s, tasks, load, finish in rows[1:]:
        lines.append(f"  p{p}  s={s:.6f}  tasks=[{tasks}]  load={load:.6f}  finish={finish:.6f}")
    lines.append(f"makespan {makespan:.6f}")
    return "\n".join(lines) + "\n"


# -- subcommands --------------------------------------------------------------

def cmd_validate(args) -> tuple[str, int]:
    from .model import parse_instance
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    try:
        inst = parse_instance(text)
    except InstanceError as exc:
        return _emit(args.format, {"ok": False, "errors": str(exc)}, f"invalid: {exc}\n"), 1
    return _emit(args.format, {"ok": True, "m": inst.m, "n": inst.n}, f"ok: m={inst.m} n={inst.n}\n"), 0


def cmd_lpt(args) -> tuple[str, int]:
    inst = load_instance(args.file)
    sched = lpt_schedule(inst)
    rows = _schedule_rows(inst, sched)
    data = {
        "assignment": [p + 1 for p in sched.assignment],
        "loads": list(sched.loads),
        "finish_times": list(sched.finish_times),
        "makespan": sched.makespan,
    }
    return _emit(args.format, data, _schedule_text("LPT schedule", rows, sched.makespan), rows), 0


def cmd_opt(args) -> tuple[str, int]:
    inst = load_instance(args.file)
    if args.method == "enumerate":
        result = opt_enumerate(inst, args.cap)
    else:
        result = opt_bnb(inst, args.node_budget)
    sched_rows = [("processor", "speed", "tasks", "load", "finish")]
    for p in range(inst.m):
        tasks = " ".join(str(i + 1) for i in result.tasks_on(p))
        sched_rows.append((p + 1, inst.speeds[p], tasks, result.loads[p], result.loads[p] / inst.speeds[p]))
    status = "optimal" if result.proven else "UNPROVEN (node budget exhausted; best incumbent shown)"
    text = _schedule_text(f"{status} witness ({result.nodes_explored} nodes)", sched_rows, result.makespan)
    data = {
        "makespan": result.makespan,
        "proven": result.proven,
        "assignment": [p + 1 for p in result.assignment],
        "loads": list(result.loads),
        "nodes_explored": result.nodes_explored,
    }
    return _emit(args.format, data, text, sched_rows), 0 if result.proven else 1


def cmd_ratio(args) -> tuple[str, int]:
    inst = load_instance(args.file)
    rep = approx_ratio(inst, args.node_budget)
    text = (
        f"LPT {rep.lpt:.6f}  OPT {rep.opt:.6f}\n"
        f"ratio {_fraction_hint(rep.ratio)}{rep.ratio:.6f}\n"
        + (f"rho_{rep.m} {rep.rho_m:.6f}  " if rep.rho_m is not None else "")
        + f"GIS 2m/(m+1) {rep.gis_bound:.6f}  Graham 4/3-1/(3m) {rep.graham_bound:.6f}\n"
    )
    return _emit(args.format, rep.as_dict(), text), 0


def cmd_rho(args) -> tuple[str, int]:
    ms = range(1, args.m + 1) if args.table else [args.m]
    rows = [("m", "rho_m", "graham", "gis")] + [(m, rho(m), graham_bound(m), gis_bound(m)) for m in ms]
    if args.table:
        text = "  m   rho_m     4/3-1/(3m)  2m/(m+1)\n" + "".join(
            f"{m:>3}   {r:.6f}  {g:.6f}    {b:.6f}\n" for m, r, g, b in rows[1:]
        )
        data = {"table": [{"m": m, "rho": r, "graham": g, "gis": b} for m, r, g, b in rows[1:]]}
    else:
        text = f"{rho(args.m):.6f}\n"
        data = {"m": args.m, "rho": rho(args.m)}
    return _emit(args.format, data, text, rows), 0


def cmd_gen_worst(args) -> tuple[str, int]:
    inst = generate_gis_instance(args.m)
    text = serialize_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return f"wrote {args.output}\n", 0
    return text, 0


def cmd_search(args) -> tuple[str, int]:
    config = SearchConfig(
        m=args.m, n_max=args.n_max, n_min=args.n_min, restarts=args.restarts,
        steps_per_restart=args.steps, step_scale=args.step_scale, seed=args.seed,
        solver_node_budget=args.node_budget, seed_gis=args.seed_gis, workers=args.workers,
    )
    res = search_worst(config)
    exceeded = res.best_ratio > res.ratio_bound + args.tol
    inst = res.best_instance
    text = (
        f"best ratio {res.best_ratio:.9f} (restart {res.best_restart})\n"
        f"rho_{args.m}      {res.ratio_bound:.9f}\n"
        f"exceeded   {exceeded}\n"
        f"evaluated  {res.instances_evaluated} (skipped {res.skipped})\n"
        f"speeds     {', '.join(f'{s:.6f}' for s in inst.speeds)}\n"
        f"tasks      {', '.join(f'{t:.6f}' for t in inst.sizes)}\n"
    )
    data = res.as_dict() | {"exceeded": exceeded, "tolerance": args.tol}
    return _emit(args.format, data, text), 1 if exceeded else 0


def cmd_ceiling(args) -> tuple[str, int]:
    rep = ratio_ceiling_check(args.m, args.n, args.samples, seed=args.seed)
    ok = rep.max_ratio <= rep.bound + args.tol
    text = (
        f"m={rep.m} n={rep.n} samples={rep.samples} solved={rep.solved} skipped={rep.skipped}\n"
        f"max ratio {rep.max_ratio:.9f}  rho_{rep.m} {rep.bound:.9f}  {'ok' if ok else 'EXCEEDED'}\n"
    )
    data = rep.as_dict() | {"ok": ok, "tolerance": args.tol}
    return _emit(args.format, data, text), 0 if ok else 1


def cmd_certify(args) -> tuple[str, int]:
    rep = certify(load_instance(args.file), args.node_budget)
    rho_text = "n/a" if rep.rho_I is None else f"{rep.rho_I:.6f}"
    lines = [f"verdict {rep.verdict}", f"rho_I   {rho_text}"]
    lines += [f"  {c.status:<12} {c.name:<20} {c.detail}" for c in rep.conditions]
    rows = [("name", "status", "detail")] + [(c.name, c.status, c.detail) for c in rep.conditions]
    return _emit(args.format, rep.as_dict(), "\n".join(lines) + "\n", rows), 0


def cmd_verify(args) -> tuple[str, int]:
    def echo(line: str) -> None:
        # text mode streams each line as its criterion finishes
        args.stdout.write(line + "\n")
        args.stdout.flush()

    results = acceptance.run_acceptance(args.level, args.seed, echo=echo if args.format == "text" else None)
    failed = [r for r in results if not r.passed]
    data = {
        "level": args.level,
        "passed": not failed,
        "criteria": [{"key": r.key, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    rows = [("key", "name", "passed", "detail")] + [(r.key, r.name, r.passed, r.detail) for r in results]
    text = f"{len(results) - len(failed)}/{len(results)} criteria passed\n"
    return _emit(args.format, data, text, rows), 1 if failed else 0


# -- parser -------------------------------------------------------------------

def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol", type=_positive_float, default=EXCEED_TOL, help="slack allowed above rho_m")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    parser = argparse.ArgumentParser(prog="uniform-lpt", description="LPT on uniform processors: schedules, optima, tight ratios.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lpt", parents=[common], help="LPT schedule and makespan")
    p.add_argument("file")
    p.set_defaults(func=cmd_lpt)

    p = sub.add_parser("opt", parents=[common, budget], help="exact optimum and witness")
    p.add_argument("file")
    p.add_argument("--method", choices=("bnb", "enumerate"), default="bnb")
    p.add_argument("--cap", type=int, default=ENUMERATION_CAP)
    p.set_defaults(func=cmd_opt)

    p = sub.add_parser("ratio", parents=[common, budget], help="LPT/OPT with reference bounds")
    p.add_argument("file")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("rho", parents=[common], help="root of 2x^m - x^(m-1) - ... - x - 2")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--table", action="store_true", help="print m = 1..M with both classical bounds")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("gen-worst", help="emit the tight m-processor instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_worst, format="text")

    p = sub.add_parser("search", parents=[common, budget, tol], help="hill-climb for high-ratio instances")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--step-scale", type=float, default=0.2)
    p.add_argument("--seed", type=int)
    p.add_argument("--seed-gis", action="store_true", help="start restart 0 from the tight instance")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search, node_budget=200_000)

    p = sub.add_parser("ceiling", parents=[common, tol], help="max ratio over random instances")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_ceiling)

    p = sub.add_parser("certify", parents=[common, budget], help="check necessary conditions for minimality")
    p.add_argument("file")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.stdout = stdout
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        out, code = args.func(args)
    except (UsageError, InstanceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except SolverRefusal as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
