"""Command-line entry point: ``sgc compile|validate|map-plan|solve|check``.

Exit codes: 0 success, 1 parse or usage error, 2 invalid plan, 3 unsolvable,
4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .amount import format_amount
from .checks import run_checks
from .compiler import ORDERING_POLICIES, CompilationReport, compile_task
from .errors import NameCollision, NotAPlan, ResourceLimit, SGCError, UnknownAction
from .grounding import ground, prune_unreachable
from .lowering import NEGATION_MODES
from .model import RESERVED_PREFIX, GroundTask, SoftGoalTask, plan_cost, plan_utility
from .names import is_reserved
from .native import read_native, write_native
from .pddl import parse_domain, parse_problem, print_ground_task
from .planmap import extend_plan, strip_plan
from .plans import parse_plan, resolve_plan, write_plan
from .search import ALGORITHMS, solve_max_utility_bruteforce, solve_min_cost
from .sexpr import decode

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_UNSOLVABLE = 3
EXIT_LIMIT = 4

BRUTE = "brute"


class UsageError(SGCError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    return decode(Path(path).read_bytes())


def _add_task_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--task", help="native task file")
    p.add_argument("--domain", help="PDDL domain file")
    p.add_argument("--problem", help="PDDL problem file")
    p.add_argument("--prune", action="store_true", help="drop relaxed-unreachable ground actions")
    p.add_argument(
        "--allow-reserved", action="store_true", help=f"accept {RESERVED_PREFIX} names (compiled output)"
    )


def _reject_reserved(task: GroundTask) -> None:
    used = [n for n in task.fluents if is_reserved(n)]
    used += [a.name for a in task.actions if is_reserved(a.name)]
    if used:
        raise NameCollision(
            f"{used[0]!r} uses the reserved prefix {RESERVED_PREFIX}; pass --allow-reserved for compiled tasks"
        )


def _load_task(args) -> tuple[SoftGoalTask, str]:
    """The input task as a soft-goal task, plus the source text for fingerprints."""
    if args.task and (args.domain or args.problem):
        raise UsageError("give either --task or --domain/--problem, not both")
    if args.task:
        text = _read(args.task)
        task = read_native(text)
        if not args.allow_reserved:
            _reject_reserved(task if isinstance(task, GroundTask) else task.base)
        if isinstance(task, GroundTask):
            task = SoftGoalTask(task, {})
        if args.prune:
            task = SoftGoalTask(
                prune_unreachable(task.base), task.fluent_utilities, task.formula_utilities
            )
        return task, text
    if args.domain and args.problem:
        dtext, ptext = _read(args.domain), _read(args.problem)
        domain = parse_domain(dtext, args.allow_reserved)
        lifted = parse_problem(ptext, domain, args.allow_reserved)
        task, _ = ground(lifted, prune=args.prune)
        return task, dtext + ptext
    raise UsageError("a task is required: --task T or --domain D --problem P")


def _load_plan(path: str, task: GroundTask, aliases=None) -> tuple[str, ...]:
    return resolve_plan(task, parse_plan(_read(path)), aliases)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_compile(args) -> int:
    task, source = _load_task(args)
    compiled, report = compile_task(task, args.order, args.negation_mode, source_text=source)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "native":
        (out / "compiled.task").write_text(write_native(compiled), encoding="utf-8")
    else:
        domain, problem, name_map = print_ground_task(compiled, "compiled", "compiled-problem")
        (out / "domain.pddl").write_text(domain, encoding="utf-8")
        (out / "problem.pddl").write_text(problem, encoding="utf-8")
        names_json = json.dumps(name_map, indent=2, sort_keys=True) + "\n"
        (out / "names.json").write_text(names_json, encoding="utf-8")
    (out / "report.json").write_text(report.to_json(), encoding="utf-8")
    print(
        f"compiled {len(compiled.fluents)} fluents, {len(compiled.actions)} actions, "
        f"{len(compiled.goal)} goals; alpha {format_amount(report.alpha)}"
    )
    return EXIT_OK


def cmd_validate(args) -> int:
    task, _ = _load_task(args)
    try:
        plan = _load_plan(args.plan, task.base)
        cost = plan_cost(task.base, plan)
        utility = plan_utility(task, plan)
    except (NotAPlan, UnknownAction) as e:
        print(f"invalid plan: {e}", file=sys.stderr)
        return EXIT_INVALID
    print(f"cost {format_amount(cost)}")
    if args.soft:
        print(f"utility {format_amount(utility)}")
    return EXIT_OK


def cmd_map_plan(args) -> int:
    report = CompilationReport.from_json(_read(args.report))
    aliases = json.loads(_read(args.names)) if args.names else {}
    printed = {v: k for k, v in aliases.items()}
    steps = tuple(aliases.get(s, s) for s in parse_plan(_read(args.plan)))
    if args.direction == "strip":
        mapped = strip_plan(report, steps)
    else:
        task, _ = _load_task(args)
        compiled, fresh = compile_task(task, report.ordering_policy, report.negation_mode)
        if fresh.fingerprints.get("task") != report.fingerprints.get("task"):
            raise UsageError("the report was produced from a different task")
        plan = resolve_plan(task.base, steps)
        mapped = extend_plan(task, compiled, fresh, plan)
    _emit(write_plan([printed.get(s, s) for s in mapped]), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    task, _ = _load_task(args)
    try:
        if args.algo == BRUTE:
            result = solve_max_utility_bruteforce(task, args.max_len)
            doc = dict(result.to_dict(), objective="utility")
        elif not task.fluent_utilities and not task.formula_utilities:
            result = solve_min_cost(task.base, args.algo, args.max_nodes, args.max_seconds)
            doc = dict(result.to_dict(), objective="cost")
        else:
            compiled, report = compile_task(task)
            found = solve_min_cost(compiled, args.algo, args.max_nodes, args.max_seconds)
            plan = value = None
            if found.plan is not None:
                plan = strip_plan(report, found.plan)
                value = report.utility_constant - found.value
            doc = {
                "plan": list(plan) if plan is not None else None,
                "value": format_amount(value) if value is not None else None,
                "expanded": found.expanded,
                "optimal": found.optimal,
                "objective": "utility",
                "compiled_plan": list(found.plan) if found.plan is not None else None,
                "compiled_cost": format_amount(found.value) if found.value is not None else None,
            }
    except ResourceLimit as e:
        print(f"resource limit: {e}", file=sys.stderr)
        print(json.dumps({"plan": None, "expanded": e.expanded, "error": str(e)}, sort_keys=True))
        return EXIT_LIMIT
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK if doc["plan"] is not None else EXIT_UNSOLVABLE


def cmd_check(args) -> int:
    results = run_checks(args.seed, args.instances, args.max_len)
    print(f"{'suite':<28} {'passed':>13}")
    for r in results:
        print(r.line())
        for detail in r.failures[:5]:
            print(f"    {detail}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sgc", description="Compile soft goals into action costs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="compile a soft-goal task into a cost-optimal task")
    _add_task_args(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--format", choices=("pddl", "native"), default="pddl")
    p.add_argument("--order", choices=ORDERING_POLICIES, default=ORDERING_POLICIES[0])
    p.add_argument("--negation-mode", choices=NEGATION_MODES, default=NEGATION_MODES[0])
    p.set_defaults(run=cmd_compile)

    p = sub.add_parser("validate", help="check a plan and print its cost (and utility)")
    _add_task_args(p)
    p.add_argument("--plan", required=True)
    p.add_argument("--soft", action="store_true", help="also print net benefit")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("map-plan", help="extend a plan into the compiled task or strip it back")
    _add_task_args(p)
    p.add_argument("--report", required=True)
    p.add_argument("--direction", choices=("extend", "strip"), required=True)
    p.add_argument("--plan", required=True)
    p.add_argument("--names", help="names.json written next to compiled PDDL")
    p.add_argument("--out")
    p.set_defaults(run=cmd_map_plan)

    p = sub.add_parser("solve", help="solve optimally with a reference search")
    _add_task_args(p)
    p.add_argument("--algo", choices=ALGORITHMS + (BRUTE,), default=ALGORITHMS[0])
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--max-seconds", type=float)
    p.add_argument("--out")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("check", help="run the randomized correctness suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--max-len", type=int, default=5)
    p.set_defaults(run=cmd_check)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "prune", False) and args.command == "map-plan":
            raise UsageError("--prune changes action sets and cannot be used with map-plan")
        return args.run(args)
    except (SGCError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
