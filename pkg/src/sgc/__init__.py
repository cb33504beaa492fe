"""Compile soft goals (net-benefit planning) into cost-optimal classical planning."""

from .amount import SCALE, amount, format_amount
from .compiler import CompilationReport, compile_softgoals, compile_task
from .errors import SGCError
from .grounding import ground
from .logic import Formula, Literal, negate_formula
from .lowering import lower_all
from .model import GroundAction, GroundTask, SoftGoalTask, is_plan, plan_cost, plan_utility, run
from .native import read_native, write_native
from .negation import complete_negations
from .pddl import parse_domain, parse_problem, print_ground_task, print_task
from .planmap import check_cost_identity, extend_plan, strip_plan
from .plans import parse_plan, write_plan
from .search import check_equivalence, solve_max_utility_bruteforce, solve_min_cost

__all__ = [
    "SCALE",
    "CompilationReport",
    "Formula",
    "GroundAction",
    "GroundTask",
    "Literal",
    "SGCError",
    "SoftGoalTask",
    "amount",
    "check_cost_identity",
    "check_equivalence",
    "compile_softgoals",
    "compile_task",
    "complete_negations",
    "extend_plan",
    "format_amount",
    "ground",
    "is_plan",
    "lower_all",
    "negate_formula",
    "parse_domain",
    "parse_plan",
    "parse_problem",
    "plan_cost",
    "plan_utility",
    "print_ground_task",
    "print_task",
    "read_native",
    "run",
    "solve_max_utility_bruteforce",
    "solve_min_cost",
    "strip_plan",
    "write_native",
    "write_plan",
]
