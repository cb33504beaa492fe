from pathlib import Path

from sgc.amount import SCALE
from sgc.model import GroundAction, GroundTask, SoftGoalTask

FIXTURES = Path(__file__).parent / "fixtures"
PDDL = FIXTURES / "pddl"
NATIVE = FIXTURES / "native"
M = SCALE


def tiny(goal=(), utilities=None) -> SoftGoalTask:
    """F={p,q,r}, I={r}; a1: r -> p (cost 1); a2: p -> q, del r (cost 2); u(p)=3, u(q)=5."""
    actions = (
        GroundAction("a1", {"r"}, {"p"}, set(), 1 * M),
        GroundAction("a2", {"p"}, {"q"}, {"r"}, 2 * M),
    )
    base = GroundTask(("p", "q", "r"), frozenset({"r"}), actions, frozenset(goal))
    if utilities is None:
        utilities = {"p": 3 * M, "q": 5 * M}
    return SoftGoalTask(base, utilities)


def pddl_pairs():
    """(domain, problem) paths of the fixture corpus."""
    return [(d, PDDL / d.name.replace("-domain", "-problem")) for d in sorted(PDDL.glob("*-domain.pddl"))]


def _mutate(rng, data: bytes) -> bytes:
    data = bytearray(data)
    for _ in range(rng.randint(1, 8)):
        op = rng.random()
        pos = rng.randrange(len(data) + 1)
        if op < 0.4 and data:
            del data[pos % len(data)]
        elif op < 0.8:
            data.insert(pos, rng.choice(b"()-;: \n?abnot0123456789.\xff"))
        else:
            data[pos:pos] = data[rng.randrange(len(data) + 1):][: rng.randint(1, 20)]
    return bytes(data)


def fuzz_inputs(seed: int, count: int):
    """Random byte strings: half pure noise, half mutated fixture files."""
    import random

    rng = random.Random(seed)
    seeds = [p.read_bytes() for p in sorted(PDDL.glob("*.pddl"))]
    seeds += [p.read_bytes() for p in sorted(NATIVE.glob("*"))]
    for i in range(count):
        if i % 2:
            yield bytes(rng.randrange(256) for _ in range(rng.randint(0, 80)))
        else:
            yield _mutate(rng, rng.choice(seeds))


def parser_crashes(seed: int, count: int) -> list:
    """Inputs on which a parser raised something other than a structured error."""
    from sgc.errors import SGCError
    from sgc.native import read_native
    from sgc.pddl import parse_domain, parse_problem
    from sgc.plans import parse_plan

    domain = parse_domain((PDDL / "logistics-domain.pddl").read_text())
    parsers = [parse_domain, lambda b: parse_problem(b, domain), read_native, parse_plan]
    crashes = []
    for data in fuzz_inputs(seed, count):
        for parse in parsers:
            try:
                parse(data)
            except SGCError:
                pass
            except Exception as e:  # noqa: BLE001 - the point is to catch anything else
                crashes.append((data, repr(e)))
    return crashes


# acceptance criteria report: number -> (passed, detail)
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")
