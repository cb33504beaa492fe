import pytest

from conftest import M, tiny
from sgc.errors import (
    HardGoalUnsatisfied,
    InapplicableAt,
    InvalidTask,
    InvalidUtility,
    NegativeCost,
    UnknownAction,
    UnknownFluent,
)
from sgc.model import GroundAction, GroundTask, SoftGoalTask, is_plan, plan_cost, plan_utility, run


def test_tiny_cost_and_utility():
    task = tiny()
    assert plan_cost(task.base, ("a1", "a2")) == 3 * M
    # p and q hold at the end: 3 + 5 - 3
    assert plan_utility(task, ("a1", "a2")) == 5 * M
    assert plan_utility(task, ("a1",)) == 2 * M
    assert plan_utility(task, ()) == 0


def test_run_records_every_state():
    traj = run(tiny().base, ("a1", "a2"))
    assert traj.states == (frozenset("r"), frozenset("pr"), frozenset("pq"))
    assert traj.final == frozenset("pq")


def test_inapplicable_step_is_reported():
    with pytest.raises(InapplicableAt) as e:
        run(tiny().base, ("a2",))
    assert e.value.index == 0
    assert set(e.value.missing) == {"p"}


def test_hard_goal_gates_utility():
    task = tiny(goal={"q"})
    assert not is_plan(task.base, ("a1",))
    assert is_plan(task.base, ("a1", "a2"))
    with pytest.raises(HardGoalUnsatisfied):
        plan_utility(task, ("a1",))


def test_unknown_action():
    with pytest.raises(UnknownAction):
        plan_cost(tiny().base, ("nosuch",))


def test_negative_cost_rejected():
    with pytest.raises(NegativeCost):
        GroundAction("a", cost=-1)


def test_add_delete_overlap_rejected():
    with pytest.raises(InvalidTask):
        GroundAction("a", add={"p"}, delete={"p"})


def test_undeclared_fluent_rejected():
    with pytest.raises(UnknownFluent):
        GroundTask(("p",), frozenset({"x"}), ())
    with pytest.raises(UnknownFluent):
        SoftGoalTask(tiny().base, {"x": M})


@pytest.mark.parametrize("u", [0, -M])
def test_soft_goal_utility_must_be_positive(u):
    with pytest.raises(InvalidUtility):
        SoftGoalTask(tiny().base, {"p": u})


def test_duplicate_names_rejected():
    with pytest.raises(InvalidTask):
        GroundTask(("p", "p"), frozenset(), ())
    with pytest.raises(InvalidTask):
        GroundTask(("p",), frozenset(), (GroundAction("a"), GroundAction("a")))


def test_negative_precondition():
    a = GroundAction("a", neg_pre={"p"}, add={"q"})
    assert a.applicable(frozenset())
    assert not a.applicable(frozenset({"p"}))
    assert a.missing(frozenset({"p"})) == {"not p"}
