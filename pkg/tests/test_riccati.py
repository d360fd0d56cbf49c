"""Riccati barriers: closed forms, exact residuals, and the comparison
principle for the certifying integrator."""

import math
from fractions import Fraction as F

import pytest

from qkcomp.forms import ContractViolation
from qkcomp.riccati import (
    DomainError,
    RiccatiProblem,
    integrate_riccati,
    line_block_problem,
    rational_sqrt,
    riccati_barrier,
    transversal_block_problem,
)


def test_barrier_forms_match_the_displayed_bounds():
    b = riccati_barrier(line_block_problem(-1))
    assert b.kind == "coth" and b.amplitude == 6.0 and b.frequency == 2.0
    b = riccati_barrier(transversal_block_problem(-1))
    assert b.kind == "coth" and b.amplitude == 4.0 and b.frequency == 1.0
    b = riccati_barrier(line_block_problem(0))
    assert b.kind == "reciprocal"
    assert b(2.0) == 1.5
    b = riccati_barrier(transversal_block_problem(0))
    assert b(2.0) == 2.0
    b = riccati_barrier(line_block_problem(1))
    assert b.kind == "cot" and b.amplitude == 6.0 and b.frequency == 2.0
    b = riccati_barrier(transversal_block_problem(1))
    assert b.kind == "cot" and b.amplitude == 4.0 and b.frequency == 1.0


@pytest.mark.parametrize("delta", [-1, 0, 1])
@pytest.mark.parametrize("block", [line_block_problem, transversal_block_problem])
def test_symbolic_residual_vanishes(block, delta):
    barrier = riccati_barrier(block(delta))
    assert barrier.is_exact_solution()
    assert all(v == 0 for v in barrier.symbolic_residual().values())


def test_symbolic_residual_nonzero_for_wrong_flat_constant():
    # m/t solves the K=0 equation only; with K != 0 the constant term survives
    from qkcomp.riccati import ComparisonFunction

    wrong = ComparisonFunction("reciprocal", F(3), F(-4), F(0), F(0))
    assert wrong.symbolic_residual()["1"] == -12


def test_floating_residual_on_grid():
    for prob in (line_block_problem(-1), transversal_block_problem(-1)):
        barrier = riccati_barrier(prob)
        for t in (0.5, 1.0, 2.0):
            resid = (barrier.derivative(t) + barrier(t) ** 2 / float(prob.m)
                     + float(prob.m * prob.K))
            assert abs(resid) <= 1e-12


def test_equality_solution_tracked_to_1e8():
    prob = line_block_problem(-1)
    barrier = riccati_barrier(prob)
    traj = integrate_riccati(prob, barrier(0.1), 0.1, 3.0, steps=10000)
    assert not traj.truncated
    worst = max(abs(u - barrier(t)) for t, u in zip(traj.ts, traj.us))
    assert worst <= 1e-8


def test_flat_equality_solution():
    prob = transversal_block_problem(0)
    traj = integrate_riccati(prob, 4.0 / 0.5, 0.5, 4.0, steps=5000)
    worst = max(abs(u - 4.0 / t) for t, u in zip(traj.ts, traj.us))
    assert worst <= 1e-8


def test_comparison_principle_oracle_high_resolution():
    # one trajectory checked against the barrier at oracle step count 1e5
    prob = line_block_problem(-1)
    barrier = riccati_barrier(prob)
    traj = integrate_riccati(prob, barrier(0.1) - 0.5, 0.1, 3.0, steps=100000)
    assert all(u <= barrier(t) + 1e-6 for t, u in zip(traj.ts, traj.us))
    # sub-barrier solutions converge up toward the barrier (whose limit is
    # the asymptote 6) without ever crossing it
    assert 5.9 <= traj.us[-1] <= barrier(3.0)


def test_deep_substart_blows_down_and_truncates():
    prob = line_block_problem(-1)
    traj = integrate_riccati(prob, -60.0, 0.2, 3.0, steps=5000)
    assert traj.truncated
    assert traj.us[-1] < 0


def test_integrator_preconditions():
    prob = line_block_problem(-1)
    barrier = riccati_barrier(prob)
    with pytest.raises(ContractViolation):
        integrate_riccati(prob, barrier(0.5) + 1.0, 0.5, 2.0, steps=1000)
    with pytest.raises(ContractViolation):
        integrate_riccati(prob, 0.0, -0.5, 2.0, steps=1000)
    with pytest.raises(ContractViolation):
        integrate_riccati(prob, 0.0, 0.5, 2.0, steps=10)


def test_cot_barrier_domain():
    barrier = riccati_barrier(line_block_problem(1))
    assert barrier.pole == pytest.approx(math.pi / 2)
    barrier(0.7)
    with pytest.raises(DomainError):
        barrier(math.pi / 2)
    with pytest.raises(DomainError):
        barrier(-1.0)


def test_problem_validation():
    with pytest.raises(ContractViolation):
        RiccatiProblem(F(0), F(1))


def test_rational_sqrt():
    assert rational_sqrt(F(4)) == 2
    assert rational_sqrt(F(1, 4)) == F(1, 2)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(0)) == 0
