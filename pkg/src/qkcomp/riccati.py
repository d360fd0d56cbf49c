"""Closed-form Riccati barriers and a certifying fixed-step integrator.

The normal form is u' + u^2/m + m K <= 0 with u(t) ~ m/t as t -> 0+.
The two instances that occur are (m=3, K=4*delta) for the quaternionic
line block and (m=4, K=delta) for each transversal block.  The equality
solutions are

    K > 0:  m sqrt(K)  cot(sqrt(K) t)     on (0, pi/sqrt(K))
    K = 0:  m / t
    K < 0:  m sqrt(-K) coth(sqrt(-K) t)

and they dominate every sub-solution with the same initial asymptote.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .forms import ContractViolation

Rational = Fraction | int


class DomainError(ValueError):
    """Argument outside the function's domain of validity."""


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        raise ValueError("negative argument")
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class RiccatiProblem:
    """Block weight m > 0 and curvature constant K of the normal form."""

    m: Fraction
    K: Fraction

    def __post_init__(self) -> None:
        if self.m <= 0:
            raise ContractViolation(f"block weight must be positive, got {self.m}")

    def rhs(self, u: float) -> float:
        """Right side of the equality ODE u' = -u^2/m - m K."""
        return -u * u / float(self.m) - float(self.m) * float(self.K)


@dataclass(frozen=True)
class ComparisonFunction:
    """Closed-form barrier with exact parameters where the frequency is rational.

    kind is one of "cot", "coth", "reciprocal"; b_squared = |K| exactly,
    and b/a are exact Fractions whenever sqrt(|K|) is rational (all the
    cases the theory needs: K in {0, +-1, +-4}).
    """

    kind: str
    m: Fraction
    K: Fraction
    b_squared: Fraction
    b_exact: Fraction | None

    @property
    def frequency(self) -> float:
        return float(self.b_exact) if self.b_exact is not None \
            else math.sqrt(float(self.b_squared))

    @property
    def amplitude(self) -> float:
        return float(self.m) * self.frequency

    @property
    def pole(self) -> float | None:
        """First barrier pole (cot only): t = pi / b."""
        if self.kind == "cot":
            return math.pi / self.frequency
        return None

    def domain_check(self, t: float) -> None:
        if t <= 0:
            raise DomainError(f"barrier domain is t > 0, got t={t}")
        pole = self.pole
        if pole is not None and t >= pole:
            raise DomainError(f"cot barrier valid on (0, {pole:.6g}), got t={t}")

    def __call__(self, t: float) -> float:
        self.domain_check(t)
        if self.kind == "reciprocal":
            return float(self.m) / t
        b = self.frequency
        a = self.amplitude
        if self.kind == "coth":
            return a / math.tanh(b * t)
        return a / math.tan(b * t)

    def derivative(self, t: float) -> float:
        self.domain_check(t)
        if self.kind == "reciprocal":
            return -float(self.m) / (t * t)
        b = self.frequency
        a = self.amplitude
        if self.kind == "coth":
            s = math.sinh(b * t)
            return -a * b / (s * s)
        s = math.sin(b * t)
        return -a * b / (s * s)

    def symbolic_residual(self) -> dict[str, Fraction]:
        """Exact coefficients of u' + u^2/m + m K in the natural basis.

        The residual is a linear combination of {1, c^2} with c the
        transcendental of the branch (coth(bt), cot(bt), or 1/t); only
        b^2 = |K| enters, so the coefficients are exact rationals even
        when b itself is irrational.  Both must vanish for the equality
        solution.
        """
        m, K, b2 = self.m, self.K, self.b_squared
        if self.kind == "reciprocal":
            # u = m/t: u' = -m/t^2, u^2/m = m/t^2
            return {"t^-2": Fraction(0), "1": m * K}
        # a = m b: u' = -+ a b (c^2 -+ 1), u^2/m = m b^2 c^2
        if self.kind == "coth":
            return {"coth^2": -m * b2 + m * b2, "1": m * b2 + m * K}
        return {"cot^2": -m * b2 + m * b2, "1": -m * b2 + m * K}

    def is_exact_solution(self) -> bool:
        return all(c == 0 for c in self.symbolic_residual().values())


def riccati_barrier(p: RiccatiProblem) -> ComparisonFunction:
    """The equality solution of u' + u^2/m + m K = 0 with u ~ m/t at 0."""
    K = Fraction(p.K)
    m = Fraction(p.m)
    if K == 0:
        return ComparisonFunction("reciprocal", m, K, Fraction(0), Fraction(0))
    b2 = abs(K)
    kind = "cot" if K > 0 else "coth"
    return ComparisonFunction(kind, m, K, b2, rational_sqrt(b2))


@dataclass(frozen=True)
class Trajectory:
    ts: tuple[float, ...]
    us: tuple[float, ...]
    truncated: bool

    def final(self) -> tuple[float, float]:
        return self.ts[-1], self.us[-1]


BLOWUP_LIMIT = 1.0e9


def integrate_riccati(p: RiccatiProblem, u0: float, t0: float, t1: float,
                      steps: int) -> Trajectory:
    """Classical fixed-step RK4 for the equality ODE u' = -u^2/m - m K.

    Solutions starting at or below the barrier stay below it; they may
    reach -infinity in finite time, in which case the trajectory is
    truncated and flagged."""
    if t0 <= 0:
        raise ContractViolation(f"need t0 > 0, got {t0}")
    if steps < 100:
        raise ContractViolation(f"need at least 100 steps, got {steps}")
    barrier = riccati_barrier(p)
    if u0 > barrier(t0):
        raise ContractViolation(
            f"u0={u0} starts above the barrier {barrier(t0)} at t0={t0}")
    h = (t1 - t0) / steps
    ts = [t0]
    us = [u0]
    t, u = t0, u0
    truncated = False
    for _ in range(steps):
        k1 = p.rhs(u)
        k2 = p.rhs(u + 0.5 * h * k1)
        k3 = p.rhs(u + 0.5 * h * k2)
        k4 = p.rhs(u + h * k3)
        u = u + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t + h
        if not math.isfinite(u) or abs(u) > BLOWUP_LIMIT:
            truncated = True
            break
        ts.append(t)
        us.append(u)
    return Trajectory(tuple(ts), tuple(us), truncated)


def line_block_problem(delta: int) -> RiccatiProblem:
    """m = 3, K = 4 delta: the quaternionic line block of the Hessian."""
    return RiccatiProblem(Fraction(3), Fraction(4 * delta))


def transversal_block_problem(delta: int) -> RiccatiProblem:
    """m = 4, K = delta: one transversal quaternionic block."""
    return RiccatiProblem(Fraction(4), Fraction(delta))
