"""Radial Sturm-Liouville estimation of the bottom of the spectrum.

The radial problem is -(1/w)(w u')' = lambda u on (r_min, r_max) with
Dirichlet conditions at both ends and weight w(r) = J(r), the
quaternionic-hyperbolic area density.  Second-order finite differences
give a symmetric tridiagonal generalized problem A u = lambda B u whose
smallest eigenvalue is found by inverse iteration (banded Cholesky
factorization reused across solves).  Dirichlet truncation means every
estimate sits strictly above the limit value (2n+1)^2 and decreases as
r_max grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

from .comparison import ModelGeometry, area_density
from .forms import ContractViolation


class ConvergenceError(RuntimeError):
    """Inverse iteration failed to reach the residual target."""

    def __init__(self, message: str, last_estimate: float):
        super().__init__(message)
        self.last_estimate = last_estimate


@dataclass(frozen=True)
class RadialProblem:
    """Mesh and weight of one radial Dirichlet problem."""

    n: int
    r_min: float = 1e-3
    r_max: float = 12.0
    mesh_points: int = 20000
    weight: Callable[[float], float] | None = None

    def __post_init__(self) -> None:
        if not self.r_min < self.r_max:
            raise ContractViolation("need r_min < r_max")
        if self.r_min <= 0:
            raise ContractViolation("need r_min > 0")
        if self.mesh_points < 64:
            raise ContractViolation("need at least 64 mesh points")

    def weight_fn(self) -> Callable[[float], float]:
        if self.weight is not None:
            return self.weight
        g = ModelGeometry(self.n, -1)
        return lambda r: area_density(g, r)

    @property
    def target(self) -> int:
        return (2 * self.n + 1) ** 2


@dataclass(frozen=True)
class SpectralEstimate:
    lambda1: float
    residual: float
    mesh_points: int
    r_max: float
    iterations: int


def _assemble(p: RadialProblem):
    """Symmetric tridiagonal A (flux form) and diagonal B on interior nodes."""
    m = p.mesh_points
    h = (p.r_max - p.r_min) / m
    w = p.weight_fn()
    nodes = p.r_min + h * np.arange(m + 1)
    half = p.r_min + h * (np.arange(m) + 0.5)
    w_half = np.array([w(r) for r in half])
    w_node = np.array([w(r) for r in nodes[1:m]])
    diag = (w_half[:-1] + w_half[1:]) / (h * h)
    off = -w_half[1:-1] / (h * h)
    return diag, off, w_node, h


MAX_ITERATIONS = 10_000
RESIDUAL_TARGET = 1e-8


def lambda1_dirichlet(p: RadialProblem) -> SpectralEstimate:
    """Smallest generalized eigenvalue by inverse iteration.

    The assembled tridiagonal system is exactly symmetric; the banded
    Cholesky factor is computed once and reused every iteration."""
    diag, off, w_node, _h = _assemble(p)
    size = diag.shape[0]
    ab = np.zeros((2, size))
    ab[0, 1:] = off
    ab[1, :] = diag
    factor = cholesky_banded(ab)

    def matvec(x: np.ndarray) -> np.ndarray:
        y = diag * x
        y[:-1] += off * x[1:]
        y[1:] += off * x[:-1]
        return y

    x = np.ones(size)
    x /= math.sqrt(float(x @ (w_node * x)))
    lam = 0.0
    for it in range(1, MAX_ITERATIONS + 1):
        y = cho_solve_banded((factor, False), w_node * x)
        bnorm = math.sqrt(float(y @ (w_node * y)))
        y /= bnorm
        ay = matvec(y)
        by = w_node * y
        lam = float(y @ ay) / float(y @ by)
        residual = float(np.linalg.norm(ay - lam * by)) / float(np.linalg.norm(by))
        x = y
        if residual <= RESIDUAL_TARGET:
            return SpectralEstimate(lam, residual, p.mesh_points, p.r_max, it)
    raise ConvergenceError(
        f"no convergence after {MAX_ITERATIONS} iterations "
        f"(last estimate {lam})", lam)


def discrete_rayleigh(p: RadialProblem, u: np.ndarray) -> float:
    """Rayleigh quotient of a vector on the interior nodes."""
    diag, off, w_node, _h = _assemble(p)
    y = diag * u
    y[:-1] += off * u[1:]
    y[1:] += off * u[:-1]
    return float(u @ y) / float(u @ (w_node * u))


def rayleigh_quotient(p: RadialProblem, trial: Callable[[float], float],
                      trial_derivative: Callable[[float], float] | None = None
                      ) -> float:
    """integral (u')^2 w / integral u^2 w by Simpson quadrature on the mesh.

    An upper bound for the truncated problem's lambda_1; the trial must
    vanish at r_max."""
    m = p.mesh_points if p.mesh_points % 2 == 0 else p.mesh_points + 1
    h = (p.r_max - p.r_min) / m
    rs = p.r_min + h * np.arange(m + 1)
    w = p.weight_fn()
    ws = np.array([w(r) for r in rs])
    us = np.array([trial(r) for r in rs])
    if abs(us[-1]) > 1e-12 * (np.max(np.abs(us)) or 1.0):
        raise ContractViolation("trial function must vanish at r_max")
    if trial_derivative is not None:
        dus = np.array([trial_derivative(r) for r in rs])
    else:
        dus = np.gradient(us, rs, edge_order=2)

    def simpson(vals: np.ndarray) -> float:
        return float(h / 3 * (vals[0] + vals[-1] + 4 * vals[1:-1:2].sum()
                              + 2 * vals[2:-1:2].sum()))

    num = simpson(dus * dus * ws)
    den = simpson(us * us * ws)
    if den <= 0:
        raise ContractViolation("trial function has no mass against the weight")
    return num / den


def convergence_study(n: int, r_max_list: list[float],
                      mesh: int) -> list[dict]:
    """Dirichlet estimates at fixed mesh density over growing r_max."""
    if any(b <= a for a, b in zip(r_max_list, r_max_list[1:])):
        raise ContractViolation("r_max_list must be increasing")
    r_min = 1e-3
    density = (max(r_max_list) - r_min) / mesh
    rows = []
    target = (2 * n + 1) ** 2
    for r_max in r_max_list:
        points = max(64, round((r_max - r_min) / density))
        est = lambda1_dirichlet(RadialProblem(n, r_min, r_max, points))
        rows.append({
            "r_max": r_max,
            "mesh": points,
            "lambda1": est.lambda1,
            "target": target,
            "gap": est.lambda1 - target,
        })
    return rows
