"""Model-space comparison quantities for the quaternionic space forms.

Distance Laplacian, Hessian block bounds, area density, ball volume,
volume-ratio monotonicity, and the first-eigenvalue constants.  The
curvature scale delta is -1 (quaternionic hyperbolic), 0 (flat), or +1
(quaternionic projective, where the cot barrier pole at pi/2 is the
diameter bound).

Note on the flat case: summing the block barriers themselves (3/t for
the line block plus 4/t per transversal block) gives (4n-1)/t, which
also matches flat R^{4n}; the sometimes-quoted coefficient (4n-3) is
treated as an erratum, and both values are surfaced by the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import quad

from .forms import ContractViolation
from .riccati import (
    ComparisonFunction,
    DomainError,
    line_block_problem,
    riccati_barrier,
    transversal_block_problem,
)


@dataclass(frozen=True)
class ModelGeometry:
    """Quaternionic model space of real dimension 4n with curvature scale delta."""

    n: int
    delta: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ContractViolation(f"need n >= 2, got n={self.n}")
        if self.delta not in (-1, 0, 1):
            raise ContractViolation(f"delta must be -1, 0, or +1, got {self.delta}")

    @property
    def dim(self) -> int:
        return 4 * self.n

    def line_barrier(self) -> ComparisonFunction:
        return riccati_barrier(line_block_problem(self.delta))

    def transversal_barrier(self) -> ComparisonFunction:
        return riccati_barrier(transversal_block_problem(self.delta))

    def domain_check(self, r: float) -> None:
        if r <= 0:
            raise DomainError(f"need r > 0, got r={r}")
        if self.delta == 1 and r >= math.pi / 2:
            raise DomainError(
                f"delta=+1 model has diameter pi/2; got r={r}")


def hessian_block_bounds(g: ModelGeometry, r: float) -> tuple[float, float]:
    """(line-block bound, transversal-block bound) for the distance Hessian.

    (6 coth 2r, 4 coth r) for delta=-1, (3/r, 4/r) for delta=0, and
    (6 cot 2r, 4 cot r) for delta=+1."""
    g.domain_check(r)
    return g.line_barrier()(r), g.transversal_barrier()(r)


def laplacian_distance(g: ModelGeometry, r: float) -> float:
    """Model value of the distance Laplacian: one line block plus n-1
    transversal blocks."""
    line, transversal = hessian_block_bounds(g, r)
    return line + (g.n - 1) * transversal


def flat_laplacian_coefficient(n: int) -> int:
    """Derived delta=0 coefficient: Delta r = (4n-1)/r."""
    return 4 * n - 1


def flat_laplacian_coefficient_printed(n: int) -> int:
    """The printed (erratum) delta=0 coefficient 4n-3, kept for reporting."""
    return 4 * n - 3


def area_density(g: ModelGeometry, r: float) -> float:
    """Density J(r), normalized so J ~ r^{4n-1} as r -> 0.

    delta=-1: (sinh 2r / 2)^3 sinh^{4(n-1)} r; delta=+1 with sin in
    place of sinh; delta=0: r^{4n-1}.  Satisfies (log J)' = Delta r."""
    g.domain_check(r)
    k = 4 * (g.n - 1)
    if g.delta == 0:
        return r ** (4 * g.n - 1)
    if g.delta == -1:
        return (math.sinh(2 * r) / 2) ** 3 * math.sinh(r) ** k
    return (math.sin(2 * r) / 2) ** 3 * math.sin(r) ** k


def sphere_area_constant(n: int) -> float:
    """Area of the unit sphere in R^{4n}: 2 pi^{2n} / Gamma(2n)."""
    return 2 * math.pi ** (2 * n) / math.factorial(2 * n - 1)


def volume(g: ModelGeometry, r: float) -> float:
    """Geodesic-ball volume: omega_{4n-1} * integral_0^r J(s) ds.

    Adaptive quadrature at relative tolerance 1e-8 or better."""
    g.domain_check(r)
    val, _err = quad(lambda s: area_density(g, s), 0.0, r,
                     epsabs=0.0, epsrel=1e-10, limit=200)
    return sphere_area_constant(g.n) * val


@dataclass(frozen=True)
class VolumeRatioResult:
    holds: bool
    hypothesis_ok: bool
    ratio: float
    model_ratio: float

    def __bool__(self) -> bool:
        return self.holds


RATIO_TOLERANCE = 1e-8


def volume_ratio_check(density, g: ModelGeometry, r1: float, r2: float,
                       hypothesis_samples: int = 64) -> VolumeRatioResult:
    """Check V(r2)/V(r1) <= V_model(r2)/V_model(r1) for an integrated density.

    The comparison hypothesis density/J nonincreasing is verified on a
    sample grid; a violation is flagged but the ratio check still runs."""
    if not 0 < r1 <= r2:
        raise ContractViolation(f"need 0 < r1 <= r2, got r1={r1}, r2={r2}")
    hypothesis_ok = True
    prev = None
    for i in range(hypothesis_samples):
        r = r1 / 2 + (r2 - r1 / 2) * i / (hypothesis_samples - 1)
        q = density(r) / area_density(g, r)
        if prev is not None and q > prev * (1 + 1e-12) + 1e-300:
            hypothesis_ok = False
        prev = q

    def integral(f, a, b):
        val, _ = quad(f, a, b, epsabs=0.0, epsrel=1e-10, limit=200)
        return val

    v1 = integral(density, 0.0, r1)
    v2 = integral(density, 0.0, r2)
    m1 = integral(lambda s: area_density(g, s), 0.0, r1)
    m2 = integral(lambda s: area_density(g, s), 0.0, r2)
    ratio = v2 / v1
    model_ratio = m2 / m1
    holds = ratio <= model_ratio * (1 + RATIO_TOLERANCE)
    return VolumeRatioResult(holds, hypothesis_ok, ratio, model_ratio)


@dataclass(frozen=True)
class EigenvalueBounds:
    """lambda_1 upper bounds: the quaternionic value with its real and
    Kahler reference constants."""

    quaternionic: int
    real_cheng: Fraction
    kahler_reference: Fraction


def eigenvalue_bounds(n: int) -> EigenvalueBounds:
    """(2n+1)^2 against Cheng's bound rescaled to Ric >= -4(n+2), and the
    Kahler reference n^2 (complex dimension n).

    Cheng in dimension d with Ric >= -(d-1) gives (d-1)^2/4; rescaling
    the curvature normalization to Ric >= -4(n+2) multiplies it by
    4(n+2)/(4n-1), which yields (4n-1)(n+2)."""
    if n < 2:
        raise ContractViolation(f"need n >= 2, got n={n}")
    cheng = Fraction((4 * n - 1) ** 2, 4) * Fraction(4 * (n + 2), 4 * n - 1)
    return EigenvalueBounds((2 * n + 1) ** 2, cheng, Fraction(n * n))
