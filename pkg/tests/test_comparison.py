"""Model-space comparison quantities: Laplacian, Hessian blocks, area
density, volumes, ratio monotonicity, eigenvalue constants."""

import math
from fractions import Fraction as F

import pytest

from qkcomp.comparison import (
    EigenvalueBounds,
    ModelGeometry,
    area_density,
    eigenvalue_bounds,
    flat_laplacian_coefficient,
    flat_laplacian_coefficient_printed,
    hessian_block_bounds,
    laplacian_distance,
    sphere_area_constant,
    volume,
    volume_ratio_check,
)
from qkcomp.forms import ContractViolation
from qkcomp.riccati import DomainError


def simpson(f, a, b, n=4000):
    """Independent quadrature oracle (composite Simpson)."""
    if n % 2:
        n += 1
    h = (b - a) / n
    total = f(a) + f(b)
    total += 4 * sum(f(a + h * k) for k in range(1, n, 2))
    total += 2 * sum(f(a + h * k) for k in range(2, n, 2))
    return total * h / 3


def test_laplacian_hyperbolic_limit():
    g = ModelGeometry(2, -1)
    assert laplacian_distance(g, 40.0) == pytest.approx(10.0, abs=1e-12)
    g3 = ModelGeometry(3, -1)
    assert laplacian_distance(g3, 40.0) == pytest.approx(14.0, abs=1e-12)


def test_laplacian_hyperbolic_value_at_one():
    # 6 coth 2 + 4 coth 1, frozen from direct evaluation
    g = ModelGeometry(2, -1)
    assert laplacian_distance(g, 1.0) == pytest.approx(11.476029466362615,
                                                       abs=1e-9)


def test_laplacian_flat_coefficient():
    g = ModelGeometry(2, 0)
    for r in (0.5, 1.0, 2.5):
        assert laplacian_distance(g, r) * r == pytest.approx(7.0, abs=1e-12)
    assert flat_laplacian_coefficient(2) == 7
    assert flat_laplacian_coefficient_printed(2) == 5
    g3 = ModelGeometry(3, 0)
    assert laplacian_distance(g3, 2.0) * 2.0 == pytest.approx(11.0, abs=1e-12)


def test_block_sum_identity_all_deltas():
    for delta in (-1, 0, 1):
        for n in (2, 3):
            g = ModelGeometry(n, delta)
            for r in (0.3, 0.7, 1.2):
                if delta == 1 and r >= math.pi / 2:
                    continue
                line, trans = hessian_block_bounds(g, r)
                assert laplacian_distance(g, r) == line + (n - 1) * trans


def test_hessian_block_values():
    g = ModelGeometry(2, -1)
    line, trans = hessian_block_bounds(g, 1.0)
    assert line == pytest.approx(6 / math.tanh(2), abs=1e-12)
    assert trans == pytest.approx(4 / math.tanh(1), abs=1e-12)
    g0 = ModelGeometry(2, 0)
    line, trans = hessian_block_bounds(g0, 2.0)
    assert (line, trans) == (pytest.approx(1.5), pytest.approx(2.0))


def test_domain_errors():
    g = ModelGeometry(2, 1)
    with pytest.raises(DomainError):
        laplacian_distance(g, math.pi / 2)
    with pytest.raises(DomainError):
        laplacian_distance(g, -1.0)
    with pytest.raises(ContractViolation):
        ModelGeometry(1, -1)
    with pytest.raises(ContractViolation):
        ModelGeometry(2, 5)


def test_area_density_euclidean_limit():
    g = ModelGeometry(2, -1)
    for r in (1e-3, 1e-4):
        assert area_density(g, r) / r ** 7 == pytest.approx(1.0, abs=1e-5)


def test_area_density_log_derivative():
    g = ModelGeometry(2, -1)
    for r in (0.5, 1.0, 2.0):
        h = 1e-6
        fd = (math.log(area_density(g, r + h))
              - math.log(area_density(g, r - h))) / (2 * h)
        assert abs(fd - laplacian_distance(g, r)) <= 1e-8


def test_area_growth_exponent():
    g = ModelGeometry(2, -1)
    # log J = (4n+2) r - 10 log 2 + o(1)
    r = 30.0
    assert math.log(area_density(g, r)) / r == pytest.approx(
        10.0 - 10 * math.log(2) / r, abs=1e-6)


def test_volume_flat_closed_form():
    g0 = ModelGeometry(2, 0)
    assert sphere_area_constant(2) == pytest.approx(math.pi ** 4 / 3)
    for r in (0.8, 1.5):
        assert volume(g0, r) == pytest.approx(math.pi ** 4 * r ** 8 / 24,
                                              rel=1e-10)


def test_volume_hyperbolic_dominates_euclidean_ratio():
    g = ModelGeometry(2, -1)
    assert volume(g, 2.0) / volume(g, 1.0) >= 2.0 ** 8


def test_volume_against_independent_simpson():
    g = ModelGeometry(2, -1)
    ours = volume(g, 1.5)
    oracle = sphere_area_constant(2) * simpson(lambda s: area_density(g, s),
                                               1e-9, 1.5)
    assert ours == pytest.approx(oracle, rel=1e-8)


def test_projective_total_volume_finite():
    gp = ModelGeometry(2, 1)
    total = volume(gp, math.pi / 2 - 1e-12)
    # frozen by quadrature; cross-checked against the Simpson oracle
    assert total == pytest.approx(0.8117424252833536, rel=1e-9)
    oracle = sphere_area_constant(2) * simpson(
        lambda s: area_density(gp, s), 1e-9, math.pi / 2 - 1e-9, n=20000)
    assert total == pytest.approx(oracle, rel=1e-7)


def test_volume_ratio_equality_case():
    g = ModelGeometry(2, -1)
    res = volume_ratio_check(lambda r: area_density(g, r), g, 1.0, 2.0)
    assert res.holds and res.hypothesis_ok
    assert res.ratio == pytest.approx(res.model_ratio, rel=1e-10)


def test_volume_ratio_strict_for_damped_density():
    g = ModelGeometry(2, -1)
    res = volume_ratio_check(lambda r: area_density(g, r) * math.exp(-r),
                             g, 1.0, 2.0)
    assert res.holds and res.hypothesis_ok
    assert res.ratio < res.model_ratio


def test_volume_ratio_flags_violated_hypothesis():
    g = ModelGeometry(2, -1)
    res = volume_ratio_check(lambda r: area_density(g, r) * math.exp(+r),
                             g, 1.0, 2.0)
    assert not res.hypothesis_ok
    assert not res.holds


def test_eigenvalue_bounds_table():
    assert eigenvalue_bounds(2) == EigenvalueBounds(25, F(28), F(4))
    assert eigenvalue_bounds(3) == EigenvalueBounds(49, F(55), F(9))
    for n in range(2, 51):
        eb = eigenvalue_bounds(n)
        assert eb.quaternionic == (2 * n + 1) ** 2
        assert eb.real_cheng == (4 * n - 1) * (n + 2)
        assert eb.quaternionic < eb.real_cheng
