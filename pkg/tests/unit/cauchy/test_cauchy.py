import cmath
import math

import numpy as np
import pytest

from gp_spectra.cauchy import (
    asymptotic_K,
    eval_K,
    kernel_derivative_residual,
    sector_bound,
    sign_law_holds,
)
from gp_spectra.errors import DomainError
from gp_spectra.measure import Discrete, PowerLaw, Sum
from gp_spectra.testing.helpers import random_discrete, random_upper_points


def test_eval_discrete(light_atoms: Discrete) -> None:
    z = 1j
    result = eval_K(light_atoms, z)
    assert result.value == pytest.approx(0.1 / (z + 1) + 0.1 / (z + 2))
    assert result.derivative == pytest.approx(-0.1 / (z + 1) ** 2 - 0.1 / (z + 2) ** 2)
    assert result.domain_ok


def test_eval_large_argument_decays_like_mass_over_z() -> None:
    measure = Discrete.of((1.0, 1.0), (2.0, 3.0))
    z = 1e6j
    assert eval_K(measure, z).value == pytest.approx(3 / z, rel=1e-5)


def test_derivative_matches_central_difference(heavy_atoms: Discrete) -> None:
    z, h = complex(-3.0, 2.0), 1e-6
    numeric = (eval_K(heavy_atoms, z + h).value - eval_K(heavy_atoms, z - h).value) / (2 * h)
    assert eval_K(heavy_atoms, z).derivative == pytest.approx(numeric, rel=1e-6)


def test_discrete_extends_to_negative_axis_off_poles(light_atoms: Discrete) -> None:
    result = eval_K(light_atoms, -1.5)
    assert not result.domain_ok
    assert result.value == pytest.approx(0.1 / -0.5 + 0.1 / 0.5)


def test_pole_raises_domain_error_naming_the_atom(light_atoms: Discrete) -> None:
    with pytest.raises(DomainError) as exc_info:
        eval_K(light_atoms, -2.0 + 1e-15)
    assert exc_info.value.atom == 1
    assert not exc_info.value.cut


def test_power_law_closed_form(power_law: PowerLaw) -> None:
    assert eval_K(power_law, 1.0).value == pytest.approx(math.pi / 2)
    assert eval_K(power_law, 4.0).value == pytest.approx(math.pi / 4)
    # principal branch: z^{-1/2} at z = i is e^{-iπ/4}
    assert eval_K(power_law, 1j).value == pytest.approx(math.pi / 2 * cmath.exp(-0.25j * math.pi))


@pytest.mark.parametrize("z", [-1.0, 0.0, complex(-2.0, 1e-16)])
def test_power_law_refuses_the_cut(power_law: PowerLaw, z: complex) -> None:
    with pytest.raises(DomainError) as exc_info:
        eval_K(power_law, z)
    assert exc_info.value.cut


def test_sum_adds_parts(mixed_measure: Sum) -> None:
    z = complex(-1.0, 3.0)
    parts = [eval_K(p, z).value for p in mixed_measure.parts]
    assert eval_K(mixed_measure, z).value == pytest.approx(sum(parts))


def test_sign_law_on_random_measures(rng: np.random.Generator, power_law: PowerLaw) -> None:
    # 100 measures x 50 points x both half-planes
    for _ in range(100):
        measure = random_discrete(rng)
        for z in random_upper_points(rng, 50):
            assert sign_law_holds(measure, z)
            assert sign_law_holds(measure, z.conjugate())
    for z in random_upper_points(rng, 500):
        assert sign_law_holds(power_law, z)
        assert sign_law_holds(power_law, z.conjugate())


def test_sign_law_rejects_real_points(light_atoms: Discrete) -> None:
    with pytest.raises(ValueError, match="non-real"):
        sign_law_holds(light_atoms, 1.0)


def test_asymptotic_model_for_finite_mass() -> None:
    measure = Discrete.of((1.0, 1.0), (2.0, 3.0))
    assert asymptotic_K(measure, 1e6j) == pytest.approx(3 / 1e6j)
    z = 100j
    difference = abs(eval_K(Discrete.of((1.0, 1.0)), z).value - 1 / z)
    assert difference <= 1 / abs(z) ** 2


def test_asymptotic_model_is_exact_for_a_power_law(power_law: PowerLaw) -> None:
    for z in (1j, complex(-3.0, 0.5), 7.0):
        assert asymptotic_K(power_law, z) == eval_K(power_law, z).value


def test_asymptotic_model_of_a_sum(mixed_measure: Sum) -> None:
    z = complex(1.0, 5.0)
    expected = 0.5 / z + eval_K(PowerLaw(b=0.25, rho=0.5), z).value
    assert asymptotic_K(mixed_measure, z) == pytest.approx(expected)


def test_asymptotic_model_outside_sector(light_atoms: Discrete) -> None:
    with pytest.raises(DomainError):
        asymptotic_K(light_atoms, complex(-1.0, 1e-4), delta=0.01)


def test_sector_bound_examples() -> None:
    single = Discrete.of((1.0, 1.0))
    assert sector_bound(single, 1.0, math.pi / 3) == pytest.approx(2.0)
    assert sector_bound(single, 1e6, math.pi / 4) == pytest.approx(2 * math.sqrt(2) / (1e6 + 1))


@pytest.mark.parametrize("delta", [0.05, 0.3, math.pi / 4, 1.2])
def test_sector_bound_dominates_the_arc(heavy_atoms: Discrete, delta: float) -> None:
    for r in (0.5, 1.0, 20.0, 60.0):
        bound = sector_bound(heavy_atoms, r, delta)
        thetas = np.linspace(-(math.pi - delta), math.pi - delta, 401)
        largest = max(abs(eval_K(heavy_atoms, cmath.rect(r, float(t))).value) for t in thetas)
        assert largest <= bound


def test_sector_bound_for_power_law(power_law: PowerLaw) -> None:
    bound = sector_bound(power_law, 4.0, math.pi / 3)
    assert abs(eval_K(power_law, cmath.rect(4.0, 2.0)).value) == pytest.approx(math.pi / 4)
    assert bound >= math.pi / 4


@pytest.mark.parametrize(("r", "delta"), [(1.0, 0.0), (1.0, math.pi / 2), (0.0, 0.5), (-1.0, 0.5)])
def test_sector_bound_preconditions(light_atoms: Discrete, r: float, delta: float) -> None:
    with pytest.raises(ValueError, match="must"):
        sector_bound(light_atoms, r, delta)


def test_kernel_derivative_identity(rng: np.random.Generator) -> None:
    for _ in range(10):
        measure = random_discrete(rng)
        for z in random_upper_points(rng, 5):
            assert kernel_derivative_residual(measure, z) < 1e-12
