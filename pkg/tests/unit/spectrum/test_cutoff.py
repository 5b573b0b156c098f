import math
from unittest.mock import patch

import numpy as np
import pytest

from gp_spectra.chareq import EquationSystem
from gp_spectra.errors import GridExhaustedError, InvariantError, UnsupportedError
from gp_spectra.measure import Discrete, PowerLaw
from gp_spectra.polyoracle import all_roots, clear_denominators, is_real_root
from gp_spectra.spectrum import exact_min_n, kv_nonreal_cutoff, nonreal_modes, real_map
from gp_spectra.testing.helpers import random_discrete


def test_cutoff_for_a_single_atom(kv_single_atom: EquationSystem) -> None:
    cutoff = kv_nonreal_cutoff(kv_single_atom)
    assert cutoff.zero_crossing == pytest.approx(-11.0)
    assert cutoff.r_star == pytest.approx(-21.49, abs=0.05)
    assert cutoff.witness > 0
    assert cutoff.objective == pytest.approx(20.488, abs=1e-3)
    assert cutoff.n_star == 21
    assert cutoff.n_star * math.sqrt(cutoff.witness) > -cutoff.r_star


def test_cutoff_with_unit_viscosity(single_atom: Discrete) -> None:
    cutoff = kv_nonreal_cutoff(EquationSystem.kv(single_atom, epsilon=1.0))
    assert cutoff.zero_crossing == pytest.approx(-2.0)
    # -r/√f(r) = √(s(s-1)/(s-2)) with s = -r, minimal at s = 2 + √2
    assert cutoff.r_star == pytest.approx(-(2 + math.sqrt(2)), rel=1e-4)
    assert cutoff.objective == pytest.approx(1 + math.sqrt(2), rel=1e-8)
    assert cutoff.n_star == 3


def test_real_map_crosses_at_the_cutoff(kv_single_atom: EquationSystem) -> None:
    cutoff = kv_nonreal_cutoff(kv_single_atom)
    r = cutoff.r_star
    assert real_map(kv_single_atom.mode(cutoff.n_star), r).real < r
    assert real_map(kv_single_atom.mode(cutoff.n_star - 1), r).real > r


def test_exact_sweep(kv_single_atom: EquationSystem) -> None:
    assert exact_min_n(kv_single_atom, 21) == 21
    assert nonreal_modes(kv_single_atom, 21, threads=4) == list(range(1, 21))
    unit = EquationSystem.kv(Discrete.of((1.0, 1.0)), epsilon=1.0)
    assert exact_min_n(unit, 3) == 3
    assert nonreal_modes(unit, 3) == [1, 2]


def test_sweep_below_the_real_threshold_is_refused(kv_single_atom: EquationSystem) -> None:
    with pytest.raises(InvariantError):
        exact_min_n(kv_single_atom, 20)


def test_cutoff_for_two_atoms(light_atoms: Discrete) -> None:
    system = EquationSystem.kv(light_atoms, epsilon=0.1)
    cutoff = kv_nonreal_cutoff(system)
    assert cutoff.zero_crossing < -2.0
    n0 = exact_min_n(system, cutoff.n_star)
    assert 1 <= n0 <= cutoff.n_star
    assert all(n < n0 for n in nonreal_modes(system, cutoff.n_star))


@pytest.mark.parametrize("epsilon", [0.05, 0.5, 2.0])
def test_cutoff_is_sound_on_random_measures(rng: np.random.Generator, epsilon: float) -> None:
    for _ in range(20):
        system = EquationSystem.kv(random_discrete(rng, max_atoms=5), epsilon=epsilon)
        cutoff = kv_nonreal_cutoff(system)
        for n in range(cutoff.n_star, cutoff.n_star + 31):
            roots = all_roots(clear_denominators(system.mode(n)))
            # a double real zero splits by about sqrt(eps)
            assert all(is_real_root(r, 1e-6) for r in roots)


def test_cutoff_needs_kv_and_compact_support(single_atom: Discrete, power_law: PowerLaw) -> None:
    with pytest.raises(UnsupportedError) as exc_info:
        kv_nonreal_cutoff(EquationSystem.gp1(single_atom))
    assert exc_info.value.hypothesis == "equation kv"
    with pytest.raises(UnsupportedError) as exc_info:
        kv_nonreal_cutoff(EquationSystem.kv(power_law, epsilon=0.1))
    assert exc_info.value.hypothesis == "compact support"
    with pytest.raises(UnsupportedError):
        exact_min_n(EquationSystem.kv(power_law, epsilon=0.1), 3)
    with pytest.raises(UnsupportedError):
        real_map(EquationSystem.gp1(single_atom).mode(1), -3.0)


def test_minimum_at_the_grid_edge(kv_single_atom: EquationSystem) -> None:
    with patch("gp_spectra.spectrum.cutoff.GRID_POINTS", 2):
        with pytest.raises(GridExhaustedError):
            kv_nonreal_cutoff(kv_single_atom)
