import pytest

from gp_spectra.chareq import EquationSystem
from gp_spectra.errors import InvariantError, UnsupportedError
from gp_spectra.measure import Discrete
from gp_spectra.spectrum import Method, SliceStatus, SpectrumSlice, compute_slice, interval_census
from gp_spectra.spectrum.realzeros import bracket


def test_all_real_with_a_double_in_i0(light_atoms: Discrete) -> None:
    system = EquationSystem.gp1(light_atoms)
    census = interval_census(compute_slice(system, 1), system)
    assert census.verdict == "double_in_i0"
    assert census.counts == {-1: 0, 0: 2, 1: 1, 2: 0}


def test_pair_with_one_zero_per_inner_interval(light_atoms: Discrete) -> None:
    system = EquationSystem.gp1(light_atoms)
    census = interval_census(compute_slice(system, 10), system)
    assert census.verdict == "pair"
    assert census.counts == {-1: 0, 0: 0, 1: 1, 2: 0}


def test_triple_in_an_inner_interval(heavy_atoms: Discrete) -> None:
    system = EquationSystem.gp1(heavy_atoms)
    census = interval_census(compute_slice(system, 1), system)
    assert census.verdict == "triple"
    assert census.counts[1] == 3


def test_single_atom_with_real_zeros() -> None:
    system = EquationSystem.gp1(Discrete.of((1.0, 3.0)))
    assert interval_census(compute_slice(system, 1), system).verdict == "double_in_i0"


def test_parabolic_single_atom_keeps_the_double_zero() -> None:
    # b² = 4n²a: one real zero of multiplicity two
    system = EquationSystem.gp1(Discrete.of((1.0, 2.0)))
    slice_ = compute_slice(system, 1)
    assert slice_.real_zeros is not None
    assert [z.value for z in slice_.real_zeros] == pytest.approx([-1.0, -1.0])
    census = interval_census(slice_, system)
    assert census.verdict == "double_in_i0"
    assert census.counts[0] == 2


def test_census_needs_gp1_and_a_discrete_measure(light_atoms: Discrete) -> None:
    system = EquationSystem.kv(light_atoms, epsilon=0.1)
    with pytest.raises(UnsupportedError):
        interval_census(compute_slice(system, 1), system)


def test_census_refuses_an_inconclusive_slice(light_atoms: Discrete) -> None:
    system = EquationSystem.gp1(light_atoms)
    slice_ = SpectrumSlice(n=1, real_zeros=None, method=Method.POLY_ORACLE, status=SliceStatus.INCONCLUSIVE)
    with pytest.raises(UnsupportedError) as exc_info:
        interval_census(slice_, system)
    assert exc_info.value.hypothesis == "conclusive slice"


def test_impossible_pattern_is_an_invariant_violation(light_atoms: Discrete) -> None:
    system = EquationSystem.gp1(light_atoms)
    # a real zero right of the origin never occurs for GP1
    zeros = tuple(bracket(x, [1.0, 2.0]) for x in (-1.5, -0.5, 0.5))
    slice_ = SpectrumSlice(n=1, real_zeros=zeros, method=Method.POLY_ORACLE)
    with pytest.raises(InvariantError):
        interval_census(slice_, system)
