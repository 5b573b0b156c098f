import pytest
from pydantic import ValidationError

from gp_spectra.config import EquationKind, SliceOptions, Tolerances, ValidationPolicy


@pytest.mark.parametrize(("text", "kind"), [("gp1", EquationKind.GP1), ("GP2", EquationKind.GP2), (" kv ", EquationKind.KV)])
def test_equation_kind_from_string(text: str, kind: EquationKind) -> None:
    assert EquationKind.from_string(text) is kind
    assert EquationKind.from_string(kind) is kind


def test_unknown_equation_kind_lists_the_valid_values() -> None:
    with pytest.raises(ValueError, match=r"\['gp1', 'gp2', 'kv'\]"):
        EquationKind.from_string("gp3")


def test_default_tolerances() -> None:
    tolerances = Tolerances()
    assert tolerances.root_tol == 1e-12
    assert tolerances.im_tol == 1e-9
    assert tolerances.dw_max_iter == 10_000


@pytest.mark.parametrize("field", ["root_tol", "im_tol", "dw_tol", "pole_guard"])
def test_tolerances_must_be_positive(field: str) -> None:
    with pytest.raises(ValidationError):
        Tolerances.model_validate({field: 0.0})


def test_slice_options_are_frozen() -> None:
    opts = SliceOptions()
    assert opts.validation_policy is ValidationPolicy.ASYMPTOTIC_MODEL
    with pytest.raises(ValidationError):
        opts.force_method = "dw"  # type: ignore[misc]
    with pytest.raises(ValidationError):
        SliceOptions.model_validate({"force_method": "oracle"})
