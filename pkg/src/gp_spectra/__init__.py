from importlib.metadata import PackageNotFoundError, version

from .chareq import CharacteristicFn, EquationSystem
from .config import EquationKind, SliceOptions, Tolerances, ValidationPolicy
from .errors import SpectraError
from .measure import Discrete, Measure, PowerLaw, Sum
from .spectrum import SpectrumSlice, compute_slice

try:
    __version__ = version("gp-spectra")
except PackageNotFoundError:
    # In the case of local development
    # i.e., running directly from the source directory without package being installed
    __version__ = "0.0.0-dev"

__all__ = [
    "CharacteristicFn",
    "Discrete",
    "EquationKind",
    "EquationSystem",
    "Measure",
    "PowerLaw",
    "SliceOptions",
    "SpectraError",
    "SpectrumSlice",
    "Sum",
    "Tolerances",
    "ValidationPolicy",
    "__version__",
    "compute_slice",
]
