from .certificate import Box, ZeroCertificate, certify_upper_zero
from .iteration import DwClassification, DwTrace, iterate
from .newton import newton_refine

__all__ = [
    "Box",
    "DwClassification",
    "DwTrace",
    "ZeroCertificate",
    "certify_upper_zero",
    "iterate",
    "newton_refine",
]
