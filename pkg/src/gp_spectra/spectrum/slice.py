"""Per-mode spectrum slices: the non-real pair and the real zeros of one characteristic function."""

from __future__ import annotations

import math
from enum import StrEnum
from typing import NamedTuple, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from gp_spectra.chareq import CharacteristicFn, EquationSystem, is_mobius_degenerate, single_atom
from gp_spectra.config import SliceOptions
from gp_spectra.dw import Box, DwClassification, ZeroCertificate, certify_upper_zero, iterate, newton_refine
from gp_spectra.errors import AmbiguousCountError, CertificateError, InvariantError, NoConvergenceError
from gp_spectra.logging import logger
from gp_spectra.measure import as_discrete, is_discrete, validate
from gp_spectra.polyoracle import all_roots, clear_denominators, count_nonreal, is_real_root

from .realzeros import RealZero, bracket, real_zero_scan, search_radius

BIG_BOX_FLOORS = (1e-1, 1e-2, 1e-3)


class Method(StrEnum):
    POLY_ORACLE = "PolyOracle"
    DW_NEWTON_CERTIFIED = "DwNewtonCertified"
    CLOSED_FORM = "ClosedForm"


class SliceStatus(StrEnum):
    OK = "ok"
    INCONCLUSIVE = "inconclusive"


class SpectrumSlice(BaseModel):
    """The zeros of the characteristic function of mode n."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(ge=1)

    nonreal_pair: tuple[complex, complex] | None = None
    """(w, conj w) with w in the second quadrant, if the mode has a non-real zero."""

    real_zeros: tuple[RealZero, ...] | None = ()
    """Ascending real zeros; None when K does not extend to the real axis (power laws)."""

    method: Method
    certificate: ZeroCertificate | None = None
    status: SliceStatus = SliceStatus.OK
    reason: str | None = None
    """Why the slice is inconclusive."""

    dw_classification: DwClassification | None = None

    @model_validator(mode="after")
    def check_quadrant(self) -> Self:
        if self.nonreal_pair is not None:
            w, w_bar = self.nonreal_pair
            if not (w.real < 0 < w.imag) or w_bar != w.conjugate():
                msg = f"non-real pair {self.nonreal_pair} is not (w, conj w) with Re w < 0 < Im w"
                raise ValueError(msg)
        return self

    @property
    def w(self) -> complex | None:
        return None if self.nonreal_pair is None else self.nonreal_pair[0]

    @property
    def certified(self) -> bool | None:
        """True/False for a certificate's verdict, None if the slice is inconclusive."""
        if self.status is SliceStatus.INCONCLUSIVE:
            return None
        return self.certificate is not None


def _pair(w: complex) -> tuple[complex, complex]:
    return (w, w.conjugate())


def compute_slice(
    sys: EquationSystem, n: int, opts: SliceOptions | None = None
) -> SpectrumSlice:
    """Compute the spectrum of mode `n`.

    Discrete measures go through the polynomial oracle (single-atom GP1 in closed
    form) unless `opts.force_method == "dw"`; everything else goes through the
    fixed-point iteration, Newton refinement and the argument-principle certificate.
    An undecided existence question yields an inconclusive slice, never an empty pair.
    """
    opts = opts or SliceOptions()
    validate(sys.measure, opts.validation_policy)
    cf = sys.mode(n, guard=opts.tolerances.pole_guard)

    if is_discrete(sys.measure) and opts.force_method is None:
        if is_mobius_degenerate(cf):
            return _closed_form_slice(cf)
        return _oracle_slice(cf, opts)
    return _dw_slice(cf, opts)


def _closed_form_slice(cf: CharacteristicFn) -> SpectrumSlice:
    atom = single_atom(cf).atoms[0]
    b, c = atom.loc, cf.n2 * atom.mass
    discriminant = b * b - 4 * c
    if discriminant < 0:
        w = complex(-b / 2, math.sqrt(-discriminant) / 2)
        return SpectrumSlice(n=cf.n, nonreal_pair=_pair(w), method=Method.CLOSED_FORM)
    # z² + bz + c with both roots negative; the smaller one without cancellation
    big = -(b + math.sqrt(discriminant)) / 2
    roots = sorted([big, c / big])
    return SpectrumSlice(
        n=cf.n,
        real_zeros=tuple(bracket(x, [b]) for x in roots),
        method=Method.CLOSED_FORM,
    )


def _oracle_slice(cf: CharacteristicFn, opts: SliceOptions) -> SpectrumSlice:
    tolerances = opts.tolerances
    poly = clear_denominators(cf)
    roots = all_roots(poly, tolerances.root_tol)
    try:
        count_nonreal(poly, tolerances.im_tol, roots=roots)
    except AmbiguousCountError as e:
        logger.warning("n=%d: %s", cf.n, e)
        return SpectrumSlice(
            n=cf.n,
            real_zeros=None,
            method=Method.POLY_ORACLE,
            status=SliceStatus.INCONCLUSIVE,
            reason=str(e),
        )

    upper = [r for r in roots if r.imag > 0 and not is_real_root(r, tolerances.im_tol)]
    if len(upper) > 1:
        msg = f"n={cf.n}: {len(upper)} zeros in the upper half-plane"
        raise InvariantError(msg)
    locations = as_discrete(cf.system.measure).locations
    real = sorted(r.real for r in roots if is_real_root(r, tolerances.im_tol))
    return SpectrumSlice(
        n=cf.n,
        nonreal_pair=_pair(upper[0]) if upper else None,
        real_zeros=tuple(bracket(x, locations) for x in real),
        method=Method.POLY_ORACLE,
    )


def slice_box(w: complex) -> Box:
    """Box centered at `w` of half-width max(1, 0.05|w|), kept above Im w / 2."""
    return Box.around(w, max(1.0, 0.05 * abs(w)), im_floor=w.imag / 2)


def big_box(cf: CharacteristicFn, floor: float) -> Box:
    """[-R, 0] × [floor, R], which holds every zero of the open second quadrant above `floor`."""
    radius = search_radius(cf)
    return Box(re_min=-radius, re_max=0.0, im_min=floor, im_max=radius)


def _dw_slice(cf: CharacteristicFn, opts: SliceOptions) -> SpectrumSlice:
    tolerances = opts.tolerances
    real_zeros = real_zero_scan(cf) if is_discrete(cf.system.measure) else None
    trace = iterate(cf, 1j, tolerances.dw_max_iter, tolerances.dw_tol)

    def _inconclusive(reason: str) -> SpectrumSlice:
        logger.warning("n=%d: inconclusive slice: %s", cf.n, reason)
        return SpectrumSlice(
            n=cf.n,
            real_zeros=real_zeros,
            method=Method.DW_NEWTON_CERTIFIED,
            status=SliceStatus.INCONCLUSIVE,
            reason=reason,
            dw_classification=trace.classification,
        )

    seed = trace.fixed_point
    if seed is None:
        existence = _settle_existence(cf, opts)
        if not existence.settled:
            return _inconclusive(f"{trace.classification.value}: {existence.reason}")
        if existence.seed is None:
            return SpectrumSlice(
                n=cf.n,
                real_zeros=real_zeros,
                method=Method.DW_NEWTON_CERTIFIED,
                certificate=existence.certificate,
                dw_classification=trace.classification,
            )
        seed = existence.seed

    try:
        w = newton_refine(cf, seed, tolerances.root_tol, tolerances.newton_max_iter)
    except NoConvergenceError as e:
        return _inconclusive(str(e))
    if not (w.real < 0 < w.imag):
        return _inconclusive(f"refined zero {w} left the second quadrant")

    try:
        certificate = certify_upper_zero(cf, slice_box(w))
    except CertificateError as e:
        return _inconclusive(str(e))
    if certificate.winding != 1:
        return _inconclusive(f"certificate around {w} has winding {certificate.winding}")

    return SpectrumSlice(
        n=cf.n,
        nonreal_pair=_pair(w),
        real_zeros=real_zeros,
        method=Method.DW_NEWTON_CERTIFIED,
        certificate=certificate,
        dw_classification=trace.classification,
    )


class _Existence(NamedTuple):
    settled: bool
    seed: complex | None = None
    """Newton seed for the zero, None when there is none."""

    certificate: ZeroCertificate | None = None
    reason: str | None = None
    """Why existence stays open."""


def _settle_existence(cf: CharacteristicFn, opts: SliceOptions) -> _Existence:
    """Decide existence after a boundary or undecided verdict.

    Only the polynomial oracle of a discrete measure can settle that there is no
    zero. For other measures the boxes [-R, 0] × [floor, R] exclude zeros above
    the smallest floor only, so the question stays open.
    """
    tolerances = opts.tolerances
    discrete = is_discrete(cf.system.measure)
    if discrete:
        roots = all_roots(clear_denominators(cf), tolerances.root_tol)
        upper = [r for r in roots if r.imag > 0 and not is_real_root(r, tolerances.im_tol)]
        if upper:
            logger.warning("n=%d: iteration missed a zero the oracle found at %s", cf.n, upper[0])
            return _Existence(settled=True, seed=upper[0])

    excluded: float | None = None
    certificate: ZeroCertificate | None = None
    for floor in BIG_BOX_FLOORS:
        attempt = _try_certify(cf, big_box(cf, floor))
        if attempt is None:
            continue
        if attempt.winding == 1:
            logger.info("n=%d: a zero exists in %s but iteration did not find it", cf.n, attempt.box)
            return _Existence(settled=False, reason=f"a zero exists above Im = {floor:g} but iteration did not find it")
        certificate = certificate or attempt
        excluded = floor

    if discrete:
        return _Existence(settled=True, certificate=certificate)
    if excluded is None:
        return _Existence(settled=False, reason="no conclusive certificate")
    return _Existence(settled=False, reason=f"no zero above Im = {excluded:g}, none excluded below it")


def _try_certify(cf: CharacteristicFn, box: Box) -> ZeroCertificate | None:
    try:
        return certify_upper_zero(cf, box)
    except CertificateError as e:
        logger.debug("n=%d: certificate over %s failed: %s", cf.n, box, e)
        return None
