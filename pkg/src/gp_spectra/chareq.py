"""Characteristic functions F_n, G_n, H_n and their upper-half-plane fixed-point maps."""

from __future__ import annotations

import cmath
import math
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from gp_spectra.cauchy import DEFAULT_POLE_GUARD, eval_K
from gp_spectra.config import EquationKind
from gp_spectra.errors import DomainError, InvariantError
from gp_spectra.measure import Discrete, Measure, as_discrete, is_discrete


class EquationSystem(BaseModel):
    """Which equation (GP1, GP2 or KV), its scalar parameters and the memory measure.

    Serialises to `{"equation": "gp1"|"gp2"|"kv", "a": ..., "epsilon": ..., "measure": ...}`.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    equation: EquationKind
    a: float | None = Field(default=None, allow_inf_nan=False)
    """Instantaneous stiffness of GP2, a > 0."""

    epsilon: float | None = Field(default=None, allow_inf_nan=False)
    """Kelvin-Voigt viscosity, ε > 0."""

    measure: Measure

    @model_validator(mode="after")
    def check_parameters(self) -> Self:
        if self.equation is EquationKind.GP2:
            if self.a is None or not self.a > 0:
                msg = "gp2 requires a > 0"
                raise ValueError(msg)
        elif self.a is not None:
            msg = f"parameter a only applies to gp2, not {self.equation.value}"
            raise ValueError(msg)
        if self.equation is EquationKind.KV:
            if self.epsilon is None or not self.epsilon > 0:
                msg = "kv requires epsilon > 0"
                raise ValueError(msg)
        elif self.epsilon is not None:
            msg = f"parameter epsilon only applies to kv, not {self.equation.value}"
            raise ValueError(msg)
        return self

    @property
    def kind(self) -> EquationKind:
        return self.equation

    @classmethod
    def gp1(cls, measure: Measure) -> EquationSystem:
        return cls(equation=EquationKind.GP1, measure=measure)

    @classmethod
    def gp2(cls, measure: Measure, a: float) -> EquationSystem:
        return cls(equation=EquationKind.GP2, a=a, measure=measure)

    @classmethod
    def kv(cls, measure: Measure, epsilon: float) -> EquationSystem:
        return cls(equation=EquationKind.KV, epsilon=epsilon, measure=measure)

    def mode(self, n: int, guard: float = DEFAULT_POLE_GUARD) -> CharacteristicFn:
        """The characteristic function of the n-th Fourier mode."""
        return CharacteristicFn(system=self, n=n, guard=guard)


def load_system(text: str | bytes) -> EquationSystem:
    return EquationSystem.model_validate_json(text)


class CharacteristicFn(BaseModel):
    """F_n(z) = z + n²K(z), G_n(z) = z² + an² - n²K(z) or H_n(z) = z² + εzn² + n² - n²K(z)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    system: EquationSystem
    n: int = Field(ge=1)
    guard: float = Field(default=DEFAULT_POLE_GUARD, gt=0)

    @property
    def kind(self) -> EquationKind:
        return self.system.equation

    @property
    def n2(self) -> float:
        return float(self.n * self.n)

    def eval(self, z: complex) -> tuple[complex, complex]:
        """Value and z-derivative at `z`. Propagates `DomainError` from K."""
        z = complex(z)
        k = eval_K(self.system.measure, z, self.guard)
        n2 = self.n2
        match self.kind:
            case EquationKind.GP1:
                return z + n2 * k.value, 1 + n2 * k.derivative
            case EquationKind.GP2:
                a = self.a
                return z * z + a * n2 - n2 * k.value, 2 * z - n2 * k.derivative
            case EquationKind.KV:
                eps = self.epsilon
                return (
                    z * z + eps * z * n2 + n2 - n2 * k.value,
                    2 * z + eps * n2 - n2 * k.derivative,
                )

    def scale(self, z: complex) -> float:
        """Sum of the moduli of the terms; residuals are measured relative to it."""
        z = complex(z)
        k_abs = abs(eval_K(self.system.measure, z, self.guard).value)
        n2 = self.n2
        match self.kind:
            case EquationKind.GP1:
                return 1 + abs(z) + n2 * k_abs
            case EquationKind.GP2:
                return 1 + abs(z) ** 2 + self.a * n2 + n2 * k_abs
            case EquationKind.KV:
                return 1 + abs(z) ** 2 + self.epsilon * abs(z) * n2 + n2 + n2 * k_abs

    @property
    def a(self) -> float:
        assert self.system.a is not None
        return self.system.a

    @property
    def epsilon(self) -> float:
        assert self.system.epsilon is not None
        return self.system.epsilon


def phi(w: complex) -> complex:
    """Square-root branch mapping the lower half-plane onto the second quadrant.

    φ(w) = -√w (principal root); on w < 0 the value is the limit from below,
    so φ((0, ∞)) = (-∞, 0) and φ((-∞, 0)) = i(0, ∞).
    """
    w = complex(w)
    if w.imag > 0:
        msg = f"phi is defined on the closed lower half-plane, got {w}"
        raise DomainError(msg, z=w)
    if w.imag == 0:
        if w.real < 0:
            return complex(0.0, math.sqrt(-w.real))
        return complex(-math.sqrt(w.real), 0.0)
    return -cmath.sqrt(w)


def _map_argument(cf: CharacteristicFn, z: complex, k_value: complex) -> complex:
    if cf.kind is EquationKind.GP2:
        return k_value - cf.a
    return k_value - cf.epsilon * z - 1


def fixed_point_map(cf: CharacteristicFn, z: complex) -> complex:
    """The self-map f of the upper half-plane whose fixed points are the zeros of `cf`.

    GP1: f(z) = -n²K(z). GP2: f(z) = nφ(K(z) - a). KV: f(z) = nφ(K(z) - εz - 1).
    """
    z = complex(z)
    if not z.imag > 0:
        msg = f"fixed_point_map is defined on the open upper half-plane, got {z}"
        raise DomainError(msg, z=z)

    k_value = eval_K(cf.system.measure, z, cf.guard).value
    if cf.kind is EquationKind.GP1:
        image = -cf.n2 * k_value
    else:
        u = _map_argument(cf, z, k_value)
        if u.imag > 0:
            msg = f"map argument {u} left the lower half-plane at z={z}"
            raise InvariantError(msg)
        image = cf.n * phi(u)

    if not image.imag > 0:
        msg = f"fixed_point_map({z}) = {image} is not in the upper half-plane"
        raise InvariantError(msg)
    return image


def map_derivative(cf: CharacteristicFn, z: complex) -> complex:
    """f'(z) of `fixed_point_map`; at a fixed point this is the multiplier."""
    z = complex(z)
    k = eval_K(cf.system.measure, z, cf.guard)
    if cf.kind is EquationKind.GP1:
        return -cf.n2 * k.derivative
    u_prime = k.derivative if cf.kind is EquationKind.GP2 else k.derivative - cf.epsilon
    # f = nφ(u), φ' = 1/(2φ), hence f' = n²u'/(2f)
    return cf.n2 * u_prime / (2 * fixed_point_map(cf, z))


def is_mobius_degenerate(cf: CharacteristicFn) -> bool:
    """True iff the GP1 map is fractional-linear, i.e. the measure is a single atom."""
    measure = cf.system.measure
    return (
        cf.kind is EquationKind.GP1
        and is_discrete(measure)
        and len(as_discrete(measure).atoms) == 1
    )


def single_atom(cf: CharacteristicFn) -> Discrete:
    """The single-atom measure of a Möbius-degenerate GP1 mode."""
    if not is_mobius_degenerate(cf):
        msg = "only defined for single-atom GP1 modes"
        raise ValueError(msg)
    return as_discrete(cf.system.measure)
