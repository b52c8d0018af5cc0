"""Core model definition: parameters, state, vector field and linearization.

The model tracks three interacting populations,

    C : uninfected target cells
    I : infected cells (still able to reproduce)
    V : free virus particles

with dynamics

    dC/dt = a  * C * (1 - b11*C - b12*I) - alpha*C*V
    dI/dt = a_I* I * (1 - b21*C - b22*I) + alpha*C*V - m*I
    dV/dt = k*m*I - sigma*V

Both cell populations grow logistically with competitive cross terms,
mass-action infection (alpha*C*V) converts target cells into infected
ones, infected cells die at rate m releasing k virions each, and free
virus clears at rate sigma.

This module holds the plain data types plus the three purely local
operations on them: the right-hand side, its Jacobian, and the
characteristic cubic of a 3x3 matrix.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

PARAM_NAMES = ("a", "a_I", "b11", "b12", "b21", "b22", "alpha", "m", "k", "sigma")

# Parameters that must be strictly positive; the remaining ones
# (b12, b21, alpha) may be zero, which decouples the corresponding term.
_POSITIVE = ("a", "a_I", "b11", "b22", "m", "k", "sigma")


@dataclass(frozen=True)
class ModelParams:
    """Immutable parameter set.

    a, a_I        per-capita growth rates of target / infected cells
    b11, b12      self- and cross-limitation felt by target cells
    b21, b22      cross- and self-limitation felt by infected cells
    alpha         infection rate constant (>= 0)
    m             infected cell death rate
    k             burst size (virions released per dead infected cell)
    sigma         virus clearance rate
    """

    a: float
    a_I: float
    b11: float
    b12: float
    b21: float
    b22: float
    alpha: float
    m: float
    k: float
    sigma: float

    def __post_init__(self):
        for name in PARAM_NAMES:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParameterError(f"parameter {name!r} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ParameterError(f"parameter {name!r} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        for name in _POSITIVE:
            if getattr(self, name) <= 0.0:
                raise ParameterError(f"parameter {name!r} must be > 0, got {getattr(self, name)!r}")
        for name in ("b12", "b21", "alpha"):
            if getattr(self, name) < 0.0:
                raise ParameterError(f"parameter {name!r} must be >= 0, got {getattr(self, name)!r}")

    def replace(self, **changes) -> "ModelParams":
        """Return a copy with the given fields replaced (re-validated)."""
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class State:
    """A point (C, I, V) in phase space."""

    C: float
    I: float
    V: float

    def as_array(self) -> np.ndarray:
        return np.array([self.C, self.I, self.V], dtype=float)


@dataclass(frozen=True)
class Derivative:
    """Value of the vector field at a state."""

    dC: float
    dI: float
    dV: float

    def as_array(self) -> np.ndarray:
        return np.array([self.dC, self.dI, self.dV], dtype=float)


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients of a monic cubic x^3 + p*x^2 + q*x + r."""

    p: float
    q: float
    r: float


def _rhs(p: ModelParams, C: float, I: float, V: float) -> tuple:
    # Hot path shared with the integrator; plain floats, no array overhead.
    infection = p.alpha * C * V
    dC = p.a * C * (1.0 - p.b11 * C - p.b12 * I) - infection
    dI = p.a_I * I * (1.0 - p.b21 * C - p.b22 * I) + infection - p.m * I
    dV = p.k * p.m * I - p.sigma * V
    return dC, dI, dV


def vector_field(params: ModelParams, s: State) -> Derivative:
    """Evaluate the right-hand side of the model at state ``s``."""
    dC, dI, dV = _rhs(params, s.C, s.I, s.V)
    return Derivative(dC, dI, dV)


def jacobian(params: ModelParams, s: State) -> np.ndarray:
    """Jacobian matrix of the vector field at ``s``, ordered (C, I, V).

    Returns:
        (3, 3) float array J with J[i][j] = d f_i / d s_j.
    """
    p = params
    C, I, V = s.C, s.I, s.V
    return np.array(
        [
            [
                p.a * (1.0 - 2.0 * p.b11 * C - p.b12 * I) - p.alpha * V,
                -p.a * p.b12 * C,
                -p.alpha * C,
            ],
            [
                -p.a_I * p.b21 * I + p.alpha * V,
                p.a_I * (1.0 - p.b21 * C - 2.0 * p.b22 * I) - p.m,
                p.alpha * C,
            ],
            [0.0, p.k * p.m, -p.sigma],
        ],
        dtype=float,
    )


def char_cubic(J: np.ndarray) -> CubicCoeffs:
    """Characteristic polynomial det(lambda*Id - J) of a 3x3 matrix.

    Returned as the coefficients (p, q, r) of lambda^3 + p*lambda^2
    + q*lambda + r:

        p = -trace(J)
        q =  sum of the three principal 2x2 minors
        r = -det(J)

    The determinant is expanded explicitly so the result is a fixed,
    reproducible floating-point expression.
    """
    J = np.asarray(J, dtype=float)
    if J.shape != (3, 3):
        raise ParameterError(f"expected a 3x3 matrix, got shape {J.shape}")
    p = -(J[0, 0] + J[1, 1] + J[2, 2])
    q = (
        (J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1])
        + (J[0, 0] * J[2, 2] - J[0, 2] * J[2, 0])
        + (J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0])
    )
    det = (
        J[0, 0] * (J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1])
        - J[0, 1] * (J[1, 0] * J[2, 2] - J[1, 2] * J[2, 0])
        + J[0, 2] * (J[1, 0] * J[2, 1] - J[1, 1] * J[2, 0])
    )
    return CubicCoeffs(p=float(p), q=float(q), r=float(-det))
