"""Single rectangular barrier: reflection/transmission amplitudes and phases.

Units throughout the package: hbar = 1, 2m = 1 and barrier height V0 = 1, so
the free wavenumber is ``k = sqrt(epsilon)`` with ``epsilon = E/V0``, lengths
are measured in units of ``1/sqrt(2 m V0)/hbar`` and the group velocity of a
free plane wave is ``2k``.

========================  ===============================  =================
quantity                  physical group                   name in this code
========================  ===============================  =================
energy ratio              E / V0                           ``epsilon``
barrier width             sqrt(2 m V0) L / hbar            ``width``
inter-barrier distance    sqrt(2 m V0) d / hbar            ``spacing``
packet width              sqrt(2 m V0) a / hbar            ``PacketSpec.width``
time                      V0 t / hbar                      ``tau``
========================  ===============================  =================

For a barrier occupying ``[0, width]`` and a plane wave incident from the
left, the amplitudes are written as

    R = -i |R| exp(i phi),     T = |T| exp(i (phi - k width)),

with ``tan(phi) = (k^2 - rho^2) tanh(rho width) / (2 k rho)`` and
``-pi/2 < phi < pi/2``.  Above the barrier top (``epsilon > 1``) the same
expressions are continued with ``rho -> i q``; there ``|R|`` and ``|T|`` as
written above can change sign, so the factorisation holds up to a common sign
and ``phi`` is the principal branch, ``(-pi/2, pi/2]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

__all__ = [
    "ScatterParams",
    "BarrierAmplitudes",
    "Side",
    "PhaseDerivative",
    "barrier_amplitudes",
    "single_barrier",
    "positioned_reflection",
    "phase_derivative",
    "asymmetric_pair_transmission",
]

# below this rho*width the tanh(x)/x and sinh-type ratios use their series
_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class ScatterParams:
    """Dimensionless definition of an array of identical barriers.

    Parameters
    ----------
    epsilon : float
        Energy over barrier height, ``E/V0 > 0``.
    width : float
        Barrier width ``sqrt(2 m V0) L / hbar > 0``.
    spacing : float
        Free distance between consecutive barriers, ``>= 0``.
    n_barriers : int
        Number of barriers, ``>= 1``.
    """

    epsilon: float
    width: float
    spacing: float = 0.0
    n_barriers: int = 1

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width!r}")
        if not self.spacing >= 0:
            raise ValueError(f"spacing must be non-negative, got {self.spacing!r}")
        if int(self.n_barriers) != self.n_barriers or self.n_barriers < 1:
            raise ValueError(f"n_barriers must be an integer >= 1, got {self.n_barriers!r}")

    @property
    def wavenumber(self) -> float:
        return float(np.sqrt(self.epsilon))

    @property
    def decay_constant(self) -> float:
        """``rho = sqrt(1 - epsilon)``; only defined below the barrier top."""
        if self.epsilon >= 1:
            raise ValueError("decay constant is defined only for epsilon < 1")
        return float(np.sqrt(1.0 - self.epsilon))

    @property
    def above_barrier_wavenumber(self) -> float:
        """``q = sqrt(epsilon - 1)``; only defined above the barrier top."""
        if self.epsilon <= 1:
            raise ValueError("q is defined only for epsilon > 1")
        return float(np.sqrt(self.epsilon - 1.0))

    @property
    def period(self) -> float:
        """Cell length ``width + spacing`` of the barrier array."""
        return self.width + self.spacing

    def replace(self, **changes) -> "ScatterParams":
        fields = dict(epsilon=self.epsilon, width=self.width,
                      spacing=self.spacing, n_barriers=self.n_barriers)
        fields.update(changes)
        return ScatterParams(**fields)


@dataclass(frozen=True)
class BarrierAmplitudes:
    """Scattering data of one barrier whose front face sits at the origin."""

    reflection: complex
    transmission: complex
    phase: float
    wavenumber: float

    @property
    def reflectance(self) -> float:
        return abs(self.reflection) ** 2

    @property
    def transmittance(self) -> float:
        return abs(self.transmission) ** 2

    # short aliases used throughout the formulas
    @property
    def R(self) -> complex:
        return self.reflection

    @property
    def T(self) -> complex:
        return self.transmission

    @property
    def phi(self) -> float:
        return self.phase

    @property
    def mod_R_sq(self) -> float:
        return self.reflectance

    @property
    def mod_T_sq(self) -> float:
        return self.transmittance


class Side(str, Enum):
    FROM_LEFT = "from_left"
    FROM_RIGHT = "from_right"


class PhaseDerivative(NamedTuple):
    dphi_dk: float
    dphi_dE: float


def _tanh_over_x(x):
    x = np.asarray(x, dtype=float)
    small = x < _SERIES_CUTOFF
    xs = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0, np.tanh(xs) / xs)


def _sin_over_x(x):
    # np.sinc is sin(pi x)/(pi x)
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def _sech(x):
    x = np.asarray(x, dtype=float)
    e = np.exp(-x)
    return 2.0 * e / (1.0 + e * e)


def barrier_amplitudes(epsilon, width):
    """Vectorised single-barrier amplitudes.

    Returns ``(R, T, phi)`` broadcast over ``epsilon`` and ``width``.  Both
    regimes are written with a common denominator

        den = 2k C - i (2 epsilon - 1) width S,
        R = -i width S / den,   T = 2k exp(-i k width) / den,

    where ``C, S`` are ``1, tanh(x)/x`` below the barrier top (``x = rho width``,
    the cosh factor moved into ``T``) and ``cos(y), sin(y)/y`` above it
    (``y = q width``).  Neither form overflows nor has a 0/0 at ``epsilon = 1``.
    """
    eps, lam = np.broadcast_arrays(np.asarray(epsilon, dtype=float),
                                   np.asarray(width, dtype=float))
    if np.any(eps <= 0) or np.any(lam <= 0):
        raise ValueError("epsilon and width must be positive")
    k = np.sqrt(eps)
    two_e_minus_1 = 2.0 * eps - 1.0
    below = eps < 1.0

    x = np.sqrt(np.where(below, 1.0 - eps, 0.0)) * lam
    y = np.sqrt(np.where(below, 0.0, eps - 1.0)) * lam

    c = np.where(below, 1.0, np.cos(y))
    s = lam * np.where(below, _tanh_over_x(x), _sin_over_x(y))
    attenuation = np.where(below, _sech(x), 1.0)

    den = 2.0 * k * c - 1j * two_e_minus_1 * s
    R = -1j * s / den
    T = 2.0 * k * attenuation * np.exp(-1j * k * lam) / den

    phi = np.arctan2(two_e_minus_1 * s, 2.0 * k * c)
    phi = np.where(phi > np.pi / 2, phi - np.pi, phi)
    phi = np.where(phi <= -np.pi / 2, phi + np.pi, phi)
    return R, T, phi


def single_barrier(params: ScatterParams, height: float = 1.0) -> BarrierAmplitudes:
    """Amplitudes of one barrier of width ``params.width`` at the origin.

    ``height`` rescales the barrier relative to the reference ``V0``; a
    barrier of height ``h`` behaves like a unit barrier at energy
    ``epsilon/h`` and width ``width*sqrt(h)``, and ``R``/``T`` are invariant
    under that rescaling.  The stored wavenumber stays the free one,
    ``sqrt(epsilon)``.
    """
    if not height > 0:
        raise ValueError("height must be positive")
    R, T, phi = barrier_amplitudes(params.epsilon / height, params.width * np.sqrt(height))
    return BarrierAmplitudes(complex(R), complex(T), float(phi), params.wavenumber)


def positioned_reflection(amps: BarrierAmplitudes, side: Side | str,
                          front: float, back: float | None = None) -> complex:
    """Reflection amplitude of the same barrier moved to ``[front, back]``.

    From the left the amplitude picks up ``exp(2ik front)``; from the right
    (incident momentum ``-k``) it is ``R exp(-2ik back)``.  Transmission does
    not depend on position, so there is no transmission counterpart.
    """
    side = Side(side)
    k = amps.wavenumber
    if side is Side.FROM_LEFT:
        return amps.reflection * np.exp(2j * k * front)
    if back is None:
        raise ValueError("reflection from the right needs the back face position")
    return amps.reflection * np.exp(-2j * k * back)


def _phase_at(k, width):
    return barrier_amplitudes(k * k, width)[2]


def _dphi_dk_analytic(k, width):
    rho = np.sqrt(1.0 - k * k)
    x = rho * width
    u = 2.0 * k * k - 1.0
    v = np.tanh(x)
    w = 2.0 * k * rho
    g = u * v / w
    sech2 = _sech(x) ** 2
    # d/dk of u*v/w with drho/dk = -k/rho, dw/dk = -2u/rho
    dg = (4.0 * k * v - u * width * sech2 * k / rho) / w + u * v * (2.0 * u / rho) / (w * w)
    return dg / (1.0 + g * g)


def _dphi_dk_fd(k, width, h=1e-3):
    def central(step):
        return (_phase_at(k + step, width) - _phase_at(k - step, width)) / (2 * step)
    # one Richardson step cancels the h^2 term
    return (4.0 * central(h / 2) - central(h)) / 3.0


def phase_derivative(params: ScatterParams, method: str = "analytic") -> PhaseDerivative:
    """``d phi/dk`` and ``d phi/dE`` of the single-barrier phase (tunnelling only).

    ``method="finite_difference"`` gives an independent Richardson-extrapolated
    central difference of :func:`barrier_amplitudes`.  With ``E = k^2`` the
    energy derivative is ``dphi_dk / (2k)``.
    """
    if not 0 < params.epsilon < 1:
        raise ValueError("phase derivative is available for 0 < epsilon < 1 only")
    k = params.wavenumber
    if method == "analytic":
        d = float(_dphi_dk_analytic(k, params.width))
    elif method == "finite_difference":
        h = min(1e-3, 0.25 * k, 0.25 * (1.0 - k))
        d = float(_dphi_dk_fd(k, params.width, h))
    else:
        raise ValueError(f"unknown method {method!r}")
    return PhaseDerivative(d, d / (2.0 * k))


def asymmetric_pair_transmission(first: BarrierAmplitudes, second: BarrierAmplitudes,
                                 spacing: float, wavenumber: float | None = None) -> complex:
    """Transmission through two different barriers separated by ``spacing``.

    ``T1 T2 / (1 - R1 R2 exp(2ik spacing))``; reduces to the twin result when
    both barriers are equal.  ``spacing`` may be an array.
    """
    if np.any(np.asarray(spacing) < 0):
        raise ValueError("spacing must be non-negative")
    k = first.wavenumber if wavenumber is None else wavenumber
    return (first.transmission * second.transmission
            / (1.0 - first.reflection * second.reflection * np.exp(2j * k * spacing)))
