"""N identical barriers: transfer matrix, closed forms and the particle limit.

Barrier ``j`` (``j = 0 .. N-1``) occupies ``[j (w + s), j (w + s) + w]`` with
``w`` the width and ``s`` the spacing.  One barrier plus the following gap is
described by the unimodular matrix

    M = [[F, conj(G)], [G, conj(F)]],
    F = 1 / (T exp(ik (w + s))),   G = R exp(ik s) / (T exp(ik w)),

and the array amplitudes follow from ``M**N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .amplitudes import BarrierAmplitudes, ScatterParams, barrier_amplitudes, single_barrier

__all__ = [
    "TransferMatrix",
    "InterferenceState",
    "ArrayAmplitudes",
    "ParticleLimit",
    "build_transfer_matrix",
    "continuity_transfer_matrix",
    "interference_state",
    "n_barrier_amplitudes",
    "array_amplitudes",
    "transmission_amplitude",
    "closed_form_transmission",
    "transmission_denominator",
    "particle_limit_probabilities",
]


@dataclass(frozen=True)
class TransferMatrix:
    """Cell matrix ``[[F, conj(G)], [G, conj(F)]]``."""

    F: complex
    G: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.F, np.conj(self.G)], [self.G, np.conj(self.F)]])

    @property
    def determinant(self) -> float:
        return abs(self.F) ** 2 - abs(self.G) ** 2

    def power(self, n: int) -> np.ndarray:
        """``M**n`` by repeated multiplication (no eigen-decomposition)."""
        if n < 1:
            raise ValueError("power must be >= 1")
        m = self.matrix
        out = m.copy()
        for _ in range(n - 1):
            out = out @ m
        return out


@dataclass(frozen=True)
class InterferenceState:
    """Round-trip phase ``alpha = phi + k s`` and ``D = 1 + |R|^2 exp(2i alpha)``."""

    alpha: float
    D: complex


class ArrayAmplitudes(NamedTuple):
    reflection: complex
    transmission: complex


class ParticleLimit(NamedTuple):
    reflection: float
    transmission: float


class ContinuityMismatch(ArithmeticError):
    """The closed-form and continuity-equation transfer matrices disagree."""


def _w(decay):
    # W[delta, 0] of the continuity equations
    return np.array([[1.0, 1.0], [decay, -decay]], dtype=complex)


def _w_inv(decay):
    return np.array([[0.5, 0.5 / decay], [0.5, -0.5 / decay]], dtype=complex)


def _diag_exp(z):
    return np.diag([np.exp(z), np.exp(-z)]).astype(complex)


def continuity_transfer_matrix(params: ScatterParams) -> np.ndarray:
    """Cell matrix assembled from the boundary-matching matrices.

    ``Delta[-iks] W^-1[ik] W[rho] Delta[-rho w] W^-1[rho] W[ik]``, with
    ``rho -> iq`` above the barrier.  Singular at ``epsilon == 1``.
    """
    if params.epsilon == 1.0:
        raise ZeroDivisionError("continuity matrices are singular at epsilon == 1")
    ik = 1j * params.wavenumber
    rho = np.sqrt(complex(1.0 - params.epsilon))
    return (_diag_exp(-ik * params.spacing) @ _w_inv(ik) @ _w(rho)
            @ _diag_exp(-rho * params.width) @ _w_inv(rho) @ _w(ik))


def build_transfer_matrix(amps: BarrierAmplitudes, params: ScatterParams,
                          verify: bool = False, rtol: float = 1e-12) -> TransferMatrix:
    """Cell transfer matrix from the single-barrier amplitudes.

    With ``verify=True`` the matrix is also assembled from the continuity
    equations and :class:`ContinuityMismatch` is raised if any entry differs
    by more than ``rtol * max(1, |F|)``.
    """
    k = amps.wavenumber
    F = 1.0 / (amps.transmission * np.exp(1j * k * params.period))
    G = amps.reflection * np.exp(1j * k * params.spacing) / (amps.transmission * np.exp(1j * k * params.width))
    M = TransferMatrix(complex(F), complex(G))
    if verify:
        check = continuity_transfer_matrix(params)
        err = np.max(np.abs(check - M.matrix))
        if err > rtol * max(1.0, abs(F)):
            raise ContinuityMismatch(f"transfer matrices differ by {err:.3e}")
    return M


def interference_state(amps: BarrierAmplitudes, spacing: float) -> InterferenceState:
    alpha = amps.phase + amps.wavenumber * spacing
    return InterferenceState(alpha, 1.0 + amps.reflectance * np.exp(2j * alpha))


def n_barrier_amplitudes(M: TransferMatrix, params: ScatterParams) -> ArrayAmplitudes:
    """Reflection and transmission of ``params.n_barriers`` identical cells.

        T_N = exp(-ikN(w+s)) / (M^N)_11,  R_N = exp(-2iks) (M^N)_21 / (M^N)_11
    """
    n = params.n_barriers
    if n < 1:
        raise ValueError("need at least one barrier")
    k = params.wavenumber
    mn = M.power(n)
    Ts = np.exp(-1j * k * n * params.period) / mn[0, 0]
    Rs = np.exp(-2j * k * params.spacing) * mn[1, 0] / mn[0, 0]
    return ArrayAmplitudes(complex(Rs), complex(Ts))


def array_amplitudes(params: ScatterParams) -> ArrayAmplitudes:
    """Shortcut: single barrier -> transfer matrix -> N-barrier amplitudes."""
    amps = single_barrier(params)
    return n_barrier_amplitudes(build_transfer_matrix(amps, params), params)


def transmission_amplitude(epsilon, width, spacing, n_barriers: int):
    """Vectorised matrix-path transmission ``T_N`` broadcast over the inputs.

    Same arithmetic as :func:`n_barrier_amplitudes`, written entry-wise so it
    can be evaluated on quadrature nodes and spacing grids at once.
    """
    if n_barriers < 1:
        raise ValueError("need at least one barrier")
    eps, lam, s = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (epsilon, width, spacing)))
    R, T, _ = barrier_amplitudes(eps, lam)
    k = np.sqrt(eps)
    F = 1.0 / (T * np.exp(1j * k * (lam + s)))
    G = R * np.exp(1j * k * s) / (T * np.exp(1j * k * lam))
    a, b, c, d = F, np.conj(G), G, np.conj(F)
    pa, pb, pc, pd = a, b, c, d
    for _ in range(n_barriers - 1):
        pa, pb, pc, pd = pa * a + pb * c, pa * b + pb * d, pc * a + pd * c, pc * b + pd * d
    return np.exp(-1j * k * n_barriers * (lam + s)) / pa


def _as_result(x):
    return complex(x) if np.ndim(x) == 0 else x


def closed_form_transmission(n: int, amps: BarrierAmplitudes, alpha):
    """Wave-limit transmission of 2, 3 or 4 identical barriers as a function of ``alpha``.

    With ``D = 1 + |R|^2 e^{2i alpha}``::

        N=2:  T^2 / D
        N=3:  T^3 / [D^2 (1 + |R|^2 |T|^2 e^{4i alpha} / D^2)]
        N=4:  T^4 / [D^3 (1 + 2|R|^2 |T|^2 e^{4i alpha} / D^2 + |R|^2 |T|^4 e^{6i alpha} / D^3)]

    ``alpha`` may be an array.  Larger arrays are only available through the
    transfer matrix.
    """
    r2, t2, T = amps.reflectance, amps.transmittance, amps.transmission
    z = np.exp(2j * np.asarray(alpha, dtype=float))
    D = 1.0 + r2 * z
    if n == 2:
        return _as_result(T ** 2 / D)
    if n == 3:
        return _as_result(T ** 3 / (D ** 2 * (1.0 + r2 * t2 * z ** 2 / D ** 2)))
    if n == 4:
        return _as_result(T ** 4 / (D ** 3 * (1.0 + 2.0 * r2 * t2 * z ** 2 / D ** 2
                                              + r2 * t2 ** 2 * z ** 3 / D ** 3)))
    raise ValueError(f"closed forms exist for 2, 3 or 4 barriers, not {n}")


def transmission_denominator(n: int, amps: BarrierAmplitudes) -> np.polynomial.Polynomial:
    """Polynomial ``Q`` in ``z = e^{2i alpha}`` with ``T_N = T^N / Q(z)``, ``Q(0) = 1``.

    Same content as :func:`closed_form_transmission` with the ``D`` powers
    multiplied out; used for exact derivatives and partial fractions.
    """
    a, b = amps.reflectance, amps.transmittance
    P = np.polynomial.Polynomial
    D = P([1.0, a])
    z2, z3 = P([0.0, 0.0, 1.0]), P([0.0, 0.0, 0.0, 1.0])
    if n == 2:
        Q = D
    elif n == 3:
        Q = D ** 2 + a * b * z2
    elif n == 4:
        Q = D ** 3 + 2.0 * a * b * z2 * D + a * b * b * z3
    else:
        raise ValueError(f"closed forms exist for 2, 3 or 4 barriers, not {n}")
    return Q.trim()


def particle_limit_probabilities(amps: BarrierAmplitudes) -> ParticleLimit:
    """Incoherent (particle-limit) twin-barrier probabilities.

    Every exit is a separate packet, so intensities add:
    ``T_p = |T|^4 sum |R|^{4n}`` and ``R_p = |R|^2 + |R|^2 |T|^4 sum |R|^{4n}``.
    The geometric sum reduces ``T_p`` to ``|T|^2 / (1 + |R|^2)``.
    """
    r2, t2 = amps.reflectance, amps.transmittance
    if r2 >= 1.0:
        return ParticleLimit(1.0, 0.0)
    series = 1.0 / (1.0 - r2 * r2)
    tp = t2 * t2 * series
    return ParticleLimit(r2 + r2 * tp, tp)
