"""Wave-limit transmission versus the interference phase, its extrema and resonant spacings.

For identical barriers the coherent transmission probability depends on the
spacing only through ``alpha = phi + k * spacing`` and is pi-periodic in it.
Extrema are reported on the fundamental domain ``[0, pi)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .amplitudes import BarrierAmplitudes, ScatterParams, single_barrier
from .multibarrier import closed_form_transmission, transmission_denominator

__all__ = [
    "Extremum",
    "wave_probability",
    "wave_reflection_probability",
    "extrema_closed_form",
    "extrema_numeric_scan",
    "resonance_distances",
]

MAXIMUM = "maximum"
MINIMUM = "minimum"


@dataclass(frozen=True)
class Extremum:
    """One extremum of the wave transmission in ``alpha`` in ``[0, pi)``.

    ``formula`` names the closed-form expression the value instantiates
    (empty for numerically located extrema).
    """

    alpha: float
    kind: str
    value: float
    formula: str = ""

    @property
    def cos_alpha(self) -> float:
        return float(np.cos(self.alpha))


def _check_n(n):
    if n not in (2, 3, 4):
        raise ValueError(f"wave-limit formulas cover 2, 3 or 4 barriers, not {n}")


def wave_probability(n: int, amps: BarrierAmplitudes, alpha):
    """Coherent transmission probability ``|T_N|^2`` at interference phase ``alpha``.

    Two barriers use ``|T|^4 / (1 + |R|^4 + 2 |R|^2 cos(2 alpha))``; three
    and four use the modulus squared of the closed-form amplitude.
    """
    _check_n(n)
    alpha = np.asarray(alpha, dtype=float)
    if n == 2:
        r2, t2 = amps.reflectance, amps.transmittance
        out = t2 * t2 / (1.0 + r2 * r2 + 2.0 * r2 * np.cos(2.0 * alpha))
    else:
        out = np.abs(closed_form_transmission(n, amps, alpha)) ** 2
    return float(out) if out.ndim == 0 else out


def wave_reflection_probability(amps: BarrierAmplitudes, alpha):
    """Twin-barrier coherent reflection ``2|R|^2 (1 + cos 2a) / (1 + |R|^4 + 2|R|^2 cos 2a)``."""
    r2 = amps.reflectance
    c2 = np.cos(2.0 * np.asarray(alpha, dtype=float))
    out = 2.0 * r2 * (1.0 + c2) / (1.0 + r2 * r2 + 2.0 * r2 * c2)
    return float(out) if out.ndim == 0 else out


def _mirror(alpha):
    # the other representative of -alpha in [0, pi)
    return 0.0 if alpha == 0.0 else np.pi - alpha


def extrema_closed_form(n: int, amps: BarrierAmplitudes) -> list[Extremum]:
    """All extrema of :func:`wave_probability` over one period, from closed forms.

    Two barriers: maximum 1 at ``cos a = 0``, minimum at ``cos a = +-1``.
    Three: maxima 1 at ``cos a = +-|T|/2``, minima at ``cos a = 0`` and ``+-1``.
    Four: maxima 1 at ``cos a = 0`` and ``+-|T|/sqrt(2)``, minima at
    ``cos a = +-|T|/sqrt(6)`` and ``+-1``.  Sorted by ``alpha``.
    """
    _check_n(n)
    a, b = amps.reflectance, amps.transmittance
    t = np.sqrt(b)
    half = np.pi / 2
    if n == 2:
        out = [Extremum(0.0, MINIMUM, b * b / (1 + a) ** 2, "|T|^4/(1+|R|^2)^2"),
               Extremum(half, MAXIMUM, 1.0, "1")]
    elif n == 3:
        peak = float(np.arccos(t / 2))
        out = [Extremum(0.0, MINIMUM, b ** 3 / (1 + 3 * a) ** 2,
                        "|T|^6/(1+3|R|^2)^2 = |T|^2/(1+4|R|^2/|T|^2)^2"),
               Extremum(peak, MAXIMUM, 1.0, "1"),
               Extremum(half, MINIMUM, b, "|T|^2"),
               Extremum(_mirror(peak), MAXIMUM, 1.0, "1")]
    else:
        peak = float(np.arccos(t / np.sqrt(2)))
        dip = float(np.arccos(t / np.sqrt(6)))
        interior = b / (1 + 5 * a / 27)
        out = [Extremum(0.0, MINIMUM, b ** 4 / (1 + 6 * a + a * a) ** 2,
                        "|T|^8/(1+6|R|^2+|R|^4)^2 = 1/(1+8|R|^2/|T|^4)^2"),
               Extremum(peak, MAXIMUM, 1.0, "1"),
               Extremum(dip, MINIMUM, interior, "|T|^2/(1+5|R|^2/27)"),
               Extremum(half, MAXIMUM, 1.0, "1"),
               Extremum(_mirror(dip), MINIMUM, interior, "|T|^2/(1+5|R|^2/27)"),
               Extremum(_mirror(peak), MAXIMUM, 1.0, "1")]
    return sorted(out, key=lambda e: e.alpha)


def _derivative(n, amps):
    # exact d|T_N|^2/d alpha from T_N = T^N / Q(e^{2i alpha})
    Q = transmission_denominator(n, amps)
    dQ = Q.deriv()
    TN = amps.transmission ** n

    def deriv(alpha):
        z = np.exp(2j * alpha)
        q = Q(z)
        g = TN / q
        dg = -TN * dQ(z) * 2j * z / (q * q)
        return 2.0 * np.real(np.conj(g) * dg)

    return deriv


def extrema_numeric_scan(n: int, amps: BarrierAmplitudes, grid_size: int = 10 ** 4,
                         tol: float = 1e-10) -> list[Extremum]:
    """Locate the extrema of :func:`wave_probability` on ``[0, pi)`` numerically.

    The exact derivative is sampled on a uniform periodic grid; every sign
    change is refined by bisection until the bracket is below ``tol``.  Used
    as an independent check of :func:`extrema_closed_form`.
    """
    _check_n(n)
    if grid_size < 10 ** 4:
        raise ValueError("grid_size must be at least 10**4")
    deriv = _derivative(n, amps)
    grid = np.arange(grid_size) * (np.pi / grid_size)
    sign = np.sign(deriv(grid))
    nxt = np.roll(sign, -1)
    prv = np.roll(sign, 1)

    found = []
    for i in np.flatnonzero(sign == 0):
        if prv[i] != nxt[i] and prv[i] != 0:
            found.append((float(grid[i]), MAXIMUM if prv[i] > 0 else MINIMUM))
    for i in np.flatnonzero(sign * nxt < 0):
        lo = grid[i]
        hi = lo + np.pi / grid_size
        s_lo = sign[i]
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            s = np.sign(deriv(mid))
            if s == 0:
                lo = hi = mid
                break
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        found.append((float(0.5 * (lo + hi)), MAXIMUM if s_lo > 0 else MINIMUM))

    out = []
    for alpha, kind in found:
        alpha = alpha % np.pi
        if np.pi - alpha < tol or alpha < tol:
            alpha = 0.0
        out.append(Extremum(alpha, kind, float(wave_probability(n, amps, alpha))))
    return sorted(out, key=lambda e: e.alpha)


def resonance_distances(n: int, params: ScatterParams, n_max: int) -> list[float]:
    """Spacings at which ``n`` identical barriers are fully transparent.

    Solves ``phi + k * spacing = alpha* (mod pi)`` for every unity maximum
    ``alpha*`` of :func:`extrema_closed_form`, keeping ``0 < spacing <=
    n_max * pi / k`` (``n_max`` periods of the spacing dependence).
    """
    if not 0 < params.epsilon < 1:
        raise ValueError("resonance distances are computed for 0 < epsilon < 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    amps = single_barrier(params)
    k = params.wavenumber
    limit = n_max * np.pi / k
    out = []
    for ext in extrema_closed_form(n, amps):
        if ext.kind != MAXIMUM:
            continue
        base = ext.alpha - amps.phase
        m = int(np.floor(-base / np.pi)) + 1  # smallest m with base + m pi > 0
        while True:
            delta = (base + m * np.pi) / k
            if delta > limit * (1 + 1e-15):
                break
            if delta > 0:
                out.append(float(delta))
            m += 1
    return sorted(out)
