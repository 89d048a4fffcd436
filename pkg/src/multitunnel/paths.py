"""Bounce-path expansion of multi-barrier scattering.

A path is a walk through the barrier array in which every encounter with a
barrier face either reflects (positioned reflection amplitude) or tunnels
(``T``, independent of position and direction).  The product of the event
amplitudes is the path amplitude; coherent sums of paths reproduce the
transfer-matrix amplitudes.

Every path amplitude has the form

    R^nR  T^nT  exp(2ik (order * spacing + width_power * width)),

and the integer ``order`` counts extra cavity traversals.  Paths with equal
``(nR, nT, order)`` leave at the same time and are mutually coherent.

Truncation is by ``order``, not by the raw number of reflections: for three
or more barriers the partial sums ordered by reflection count do not
converge in general, while the exit-order sums do.  A budget of
``max_events`` reflections keeps every path of order ``<= max_events // 2``;
all of those carry at most ``max_events`` reflections.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .amplitudes import BarrierAmplitudes, ScatterParams
from .multibarrier import transmission_denominator

__all__ = [
    "Transmit",
    "Reflect",
    "Monomial",
    "PathTerm",
    "SeriesTerm",
    "MAX_EVENTS",
    "enumerate_paths",
    "grouped_series_terms",
    "series_coefficients",
    "series_terms",
    "path_partial_sum",
    "remainder_bound",
    "incoherent_sum",
]

MAX_EVENTS = 40

TRANSMITTED = "transmitted"
REFLECTED = "reflected"


class Transmit(NamedTuple):
    barrier: int
    direction: int  # +1 left-to-right, -1 right-to-left


class Reflect(NamedTuple):
    barrier: int
    face: str  # "left" or "right"


class Monomial(NamedTuple):
    n_reflections: int
    n_transmissions: int
    order: int


@dataclass(frozen=True)
class PathTerm:
    amplitude: complex
    signature: tuple
    exit_side: str
    monomial: Monomial
    width_power: int


@dataclass(frozen=True)
class SeriesTerm:
    exit_side: str
    monomial: Monomial
    coefficient: int
    amplitude: complex
    width_power: int


def _check_budget(n_barriers, max_events):
    if n_barriers < 1:
        raise ValueError("need at least one barrier")
    if max_events < 0:
        raise ValueError("max_events must be non-negative")
    if max_events > MAX_EVENTS:
        raise ValueError(f"max_events > {MAX_EVENTS} refused (path count explodes)")


def _floor_order(region, moving_right, order):
    # smallest order any completion of this partial path can end with
    return order if moving_right else order - (region - 1)


def enumerate_paths(params: ScatterParams, amps: BarrierAmplitudes,
                    max_events: int) -> list[PathTerm]:
    """List every bounce path of exit order ``<= max_events // 2``.

    ``params.n_barriers`` sets the array; ``amps`` are the single-barrier
    amplitudes at the origin.  Each returned term carries its event
    signature and the exact product of event amplitudes.
    """
    n = params.n_barriers
    _check_budget(n, max_events)
    max_order = max_events // 2
    k = amps.wavenumber
    R, T = amps.reflection, amps.transmission
    period, width = params.period, params.width

    # event objects are shared between signatures
    go_right = [Transmit(j, +1) for j in range(n)]
    go_left = [Transmit(j, -1) for j in range(n)]
    hit_left = [Reflect(j, "left") for j in range(n)]
    hit_right = [Reflect(j, "right") for j in range(n)]
    refl_left = [R * np.exp(2j * k * j * period) for j in range(n)]
    refl_right = [R * np.exp(-2j * k * (j * period + width)) for j in range(n)]

    out = []
    # region, moving_right, nR, nT, order, width_power, amplitude, signature
    stack = [(0, True, 0, 0, 0, 0, 1.0 + 0j, ())]
    while stack:
        region, right, nr, nt, p, q, amp, sig = stack.pop()
        if right and region == n:
            out.append(PathTerm(amp, sig, TRANSMITTED, Monomial(nr, nt, p), q))
            continue
        if not right and region == 0:
            out.append(PathTerm(amp, sig, REFLECTED, Monomial(nr, nt, p), q))
            continue
        if _floor_order(region, right, p) > max_order:
            continue
        if right:
            j = region
            stack.append((region + 1, True, nr, nt + 1, p, q, amp * T, sig + (go_right[j],)))
            if nr < max_events:
                stack.append((region, False, nr + 1, nt, p + j, q + j,
                              amp * refl_left[j], sig + (hit_left[j],)))
        else:
            j = region - 1
            stack.append((region - 1, False, nr, nt + 1, p, q, amp * T, sig + (go_left[j],)))
            if nr < max_events:
                stack.append((region, True, nr + 1, nt, p - j, q - j - 1,
                              amp * refl_right[j], sig + (hit_right[j],)))
    return [t for t in out if t.monomial.order <= max_order]


def grouped_series_terms(paths: Iterable[PathTerm]) -> list[SeriesTerm]:
    """Sum coherent paths: one term per exit side and ``(nR, nT, order)``."""
    groups: dict = {}
    for path in paths:
        key = (path.exit_side, path.monomial)
        count, amp, q = groups.get(key, (0, 0j, path.width_power))
        if q != path.width_power:
            raise AssertionError(f"inconsistent phase inside group {key}")
        groups[key] = (count + 1, amp + path.amplitude, q)
    terms = [SeriesTerm(side, mono, c, a, q) for (side, mono), (c, a, q) in groups.items()]
    return sorted(terms, key=_term_order)


def _term_order(term):
    m = term.monomial
    return (term.exit_side != TRANSMITTED, m.order, m.n_transmissions, m.n_reflections)


@lru_cache(maxsize=None)
def series_coefficients(n_barriers: int, max_events: int) -> dict:
    """Integer path counts per coherent group, without listing the paths.

    Returns ``{(exit_side, Monomial): (count, width_power)}``; the counts do
    not depend on energy or geometry, so they are cached.  Agrees exactly with
    grouping :func:`enumerate_paths`.
    """
    _check_budget(n_barriers, max_events)
    n = n_barriers
    max_order = max_events // 2

    @lru_cache(maxsize=None)
    def completions(region, right, slack):
        # Counter of (side, dnR, dnT, dp, dq) over all ways to finish;
        # slack = remaining room above the current order floor
        if right and region == n:
            return Counter({(TRANSMITTED, 0, 0, 0, 0): 1})
        if not right and region == 0:
            return Counter({(REFLECTED, 0, 0, 0, 0): 1})
        acc = Counter()

        def add(sub, dnr, dnt, dp, dq):
            for (side, a, b, c, d), cnt in sub.items():
                acc[(side, a + dnr, b + dnt, c + dp, d + dq)] += cnt

        if right:
            j = region
            add(completions(region + 1, True, slack), 0, 1, 0, 0)
            if j == 0:
                add(completions(0, False, slack), 1, 0, 0, 0)
            elif slack >= 1:
                add(completions(region, False, slack - 1), 1, 0, j, j)
        else:
            j = region - 1
            add(completions(region, True, slack), 1, 0, -j, -j - 1)
            if region - 1 == 0:
                add(completions(0, False, slack), 0, 1, 0, 0)
            elif slack >= 1:
                add(completions(region - 1, False, slack - 1), 0, 1, 0, 0)
        return acc

    table = {}
    for (side, nr, nt, p, q), cnt in completions(0, True, max_order).items():
        if p > max_order or nr > max_events:
            continue
        key = (side, Monomial(nr, nt, p))
        if key in table and table[key][1] != q:
            raise AssertionError(f"inconsistent phase inside group {key}")
        prev = table.get(key, (0, q))[0]
        table[key] = (prev + cnt, q)
    return table


def _term_amplitudes(table, params, amps):
    k = amps.wavenumber
    keys = list(table)
    nr = np.array([m.n_reflections for _, m in keys])
    nt = np.array([m.n_transmissions for _, m in keys])
    p = np.array([m.order for _, m in keys])
    q = np.array([table[key][1] for key in keys])
    counts = np.array([table[key][0] for key in keys], dtype=float)
    phase = np.exp(2j * k * (p * params.spacing + q * params.width))
    return keys, counts * amps.reflection ** nr * amps.transmission ** nt * phase


def series_terms(params: ScatterParams, amps: BarrierAmplitudes, max_events: int) -> list[SeriesTerm]:
    """Same output as ``grouped_series_terms(enumerate_paths(...))``, via counting."""
    table = series_coefficients(params.n_barriers, max_events)
    keys, values = _term_amplitudes(table, params, amps)
    terms = [SeriesTerm(side, mono, table[(side, mono)][0], complex(v), table[(side, mono)][1])
             for (side, mono), v in zip(keys, values)]
    return sorted(terms, key=_term_order)


def path_partial_sum(params: ScatterParams, amps: BarrierAmplitudes, max_events: int,
                     exit_side: str = TRANSMITTED) -> complex:
    """Coherent sum of all paths of order ``<= max_events // 2`` leaving on ``exit_side``."""
    table = series_coefficients(params.n_barriers, max_events)
    table = {key: v for key, v in table.items() if key[0] == exit_side}
    if not table:
        return 0j
    _, values = _term_amplitudes(table, params, amps)
    return complex(values.sum())


def incoherent_sum(params: ScatterParams, amps: BarrierAmplitudes, max_events: int,
                   exit_side: str | None = None) -> float:
    """Sum of ``|amplitude|^2`` over individual paths (particle-limit bookkeeping)."""
    table = series_coefficients(params.n_barriers, max_events)
    r2, t2 = amps.reflectance, amps.transmittance
    total = 0.0
    for (side, m), (count, _) in table.items():
        if exit_side is None or side == exit_side:
            total += count * r2 ** m.n_reflections * t2 ** m.n_transmissions
    return total


def remainder_bound(n_barriers: int, amps: BarrierAmplitudes, max_events: int) -> float:
    """Upper bound on ``|T_N - path_partial_sum|`` for ``N`` in {2, 3, 4}.

    Marking every cavity round trip with ``zeta`` turns the transmitted
    amplitude into ``T^N / Q(zeta e^{2i alpha})`` with the polynomial ``Q``
    of :func:`transmission_denominator`, and the coefficient of ``zeta^p`` is
    the sum of all paths of exit order ``p``.  Partial fractions over the
    roots ``z_i`` of ``Q`` make each contribution a geometric series of ratio
    ``1/|z_i|``; the bound adds up the moduli of their tails.  For two
    barriers it is exactly ``|T|^2 |R|^{2(P+1)} / (1 - |R|^2)`` with
    ``P = max_events // 2``.
    """
    _check_budget(n_barriers, max_events)
    Q = transmission_denominator(n_barriers, amps)
    dQ = Q.deriv()
    order = max_events // 2
    total = 0.0
    for z in Q.roots():
        ratio = 1.0 / abs(z)
        if ratio >= 1.0:
            return float("inf")
        total += ratio ** (order + 1) / ((1.0 - ratio) * abs(z * dQ(z)))
    return abs(amps.transmission) ** n_barriers * total
