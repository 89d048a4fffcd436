"""Command-line tables: packet scans, profiles, path series, resonances, amplitudes.

Every output starts with the fully resolved configuration so a table can be
regenerated from its own header.  CSV files carry it as a ``#``-prefixed JSON
line; JSON files as the ``metadata`` object next to ``rows``.

Exit codes: 0 success, 2 usage error (nothing written), 3 quadrature
failure (partial results written and flagged).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .amplitudes import ScatterParams, phase_derivative, single_barrier
from .multibarrier import array_amplitudes, interference_state
from .paths import MAX_EVENTS, REFLECTED, TRANSMITTED, remainder_bound, series_terms
from .resonance import extrema_closed_form, resonance_distances, wave_probability
from .wavepacket import (
    SCAN_WIDTHS,
    SEPARATED_PACKET_WIDTH,
    PacketSpec,
    QuadratureError,
    exit_face,
    separated_packets_setup,
    spm_predictions,
    transition_scan,
    transmitted_profile,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


def _grid(text, name):
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise UsageError(f"{name} must look like start:stop:count, got {text!r}") from None
    if count < 2:
        raise UsageError(f"{name} needs at least 2 points, got {count}")
    return np.linspace(start, stop, count)


def _params(epsilon, width, spacing, n):
    try:
        return ScatterParams(epsilon, width, spacing, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _packet(epsilon0, width):
    try:
        return PacketSpec(epsilon0, width)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def _flatten(row):
    out = {}
    for key, value in row.items():
        if isinstance(value, (complex, np.complexfloating)):
            out[key + "_re"] = float(value.real)
            out[key + "_im"] = float(value.imag)
        elif isinstance(value, np.generic):
            out[key] = value.item()
        else:
            out[key] = value
    return out


def render(metadata, rows, columns, fmt):
    """Serialise a table; ``columns`` fixes the order (complex columns expand to _re/_im)."""
    flat = [_flatten(r) for r in rows]
    cols = []
    for c in columns:
        if flat and c + "_re" in flat[0]:
            cols += [c + "_re", c + "_im"]
        else:
            cols.append(c)
    if fmt == "json":
        doc = {"metadata": metadata, "rows": [{c: r[c] for c in cols} for r in flat]}
        return json.dumps(doc, sort_keys=True, indent=1, allow_nan=True) + "\n"
    buf = io.StringIO()
    buf.write("# " + json.dumps(metadata, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in flat:
        writer.writerow([_fmt(r[c]) for c in cols])
    return buf.getvalue()


def _base_metadata(args):
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    return {"command": args.command, "config": config, "version": __version__}


def run_scan(args):
    if args.delta_range is None:
        raise UsageError("scan needs a spacing grid: --delta-range start:stop:count (>= 2 points)")
    spacings = _grid(args.delta_range, "--delta-range")
    widths = args.packet_width or list(SCAN_WIDTHS)
    params = _params(args.epsilon0, args.width, 0.0, args.n_barriers)
    packets = [_packet(args.epsilon0, A) for A in widths]
    table = transition_scan(params, widths, spacings, tol=args.tol, on_error="flag")
    meta = _base_metadata(args)
    meta.update({
        "packet_widths": [float(A) for A in widths],
        "tail_mass_above_barrier": [p.tail_mass for p in packets],
        "failed_widths": table.failed,
        "converged": not table.failed,
    })
    if args.n_barriers in (2, 3, 4):
        periods = int(np.ceil(spacings.max() * params.wavenumber / np.pi)) + 1
        meta["resonant_spacings"] = [d for d in resonance_distances(args.n_barriers, params, periods)
                                     if spacings.min() <= d <= spacings.max()]
    rows = []
    for i, A in enumerate(table.widths):
        ok = float(A) not in table.failed
        for j, d in enumerate(table.spacings):
            rows.append({"delta": float(d), "A": float(A), "probability": float(table.probability[i, j]),
                         "error": float(table.error[i, j]), "converged": ok})
    status = EXIT_NUMERIC if table.failed else EXIT_OK
    return meta, rows, ["delta", "A", "probability", "error", "converged"], status


def run_profile(args):
    width = args.packet_width[-1] if args.packet_width else SEPARATED_PACKET_WIDTH
    spacing = 100.0 if args.delta is None else args.delta
    packet = _packet(args.epsilon0, width)
    params = _params(args.epsilon0, args.width, spacing, 2)
    if args.tau is None:
        _, _, tau = separated_packets_setup(width, args.epsilon0, args.width, spacing)
    else:
        tau = args.tau
    if tau < 0:
        raise UsageError("--tau must be non-negative")
    spm = spm_predictions(packet, params, tau)
    face = exit_face(params)
    if args.chi_range is not None:
        chi = _grid(args.chi_range, "--chi-range")
    else:
        lo = face
        hi = max(spm.x1, face) + 4 * width
        chi = np.linspace(lo, hi, int(np.ceil((hi - lo) / 0.25)) + 1)
    meta = _base_metadata(args)
    meta.update({"tau_resolved": tau, "x1": spm.x1, "x2": spm.x2, "separation": spm.x1 - spm.x2,
                 "exit_face": face, "tail_mass_above_barrier": packet.tail_mass, "converged": True})
    inside = chi[chi >= face]
    if inside.size == 0:
        print("warning: chi grid does not reach the transmitted region "
              f"(chi >= {face:g}); writing an empty table", file=sys.stderr)
        return meta, [], ["chi", "density"], EXIT_OK
    status = EXIT_OK
    try:
        dens = transmitted_profile(packet, params, inside, tau, tol=args.tol)
    except QuadratureError as exc:
        dens = np.abs(exc.estimate) ** 2
        meta["converged"] = False
        status = EXIT_NUMERIC
    rows = [{"chi": float(c), "density": float(v)} for c, v in zip(inside, dens)]
    return meta, rows, ["chi", "density"], status


def run_paths(args):
    n = args.n_barriers
    if not 1 <= n <= 4:
        raise UsageError("paths supports 1 to 4 barriers")
    if not 0 <= args.max_events <= MAX_EVENTS:
        raise UsageError(f"--max-events must lie in [0, {MAX_EVENTS}]")
    params = _params(args.epsilon, args.width, args.delta or 0.0, n)
    amps = single_barrier(params)
    ref = array_amplitudes(params)
    reference = {TRANSMITTED: ref.transmission, REFLECTED: ref.reflection}
    running = {TRANSMITTED: 0j, REFLECTED: 0j}
    rows = []
    for term in series_terms(params, amps, args.max_events):
        side = term.exit_side
        running[side] += term.amplitude
        m = term.monomial
        rows.append({"exit_side": side, "n_reflections": m.n_reflections,
                     "n_transmissions": m.n_transmissions, "order": m.order,
                     "width_power": term.width_power, "coefficient": term.coefficient,
                     "amplitude": term.amplitude, "partial_sum": running[side],
                     "reference": reference[side], "abs_error": abs(running[side] - reference[side])})
    meta = _base_metadata(args)
    meta["max_order"] = args.max_events // 2
    if n in (2, 3, 4):
        meta["transmitted_remainder_bound"] = remainder_bound(n, amps, args.max_events)
    cols = ["exit_side", "n_reflections", "n_transmissions", "order", "width_power", "coefficient",
            "amplitude", "partial_sum", "reference", "abs_error"]
    return meta, rows, cols, EXIT_OK


def run_resonances(args):
    n = args.n_barriers
    if n not in (2, 3, 4):
        raise UsageError("resonances supports 2, 3 or 4 barriers")
    params = _params(args.epsilon, args.width, 0.0, n)
    if not params.epsilon < 1:
        raise UsageError("resonant spacings are tabulated for epsilon < 1")
    amps = single_barrier(params)
    meta = _base_metadata(args)
    meta["extrema"] = [{"alpha": e.alpha, "cos_alpha": e.cos_alpha, "kind": e.kind,
                        "value": e.value, "formula": e.formula} for e in extrema_closed_form(n, amps)]
    rows = []
    for d in resonance_distances(n, params, args.n_max):
        alpha = interference_state(amps, d).alpha
        ts = array_amplitudes(params.replace(spacing=d)).transmission
        rows.append({"delta": d, "alpha": float(alpha), "cos_alpha": float(np.cos(alpha)),
                     "probability": abs(ts) ** 2})
    return meta, rows, ["delta", "alpha", "cos_alpha", "probability"], EXIT_OK


def run_amplitudes(args):
    if args.delta_range is not None:
        spacings = _grid(args.delta_range, "--delta-range")
    else:
        spacings = np.array([args.delta or 0.0])
    rows = []
    for d in spacings:
        params = _params(args.epsilon, args.width, float(d), args.n_barriers)
        amps = single_barrier(params)
        arr = array_amplitudes(params)
        row = {"delta": float(d), "R": amps.reflection, "T": amps.transmission, "phi": amps.phase,
               "mod_R_sq": amps.reflectance, "mod_T_sq": amps.transmittance,
               "alpha": float(interference_state(amps, float(d)).alpha),
               "Rs": arr.reflection, "Ts": arr.transmission,
               "Ts_sq": abs(arr.transmission) ** 2}
        if 0 < params.epsilon < 1:
            pd = phase_derivative(params)
            row["dphi_dk"], row["dphi_dE"] = pd.dphi_dk, pd.dphi_dE
        else:
            row["dphi_dk"] = row["dphi_dE"] = float("nan")
        if args.n_barriers in (2, 3, 4):
            row["wave_probability"] = wave_probability(args.n_barriers, amps, row["alpha"])
        else:
            row["wave_probability"] = row["Ts_sq"]
        rows.append(row)
    cols = ["delta", "R", "T", "phi", "mod_R_sq", "mod_T_sq", "alpha", "Rs", "Ts", "Ts_sq",
            "wave_probability", "dphi_dk", "dphi_dE"]
    return _base_metadata(args), rows, cols, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multitunnel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, energy="--epsilon", default_n=2):
        if energy == "--epsilon0":
            p.add_argument("--epsilon0", type=float, default=0.5, help="central energy E0/V0 of the packet")
        else:
            p.add_argument("--epsilon", type=float, default=0.5, help="energy E/V0")
        p.add_argument("--lambda", dest="width", type=float, default=1.0, help="barrier width")
        p.add_argument("--n-barriers", type=int, default=default_n)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--tol", type=float, default=1e-8, help="absolute quadrature tolerance")

    p = sub.add_parser("scan", help="packet transmission probability against spacing")
    common(p, energy="--epsilon0")
    p.add_argument("--delta-range", default=None, metavar="A:B:N")
    p.add_argument("--packet-width", type=float, action="append", metavar="A")
    p.set_defaults(func=run_scan)

    p = sub.add_parser("profile", help="transmitted probability density of a twin-barrier packet")
    common(p, energy="--epsilon0")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--packet-width", type=float, action="append", metavar="A")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--chi-range", default=None, metavar="A:B:N")
    p.set_defaults(func=run_profile)

    p = sub.add_parser("paths", help="grouped bounce-path series against the transfer matrix")
    common(p)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--max-events", type=int, default=24)
    p.set_defaults(func=run_paths)

    p = sub.add_parser("resonances", help="extrema in alpha and resonant spacings")
    common(p)
    p.add_argument("--n-max", type=int, default=3, help="number of spacing periods")
    p.set_defaults(func=run_resonances)

    p = sub.add_parser("amplitudes", help="single-barrier and array amplitudes")
    common(p, default_n=1)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--delta-range", default=None, metavar="A:B:N")
    p.set_defaults(func=run_amplitudes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        meta, rows, cols, status = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(meta, rows, cols, args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    if status == EXIT_NUMERIC:
        print("error: quadrature did not converge; partial results are flagged", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
