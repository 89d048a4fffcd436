"""Gaussian packets on a barrier pair: resonances fade as the spacing outgrows the packet.

Run:  python3 demos/04_wave_to_particle.py [--plot]   (about 30 s)
"""

import argparse

import numpy as np

from multitunnel import ScatterParams, particle_limit_probabilities, single_barrier, transition_scan
from _plotting import plt, save


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    params = ScatterParams(0.5, 1.0, 0.0, 2)
    plateau = particle_limit_probabilities(single_barrier(params)).transmission
    spacings = np.arange(0.5, 80.0, 0.05)
    table = transition_scan(params, [20.0, 30.0, 100.0], spacings)
    print(f"Incoherent (particle) limit: {plateau:.5f}")
    for row, A in enumerate(table.widths):
        amp = table.period_amplitudes(row)
        first = table.local_maxima(row)[:3]
        print(f"\npacket width {A:g}")
        print("  first maxima at spacing " + ", ".join(f"{m:.2f}" for m in first)
              + "  (plane-wave resonances at 2.22, 6.66, 11.11)")
        print("  oscillation amplitude per period: " + " ".join(f"{a:.1e}" for a in amp[:8]) + " ...")
        print(f"  late-spacing mean {table.probability[row, -200:].mean():.5f}")

    if args.plot and plt is not None:
        fig, ax = plt.subplots(figsize=(7, 3.5))
        for row, A in enumerate(table.widths):
            ax.plot(spacings, table.probability[row], lw=0.8, label=f"A={A:g}")
        ax.axhline(plateau, ls=":", color="k", label="particle limit")
        ax.set_xlabel("spacing")
        ax.set_ylabel("transmission")
        ax.legend()
        save(fig, "wave_to_particle.png")


if __name__ == "__main__":
    main()
