"""Twin, triple and quadruple barriers in the wave limit: where they become transparent.

Run:  python3 demos/02_twin_resonance.py [--plot]
"""

import argparse

import numpy as np

from multitunnel import (ScatterParams, array_amplitudes, extrema_closed_form, extrema_numeric_scan,
                         resonance_distances, single_barrier, wave_probability)
from _plotting import plt, save


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    params = ScatterParams(0.5, 1.0)
    amps = single_barrier(params)
    print(f"Each barrier alone transmits {amps.mod_T_sq:.5f}.")
    for n in (2, 3, 4):
        print(f"\n{n} barriers, extrema over one period of alpha = phi + k * spacing:")
        scan = extrema_numeric_scan(n, amps)
        for e, s in zip(extrema_closed_form(n, amps), scan):
            print(f"  {e.kind:7s} cos(alpha) = {e.cos_alpha:+.6f}  value {e.value:.6f}  "
                  f"(scan agrees to {abs(e.value - s.value):.0e})  {e.formula}")
        spacings = resonance_distances(n, params.replace(n_barriers=n), 2)
        checks = [abs(array_amplitudes(params.replace(spacing=d, n_barriers=n)).transmission) ** 2 for d in spacings]
        print("  transparent at spacings " + ", ".join(f"{d:.4f}" for d in spacings)
              + f"; transfer matrix gives |T_N|^2 - 1 <= {max(abs(np.array(checks) - 1)):.0e}")
    print(f"\nFor two barriers those spacings are (2n+1) pi/sqrt(2): "
          + ", ".join(f"{(2 * n + 1) * np.pi / np.sqrt(2):.4f}" for n in range(4)))

    if args.plot and plt is not None:
        alpha = np.linspace(0, np.pi, 800)
        fig, ax = plt.subplots(figsize=(6, 3.5))
        for n in (2, 3, 4):
            ax.plot(np.cos(alpha), wave_probability(n, amps, alpha), label=f"N={n}")
        ax.set_xlabel("cos alpha")
        ax.set_ylabel("transmission")
        ax.legend()
        save(fig, "wave_limit_extrema.png")


if __name__ == "__main__":
    main()
