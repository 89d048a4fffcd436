"""One rectangular barrier: amplitudes, unitarity and the saturating phase delay.

Run:  python3 demos/01_single_barrier.py [--plot]
"""

import argparse

import numpy as np

from multitunnel import ScatterParams, barrier_amplitudes, phase_derivative, single_barrier
from _plotting import plt, save


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    amps = single_barrier(ScatterParams(0.5, 1.0))
    print("Half the barrier height, unit width:")
    print(f"  |T|^2 = {amps.mod_T_sq:.12f}   |R|^2 = {amps.mod_R_sq:.12f}   sum - 1 = {amps.mod_T_sq + amps.mod_R_sq - 1:.1e}")
    print(f"  phase of T relative to free motion: {amps.phi:.3e} (it vanishes at half height)")

    eps = np.linspace(0.01, 4.0, 400)
    R, T, _ = barrier_amplitudes(eps, 1.0)
    print(f"\nAcross 0 < epsilon <= 4 unitarity holds to {np.max(np.abs(abs(R)**2 + abs(T)**2 - 1)):.1e}")

    print("\nThe phase slope saturates as the barrier widens (the delay stops growing):")
    widths = [1, 2, 5, 10, 20]
    for w in widths:
        print(f"  width {w:>2}: dphi/dk = {phase_derivative(ScatterParams(0.5, w)).dphi_dk:.10f}")

    if args.plot and plt is not None:
        fig, ax = plt.subplots(1, 2, figsize=(9, 3.5))
        ax[0].plot(eps, abs(T) ** 2, label="|T|^2")
        ax[0].plot(eps, abs(R) ** 2, label="|R|^2")
        ax[0].axvline(1.0, color="grey", lw=0.5)
        ax[0].set_xlabel("E / V0")
        ax[0].legend()
        ws = np.linspace(0.2, 20, 120)
        ax[1].plot(ws, [phase_derivative(ScatterParams(0.5, w)).dphi_dk for w in ws])
        ax[1].set_xlabel("barrier width")
        ax[1].set_ylabel("dphi/dk")
        save(fig, "single_barrier.png")


if __name__ == "__main__":
    main()
