"""A narrow packet through widely spaced barriers leaves as separate packets.

The first packet tunnels straight through; the second made one extra round
trip in the cavity.  Their positions follow from stationary phase applied to
each term of the bounce series; stationary phase on the summed amplitude
instead points between them, where there is no packet at all.

Run:  python3 demos/05_packet_profile.py [--plot]
"""

import argparse

import numpy as np

from multitunnel import separated_packets_setup, spm_predictions, summed_phase_stationary_point, transmitted_profile
from multitunnel.wavepacket import exit_face
from _plotting import plt, save


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    packet, params, tau = separated_packets_setup()
    spm = spm_predictions(packet, params, tau)
    chi = np.arange(exit_face(params), spm.x1 + 4 * packet.width, 0.25)
    dens = transmitted_profile(packet, params, chi, tau)

    inner = np.flatnonzero((dens[1:-1] > dens[:-2]) & (dens[1:-1] >= dens[2:]) & (dens[1:-1] > 1e-3 * dens.max())) + 1
    print(f"packet width {packet.width:g}, spacing {params.spacing:g}, time {tau:.1f}")
    print("profile maxima at " + ", ".join(f"{chi[i]:.2f}" for i in inner))
    print(f"stationary phase per term: {spm.x2:.2f} and {spm.x1:.2f}")
    print(f"stationary phase of the summed amplitude: {summed_phase_stationary_point(packet, params, tau):.2f}")

    if args.plot and plt is not None:
        fig, ax = plt.subplots(figsize=(7, 3.5))
        ax.plot(chi, dens)
        for x in (spm.x1, spm.x2):
            ax.axvline(x, color="k", lw=0.6)
        ax.set_xlabel("x")
        ax.set_ylabel("|psi|^2")
        save(fig, "packet_profile.png")


if __name__ == "__main__":
    main()
