"""Building the array transmission one bounce at a time.

Every path through the array is a chain of tunnellings and reflections; paths
that leave together interfere.  Summing them order by order converges to the
transfer-matrix answer, and the integer path counts are the series coefficients.

Run:  python3 demos/03_bounce_paths.py
"""

from multitunnel import (ScatterParams, array_amplitudes, enumerate_paths, grouped_series_terms,
                         path_partial_sum, remainder_bound, single_barrier)


def main():
    params = ScatterParams(0.5, 1.0, 2.0, 3)
    amps = single_barrier(params)
    terms = grouped_series_terms(enumerate_paths(params, amps, 8))
    print("Three barriers, transmitted paths grouped by (reflections, tunnellings, extra round trips):")
    for t in terms:
        if t.exit_side == "transmitted" and t.monomial.order <= 3:
            m = t.monomial
            print(f"  R^{m.n_reflections:<2d} T^{m.n_transmissions:<2d} round trips {m.order}: {t.coefficient:3d} paths")

    print("\nPartial sums against the transfer matrix:")
    for n, spacing in ((2, 2.0), (3, 2.0), (4, 2.0)):
        p = ScatterParams(0.5, 1.0, spacing, n)
        exact = array_amplitudes(p).transmission
        print(f"  N={n}")
        for budget in (4, 8, 16, 24):
            err = abs(path_partial_sum(p, amps, budget) - exact)
            print(f"    up to {budget // 2:2d} round trips: error {err:.2e}  (bound {remainder_bound(n, amps, budget):.2e})")


if __name__ == "__main__":
    main()
