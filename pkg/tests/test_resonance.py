import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multitunnel import (
    ScatterParams,
    array_amplitudes,
    asymmetric_pair_transmission,
    extrema_closed_form,
    extrema_numeric_scan,
    interference_state,
    resonance_distances,
    single_barrier,
    wave_probability,
    wave_reflection_probability,
)

from conftest import T2_HALF


class TestWaveProbability:
    def test_twin_transparency(self, half_amps):
        assert wave_probability(2, half_amps, np.pi / 2) == pytest.approx(1.0, abs=1e-15)

    def test_twin_minimum(self, half_amps):
        np.testing.assert_allclose(wave_probability(2, half_amps, 0.0), 0.21077109396613054, rtol=1e-13)
        np.testing.assert_allclose(wave_probability(2, half_amps, np.pi), 0.21077109396613054, rtol=1e-13)

    def test_triple_at_quarter_period(self, half_amps):
        np.testing.assert_allclose(wave_probability(3, half_amps, np.pi / 2), T2_HALF, rtol=1e-13)

    @given(st.floats(0.01, 0.99), st.floats(0.0, np.pi))
    def test_twin_conservation(self, eps, alpha):
        a = single_barrier(ScatterParams(eps, 1.0))
        total = wave_probability(2, a, alpha) + wave_reflection_probability(a, alpha)
        assert abs(total - 1) < 1e-13

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_matrix(self, n):
        p = ScatterParams(0.62, 0.7, 2.9, n)
        a = single_barrier(p)
        alpha = interference_state(a, p.spacing).alpha
        np.testing.assert_allclose(wave_probability(n, a, alpha),
                                   abs(array_amplitudes(p).transmission) ** 2, rtol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_pi_periodic(self, n, half_amps):
        alpha = np.linspace(0, np.pi, 33)
        np.testing.assert_allclose(wave_probability(n, half_amps, alpha),
                                   wave_probability(n, half_amps, alpha + np.pi), rtol=1e-12)

    @pytest.mark.parametrize("eps", [1.2, 2.0, 6.0])
    def test_above_barrier_quarter_phase_resonance(self, eps):
        a = single_barrier(ScatterParams(eps, 0.9))
        assert a.mod_T_sq < 1
        np.testing.assert_allclose(wave_probability(2, a, np.pi / 2), 1.0, atol=1e-14)
        alphas = np.linspace(0, np.pi, 1001)
        vals = wave_probability(2, a, alphas)
        assert np.all(vals[np.abs(np.cos(alphas)) > 1e-3] < 1)
        # and through the matrix, at the spacing realising cos(alpha) = 0
        s = (np.pi / 2 - a.phi) % np.pi / a.wavenumber
        ts = array_amplitudes(ScatterParams(eps, 0.9, s, 2)).transmission
        np.testing.assert_allclose(abs(ts), 1.0, atol=1e-12)

    def test_rejects_other_n(self, half_amps):
        with pytest.raises(ValueError):
            wave_probability(5, half_amps, 0.0)


class TestClosedFormExtrema:
    def test_twin(self, half_amps):
        ext = extrema_closed_form(2, half_amps)
        assert [(e.kind, e.alpha) for e in ext] == [("minimum", 0.0), ("maximum", np.pi / 2)]

    def test_triple_values(self, half_amps):
        ext = extrema_closed_form(3, half_amps)
        assert [e.kind for e in ext] == ["minimum", "maximum", "minimum", "maximum"]
        np.testing.assert_allclose(ext[0].value, 0.055861437216915119, rtol=1e-12)
        np.testing.assert_allclose(ext[2].value, T2_HALF, rtol=1e-13)
        np.testing.assert_allclose(ext[1].cos_alpha, np.sqrt(T2_HALF) / 2, rtol=1e-14)

    def test_quadruple_values(self, half_amps):
        ext = extrema_closed_form(4, half_amps)
        assert [e.kind for e in ext] == ["minimum", "maximum", "minimum", "maximum", "minimum", "maximum"]
        np.testing.assert_allclose(ext[0].value, 0.013876830629264461, rtol=1e-12)
        np.testing.assert_allclose(ext[2].value, 0.58886473913298823, rtol=1e-12)
        np.testing.assert_allclose(ext[2].cos_alpha, np.sqrt(T2_HALF / 6), rtol=1e-13)
        unity = [e for e in ext if e.kind == "maximum"]
        np.testing.assert_allclose(sorted(abs(e.cos_alpha) for e in unity),
                                   [0.0, np.sqrt(T2_HALF / 2), np.sqrt(T2_HALF / 2)], atol=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_values_match_wave_probability(self, n, half_amps):
        for e in extrema_closed_form(n, half_amps):
            np.testing.assert_allclose(wave_probability(n, half_amps, e.alpha), e.value, atol=1e-12)
            assert 0 <= e.alpha < np.pi
            assert e.formula

    def test_quadruple_interior_minimum_is_local(self, half_amps):
        ext = extrema_closed_form(4, half_amps)
        assert ext[2].value > ext[0].value


class TestNumericScan:
    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("eps", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_confirms_closed_forms(self, n, eps, lam):
        a = single_barrier(ScatterParams(eps, lam))
        ref = extrema_closed_form(n, a)
        got = extrema_numeric_scan(n, a)
        assert len(got) == len(ref)
        for g, r in zip(got, ref):
            assert g.kind == r.kind
            assert abs(g.alpha - r.alpha) < 1e-8
            assert abs(g.value - r.value) < 1e-10

    def test_twin_single_maximum(self, half_amps):
        ext = extrema_numeric_scan(2, half_amps)
        assert [e.kind for e in ext] == ["minimum", "maximum"]
        assert ext[0].alpha == 0.0

    def test_triple_roots_of_derivative_condition(self, half_amps):
        # extrema solve sin(2a) [1 + |R|^2 + 2 cos(2a)] = 0 ... in the |T| form
        ext = extrema_numeric_scan(3, half_amps)
        assert len(ext) == 4
        c = np.cos(2 * np.array([e.alpha for e in ext]))
        interior = c[np.abs(np.sin(2 * np.array([e.alpha for e in ext]))) > 1e-6]
        np.testing.assert_allclose(np.cos([ext[1].alpha]) ** 2, T2_HALF / 4, rtol=1e-9)
        assert interior.size == 2

    def test_grid_floor(self, half_amps):
        with pytest.raises(ValueError):
            extrema_numeric_scan(2, half_amps, grid_size=100)


class TestResonanceDistances:
    def test_twin_half(self, half):
        d = resonance_distances(2, half, 3)
        np.testing.assert_allclose(d, (2 * np.arange(3) + 1) * np.pi / np.sqrt(2), atol=1e-12)

    @pytest.mark.parametrize("eps", [0.15, 0.4, 0.85])
    def test_twin_general(self, eps):
        p = ScatterParams(eps, 1.3, 0.0, 2)
        for d in resonance_distances(2, p, 4):
            ts = array_amplitudes(p.replace(spacing=d)).transmission
            assert abs(abs(ts) ** 2 - 1) < 1e-10

    def test_triple_first_resonance(self, half):
        d = resonance_distances(3, half, 1)
        np.testing.assert_allclose(d[0], 1.6446506278882088, rtol=1e-13)
        for x in d:
            assert abs(abs(array_amplitudes(half.replace(spacing=x, n_barriers=3)).transmission) - 1) < 1e-10

    def test_quadruple_all_transparent(self):
        p = ScatterParams(0.3, 0.8, 0.0, 4)
        d = resonance_distances(4, p, 2)
        assert len(d) == 6 and d == sorted(d)
        for x in d:
            assert abs(abs(array_amplitudes(p.replace(spacing=x)).transmission) - 1) < 1e-10

    def test_range(self, half):
        d = resonance_distances(2, half, 5)
        assert min(d) > 0 and max(d) <= 5 * np.pi / half.wavenumber

    def test_domain(self):
        with pytest.raises(ValueError):
            resonance_distances(2, ScatterParams(1.5, 1.0), 2)
        with pytest.raises(ValueError):
            resonance_distances(2, ScatterParams(0.5, 1.0), 0)


class TestUnequalPairs:
    def test_no_unity_peak(self, rng):
        kd = np.linspace(0.0, np.pi, 10 ** 5)
        for _ in range(5):
            eps = rng.uniform(0.1, 0.9)
            a1 = single_barrier(ScatterParams(eps, rng.uniform(0.3, 2.5)))
            a2 = single_barrier(ScatterParams(eps, rng.uniform(0.3, 2.5)), height=rng.uniform(0.5, 2.0) + 1.0)
            ts = asymmetric_pair_transmission(a1, a2, kd, wavenumber=1.0)
            assert np.max(np.abs(ts) ** 2) < 1 - 1e-6
