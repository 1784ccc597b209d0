import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from edgewave.datasets import nearest_pairs_graph
from edgewave.exceptions import ConfigError
from edgewave.graph import build_graph, laplacian, line_graph
from edgewave.spectral import (
    FilterSpectrum,
    apply_filter,
    bandlimited_filter,
    filter_projector,
    forward_gft,
    gft_basis,
    inverse_gft,
    lowpass_filter,
)

from conftest import small_random_graphs

K2 = np.array([[1.0, -1.0], [-1.0, 1.0]])
finite = st.floats(-1e3, 1e3, allow_nan=False)


def charpoly_roots(M):
    lam = sympy.symbols("lam")
    poly = sympy.Matrix(M).charpoly(lam)
    return sorted(float(sympy.re(r)) for r in sympy.Poly(poly, lam).nroots())


class TestBasis:
    def test_k2_closed_form(self):
        b = gft_basis(K2)
        np.testing.assert_allclose(b.eigenvalues, [0, 2], atol=1e-12)
        r = 1 / np.sqrt(2)
        np.testing.assert_allclose(b.U[:, 0], [r, r], atol=1e-12)
        np.testing.assert_allclose(b.U[:, 1], [r, -r], atol=1e-12)

    def test_p3_eigenvalues(self, p3):
        L = laplacian(p3)
        expected = charpoly_roots(L)
        np.testing.assert_allclose(expected, [0, 1, 3], atol=1e-12)
        np.testing.assert_allclose(gft_basis(L).eigenvalues, expected, atol=1e-12)

    def test_zero_matrix(self):
        b = gft_basis(np.zeros((3, 3)))
        np.testing.assert_array_equal(b.eigenvalues, 0)
        np.testing.assert_allclose(b.U.T @ b.U, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(b.U @ np.diag(b.eigenvalues) @ b.U.T, 0)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            gft_basis([[0.0, 1.0], [0.0, 0.0]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            gft_basis(np.zeros((2, 3)))

    def test_invariants_on_line_graphs(self):
        for g in small_random_graphs(40):
            L = line_graph(g).laplacian()
            b = gft_basis(L)
            lam, U = b.eigenvalues, b.U
            assert np.all(np.diff(lam) >= 0)
            assert lam.min() >= -1e-9
            assert np.min(np.abs(lam)) <= 1e-9
            assert np.max(np.abs(U.T @ U - np.eye(b.size))) <= 1e-9
            assert np.max(np.abs(U @ np.diag(lam) @ U.T - L)) <= 1e-8
            # largest-magnitude entry (first on ties) is positive
            absU = np.abs(U)
            lead = np.argmax(absU >= absU.max(axis=0) * (1 - 1e-10), axis=0)
            assert np.all(U[lead, np.arange(b.size)] > 0)

    def test_deterministic(self, sioux):
        L = line_graph(sioux).laplacian()
        a, b = gft_basis(L), gft_basis(L.copy())
        assert np.array_equal(a.U, b.U)
        assert np.array_equal(a.eigenvalues, b.eigenvalues)

    def test_basis_is_read_only(self):
        b = gft_basis(K2)
        with pytest.raises(ValueError):
            b.U[0, 0] = 3.0


class TestTransforms:
    def test_eigenvector_maps_to_unit_vector(self, sioux_basis):
        for j in (0, 7, 37):
            s = forward_gft(sioux_basis, sioux_basis.U[:, j])
            np.testing.assert_allclose(s, np.eye(38)[j], atol=1e-12)

    def test_zero(self, sioux_basis):
        np.testing.assert_array_equal(forward_gft(sioux_basis, np.zeros(38)), 0)
        np.testing.assert_array_equal(inverse_gft(sioux_basis, np.zeros(38)), 0)

    def test_k2(self):
        b = gft_basis(K2)
        np.testing.assert_allclose(forward_gft(b, [1, 1]), [np.sqrt(2), 0], atol=1e-12)
        np.testing.assert_allclose(inverse_gft(b, [np.sqrt(2), 0]), [1, 1], atol=1e-12)

    def test_dimension_mismatch(self, sioux_basis):
        with pytest.raises(ValueError):
            forward_gft(sioux_basis, np.zeros(5))
        with pytest.raises(ValueError):
            inverse_gft(sioux_basis, np.zeros(5))

    def test_round_trip_random(self, sioux_basis, rng):
        X = rng.normal(size=(100, 38))
        err = np.max(np.abs(inverse_gft(sioux_basis, forward_gft(sioux_basis, X)) - X))
        assert err <= 1e-10

    @settings(max_examples=50, deadline=None)
    @given(arrays(float, 38, elements=finite))
    def test_parseval(self, sioux_basis, x):
        s = forward_gft(sioux_basis, x)
        assert abs(np.linalg.norm(s) - np.linalg.norm(x)) <= 1e-10 * max(1.0, np.linalg.norm(x))

    def test_round_trip_818_scale(self, rng):
        g = nearest_pairs_graph(197, 818, seed=0)
        b = gft_basis(line_graph(g).laplacian())
        X = rng.normal(size=(20, 818))
        assert np.max(np.abs(inverse_gft(b, forward_gft(b, X)) - X)) <= 1e-10


class TestFilters:
    def test_lowpass_identity(self):
        b = gft_basis(laplacian(build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])))
        np.testing.assert_array_equal(lowpass_filter(b, 5).gains, np.ones(5))
        np.testing.assert_array_equal(lowpass_filter(b, 1).gains, [1, 0, 0, 0, 0])

    def test_lowpass_p3_dual(self, p3_dual_basis):
        f = lowpass_filter(p3_dual_basis, 1)
        np.testing.assert_array_equal(f.gains, [1, 0])
        np.testing.assert_allclose(apply_filter(p3_dual_basis, f, [3.0, 3.0]), [3, 3])

    @pytest.mark.parametrize("k", [0, 6, 2.5])
    def test_lowpass_rejects_bad_k(self, k):
        b = gft_basis(np.zeros((5, 5)))
        with pytest.raises(ConfigError):
            lowpass_filter(b, k)

    def test_bandlimited_picks_reference_bin(self, sioux_basis):
        ref = np.tile(sioux_basis.U[:, 11], (4, 1))
        f = bandlimited_filter(sioux_basis, ref, 1)
        assert list(f.support) == [11]

    def test_bandlimited_full_band(self, sioux_basis, rng):
        f = bandlimited_filter(sioux_basis, rng.normal(size=(3, 38)), 38)
        np.testing.assert_array_equal(f.gains, 1)

    def test_bandlimited_energy_ratio(self, p3):
        b = gft_basis(laplacian(p3))
        ref = b.U[:, 0] + 0.1 * b.U[:, 2]
        assert list(bandlimited_filter(b, ref[None, :], 1).support) == [0]
        assert list(bandlimited_filter(b, ref[None, :], 2).support) == [0, 2]

    def test_bandlimited_ties_prefer_lower_bin(self, p3):
        b = gft_basis(laplacian(p3))
        ref = b.U[:, 1] + b.U[:, 2]
        assert list(bandlimited_filter(b, ref, 1).support) == [1]

    def test_bandlimited_rejects(self, sioux_basis):
        with pytest.raises(ValueError):
            bandlimited_filter(sioux_basis, np.zeros((0, 38)), 3)
        with pytest.raises(ConfigError):
            bandlimited_filter(sioux_basis, np.zeros((2, 38)), 0)

    def test_gains_validated(self):
        with pytest.raises(ValueError):
            FilterSpectrum(np.array([0.5, 1.5]))
        assert not FilterSpectrum(np.array([0.5, 1.0])).is_binary

    def test_apply_identity_and_zero(self, sioux_basis, rng):
        x = rng.normal(size=38)
        np.testing.assert_allclose(apply_filter(sioux_basis, FilterSpectrum(np.ones(38)), x), x, atol=1e-10)
        np.testing.assert_allclose(apply_filter(sioux_basis, FilterSpectrum(np.zeros(38)), x), 0, atol=1e-15)

    def test_apply_dimension_mismatch(self, sioux_basis):
        with pytest.raises(ValueError):
            apply_filter(sioux_basis, lowpass_filter(sioux_basis, 3), np.zeros(7))

    @settings(max_examples=40, deadline=None)
    @given(
        gains=arrays(float, 38, elements=st.sampled_from([0.0, 1.0])),
        x=arrays(float, 38, elements=finite),
    )
    def test_binary_filter_is_projector(self, sioux_basis, gains, x):
        f = FilterSpectrum(gains)
        once = apply_filter(sioux_basis, f, x)
        twice = apply_filter(sioux_basis, f, once)
        np.testing.assert_allclose(twice, once, atol=1e-10 * max(1.0, np.abs(x).max()))
        P = filter_projector(sioux_basis, f)
        assert np.max(np.abs(P @ P - P)) <= 1e-9
        assert np.max(np.abs(P - P.T)) <= 1e-9

    def test_batched_apply_matches_rowwise(self, sioux_basis, rng):
        f = lowpass_filter(sioux_basis, 10)
        X = rng.normal(size=(5, 38))
        rows = np.stack([apply_filter(sioux_basis, f, x) for x in X])
        np.testing.assert_allclose(apply_filter(sioux_basis, f, X), rows, atol=1e-12)
