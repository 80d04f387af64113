import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from pyhopf.ambient import (Signature, TolerancePolicy, DEFAULT_TOLERANCES, as_vector,
                            realify, complexify, herm_product, real_metric, apply_J,
                            conjugate_vector, causal_character, FrameAtPoint, orthonormal_complement,
                            sphere_geodesic, curvature_bar, s1_equivalent,
                            indefinite_unitary, is_indefinite_unitary)
from pyhopf.catalog import q_polynomial
from pyhopf.errors import DimensionError, PreconditionError, DegeneracyError


def axis(sig, k, c = 1.0):
    e = np.zeros(sig.dim, dtype = complex)
    e[k] = c
    return e


def boosted_point(sig, a = 0.7):
    """cosh(a) e_p + sinh(a) e_0 lies on the hyperquadric"""
    return np.cosh(a) * axis(sig, sig.p) + np.sinh(a) * axis(sig, 0)


class TestSignature:

    def test_diagonal(self, sig):
        assert_array_equal(sig.diag, [-1, -1, 1, 1, 1])
        assert sig.dim == 5
        assert sig.realDim == 10
        assert sig.index == 4
        assert_array_equal(sig.realDiag, np.concatenate([sig.diag, sig.diag]))

    def test_real_metric_matrix(self, sig, rng):
        z = rng.standard_normal(sig.dim) + 1j * rng.standard_normal(sig.dim)
        w = rng.standard_normal(sig.dim) + 1j * rng.standard_normal(sig.dim)
        G = sig.getRealMetricMatrix()
        assert G.shape == (sig.realDim, sig.realDim)
        assert_allclose(realify(z) @ G @ realify(w), real_metric(z, w, sig), rtol = 1e-12)

    @pytest.mark.parametrize('n,p', [(4, 0), (4, 4), (1, 1), (4, 6)])
    def test_strict_rejects(self, n, p):
        with pytest.raises(PreconditionError):
            Signature(n, p)

    def test_loose_allows_small_spaces(self):
        s = Signature(1, 1, strict = False)
        assert_array_equal(s.diag, [-1, 1])

    def test_equality(self, sig):
        assert sig == Signature(4, 2)
        assert sig != Signature(4, 1)
        assert hash(sig) == hash(Signature(4, 2))


class TestTolerancePolicy:

    def test_defaults(self):
        t = TolerancePolicy()
        assert t.constraint_tol == 1e-10
        assert t.eig_cluster_tol == 1e-6
        assert t.newton_max_iter == 50
        assert t == DEFAULT_TOLERANCES

    def test_replace(self):
        t = DEFAULT_TOLERANCES.replace(h = 1e-4)
        assert t.h == 1e-4
        assert DEFAULT_TOLERANCES.h == 1e-5

    def test_immutable(self):
        with pytest.raises(AttributeError):
            DEFAULT_TOLERANCES.h = 1.0

    def test_bad_values(self):
        with pytest.raises(PreconditionError):
            TolerancePolicy(unknown = 1.0)
        with pytest.raises(PreconditionError):
            TolerancePolicy(h = -1.0)
        with pytest.raises(PreconditionError):
            TolerancePolicy(newton_tol = 1e-6)


class TestVectors:

    def test_as_vector_checks_length(self, sig):
        with pytest.raises(DimensionError):
            as_vector(np.zeros(3), sig)

    def test_realify_inverse(self, sig, rng):
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert_allclose(complexify(realify(v)), v)

    def test_hermitian_product(self, sig, rng):
        z = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        w = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert_allclose(herm_product(z, w, sig), np.conj(herm_product(w, z, sig)))
        assert_allclose(herm_product(1j * z, w, sig), 1j * herm_product(z, w, sig))
        assert herm_product(axis(sig, 0), axis(sig, 0), sig) == -1.0
        assert herm_product(axis(sig, 3), axis(sig, 3), sig) == 1.0

    def test_real_metric_and_J(self, sig, rng):
        z = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert abs(real_metric(z, apply_J(z), sig)) < 1e-14
        assert_allclose(real_metric(apply_J(z), apply_J(z), sig), real_metric(z, z, sig))

    def test_causal_character(self, sig):
        assert causal_character(axis(sig, 0), sig) == 'timelike'
        assert causal_character(axis(sig, 2), sig) == 'spacelike'
        assert causal_character(axis(sig, 0) + axis(sig, 2), sig) == 'null'

    def test_conjugate(self, sig, rng):
        z = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        assert_array_equal(conjugate_vector(conjugate_vector(z)), z)
        assert_allclose(herm_product(z, conjugate_vector(z), sig), q_polynomial(z, sig))
        assert_allclose(q_polynomial(1j * z, sig), -q_polynomial(z, sig))


class TestFrames:

    def test_orthonormal_complement(self, sig, tol):
        z = boosted_point(sig)
        frame = orthonormal_complement([z, 1j * z], sig, tol, base = z)
        assert len(frame) == 2 * sig.n
        assert frame.orthonormalityDefect() < 1e-12
        for e in frame.vectors:
            assert abs(real_metric(e, z, sig)) < 1e-12
            assert abs(real_metric(e, 1j * z, sig)) < 1e-12
        # z and iz are spacelike, so all 2p timelike directions remain
        assert np.sum(frame.signs < 0) == 2 * sig.p
        assert np.sum(frame.signs > 0) == 2 * sig.n - 2 * sig.p

    def test_degenerate_span(self, sig, tol):
        null = axis(sig, 0) + axis(sig, 2)
        with pytest.raises(DegeneracyError) as e:
            orthonormal_complement([null], sig, tol)
        assert e.value.deficiency == 1

    def test_coordinates(self, sig, tol, rng):
        frame = orthonormal_complement([], sig, tol)
        c = rng.standard_normal(len(frame))
        assert_allclose(frame.coordinates(frame.expand(c)), c, atol = 1e-12)
        loose = FrameAtPoint(None, frame.vectors[:4] + frame.vectors[4:8], sig)
        c = rng.standard_normal(4)
        assert_allclose(loose.coordinates(loose.expand(c)), c, atol = 1e-12)

    def test_project_needs_orthonormal(self, sig):
        loose = FrameAtPoint(None, [axis(sig, 0)], sig)
        with pytest.raises(PreconditionError):
            loose.project(axis(sig, 1))

    def test_matrix_of_J(self, sig, tol):
        frame = orthonormal_complement([], sig, tol)
        M = frame.matrixOf(apply_J)
        assert_allclose(M @ M, -np.eye(len(frame)), atol = 1e-12)


class TestGeometry:

    def test_sphere_geodesic(self, sig, tol):
        z = axis(sig, 2)
        v = axis(sig, 3)
        for s in np.linspace(0.0, 3.0, 7):
            w = sphere_geodesic(z, v, s, sig, tol)
            assert abs(real_metric(w, w, sig) - 1.0) < 1e-14

    def test_sphere_geodesic_rejects(self, sig, tol):
        with pytest.raises(PreconditionError):
            sphere_geodesic(axis(sig, 2), axis(sig, 2), 0.1, sig, tol)
        with pytest.raises(PreconditionError):
            sphere_geodesic(axis(sig, 0), axis(sig, 2), 0.1, sig, tol)

    def test_holomorphic_sectional_curvature(self, sig, rng):
        for k in range(5):
            X = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            nrm = real_metric(X, X, sig)
            if abs(nrm) < 0.1:
                continue
            X = X / np.sqrt(abs(nrm))
            JX = apply_J(X)
            val = real_metric(curvature_bar(X, JX, JX, sig), X, sig)
            assert_allclose(val, 4.0, atol = 1e-12)

    def test_curvature_antisymmetry(self, sig, rng):
        X, Y, Z = [rng.standard_normal(5) + 1j * rng.standard_normal(5) for i in range(3)]
        assert_allclose(curvature_bar(X, Y, Z, sig), -curvature_bar(Y, X, Z, sig), atol = 1e-12)

    def test_s1_equivalent(self, sig, tol):
        z = boosted_point(sig)
        assert s1_equivalent(z, np.exp(0.7j) * z, sig, tol)
        assert not s1_equivalent(z, np.conj(np.exp(0.7j) * z) + 0.1, sig, tol)
        null = axis(sig, 0) + axis(sig, 2)
        assert s1_equivalent(null, np.exp(-2.1j) * null, sig, tol)
        assert not s1_equivalent(null, axis(sig, 0) - axis(sig, 2), sig, tol)

    def test_indefinite_unitary(self, sig, tol):
        U = indefinite_unitary(sig, 7)
        assert is_indefinite_unitary(U, sig, tol)
        z = boosted_point(sig)
        assert_allclose(real_metric(U @ z, U @ z, sig), 1.0, atol = 1e-12)

    def test_indefinite_unitary_block(self, sig, tol):
        U = indefinite_unitary(sig, 3, block = [0, 3, 4])
        assert is_indefinite_unitary(U, sig, tol)
        assert_allclose(U[1:3, 1:3], np.eye(2))
        assert_allclose(U[1, [0, 3, 4]], 0.0)

    def test_indefinite_unitary_real(self, sig, tol):
        U = indefinite_unitary(sig, 11, real = True)
        assert_allclose(U.imag, 0.0)
        assert is_indefinite_unitary(U, sig, tol)

    def test_not_unitary(self, sig, tol):
        assert not is_indefinite_unitary(2.0 * np.eye(5), sig, tol)
        with pytest.raises(DimensionError):
            is_indefinite_unitary(np.eye(3), sig, tol)
