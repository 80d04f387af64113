import numpy as np
import pytest
from numpy.testing import assert_allclose

from pyhopf.ambient import TolerancePolicy, real_metric
from pyhopf.catalog import sample_point, defining_residual, predicted_invariants
from pyhopf.weingarten import (retract, horizontal_projector, tangent_projection,
                               numeric_weingarten, oracle_error, convergence_order,
                               descend, lift_weingarten, mu_at, mu_gradient,
                               structure_tensors, almost_contact_defects, random_tangent,
                               reeb_derivative_residual, codazzi_defect, codazzi_residual)
from pyhopf.errors import RetractionError, PreconditionError

from conftest import LABELS


def _expanded(spectrum):
    out = []
    for v, k in spectrum:
        out += [v] * k
    return sorted(out)


class TestRetraction:

    @pytest.mark.parametrize('label', LABELS)
    def test_lands_on_surface(self, specs, tol, rng, label):
        spec = specs[label]
        z = sample_point(spec, 3)
        y = z + 1e-3 * (rng.standard_normal(z.shape) + 1j * rng.standard_normal(z.shape))
        w, it = retract(spec, y, tol, iterations = True)
        r1, r2 = defining_residual(spec, w)
        assert abs(r1) <= tol.newton_tol and abs(r2) <= tol.newton_tol
        assert it <= 8

    def test_fixed_point(self, specs, tol):
        z = sample_point(specs['B0'], 0)
        w, it = retract(specs['B0'], z, tol, iterations = True)
        assert it <= 1
        assert_allclose(w, z, atol = 1e-12)

    def test_degenerate(self, degenerate, tol, rng):
        z = sample_point(degenerate, 2)
        w = retract(degenerate, z + 1e-4 * rng.standard_normal(z.shape), tol)
        r1, r2 = defining_residual(degenerate, w)
        assert abs(r1) <= tol.newton_tol and abs(r2) <= tol.newton_tol

    def test_singular_system(self, specs, tol):
        spec = specs['A+']
        y = np.zeros(spec.sig.dim, dtype = complex)
        y[spec.idx2] = 1.0
        with pytest.raises(RetractionError):
            retract(spec, y, tol)

    def test_iteration_cap(self, specs):
        spec = specs['B-']
        z = sample_point(spec, 1)
        with pytest.raises(RetractionError):
            retract(spec, 1.3 * z + 0.2, TolerancePolicy(newton_max_iter = 1))


class TestProjectors:

    def test_tangent_projection(self, specs, rng):
        spec = specs['A-']
        z = sample_point(spec, 5)
        v = rng.standard_normal(z.shape) + 1j * rng.standard_normal(z.shape)
        w = tangent_projection(spec, z, v)
        assert abs(real_metric(w, z, spec.sig)) <= 1e-10
        assert abs(real_metric(w, spec.normal(z), spec.sig)) <= 1e-10

    def test_horizontal_idempotent(self, specs, rng):
        spec = specs['C']
        z = sample_point(spec, 5)
        P = horizontal_projector(spec, z)
        v = rng.standard_normal(z.shape) + 1j * rng.standard_normal(z.shape)
        assert_allclose(P(P(v)), P(v), atol = 1e-10)
        assert abs(real_metric(P(v), 1j * z, spec.sig)) <= 1e-10


class TestOracle:

    @pytest.mark.parametrize('label', LABELS)
    def test_oracle_agreement(self, specs, tol, rng, label):
        spec = specs[label]
        z = sample_point(spec, 7)
        for i in range(3):
            X = random_tangent(spec, z, rng, tol)
            assert oracle_error(spec, z, X, tol) <= 1e-6

    @pytest.mark.parametrize('label', LABELS)
    def test_convergence_order(self, specs, tol, rng, label):
        spec = specs[label]
        z = sample_point(spec, 8)
        X = random_tangent(spec, z, rng, tol)
        order, errors = convergence_order(spec, z, X, tol)
        assert len(errors) == 2
        assert order is None or 1.8 < order < 2.2

    def test_degenerate_oracle(self, degenerate, tol, rng):
        z = sample_point(degenerate, 3)
        full = lift_weingarten(degenerate, z, tol)[1]
        X = full.expand(rng.standard_normal(len(full)))
        num = numeric_weingarten(degenerate, z, X, tol)
        assert_allclose(num, degenerate.weingarten(z, X), atol = 1e-6)


class TestDescend:

    @pytest.mark.parametrize('label', LABELS)
    def test_hopf(self, specs, tol, label):
        spec = specs[label]
        pred = predicted_invariants(spec)
        for seed in range(3):
            z = sample_point(spec, seed)
            W = descend(spec, z, tol)
            assert W.getDimension() == 2 * spec.sig.n - 1
            assert_allclose(W.mu, pred.mu, atol = 1e-9)
            assert W.hopf_residual <= 1e-10
            assert W.selfAdjointDefect() <= 1e-10

    @pytest.mark.parametrize('label', ['A+', 'A-', 'B+', 'B-', 'C'])
    def test_spectrum(self, specs, tol, label):
        spec = specs[label]
        z = sample_point(spec, 11)
        W = descend(spec, z, tol)
        ev = np.linalg.eigvals(W.matrix)
        assert np.abs(ev.imag).max() <= 1e-7
        assert_allclose(sorted(ev.real), _expanded(predicted_invariants(spec).fullSpectrum()),
                        atol = 1e-7)

    def test_flip(self, specs, tol):
        spec = specs['B+']
        z = sample_point(spec, 1)
        assert_allclose(descend(spec, z, tol, flip_normal = True).mu,
                        -descend(spec, z, tol).mu, atol = 1e-12)

    def test_mu_constant(self, specs, tol, rng):
        spec = specs['B-']
        z = sample_point(spec, 4)
        assert_allclose(mu_at(spec, z, tol), 2.0 * np.tanh(1.0), atol = 1e-9)
        X = random_tangent(spec, z, rng, tol)
        assert abs(mu_gradient(spec, z, X, tol)) <= 1e-6

    def test_degenerate_refused(self, degenerate, tol):
        z = sample_point(degenerate, 0)
        with pytest.raises(PreconditionError):
            descend(degenerate, z, tol)
        with pytest.raises(PreconditionError):
            structure_tensors(degenerate, z, tol)


class TestLift:

    def test_shapes(self, specs, degenerate, tol):
        n = degenerate.sig.n
        z = sample_point(degenerate, 1)
        M, frame = lift_weingarten(degenerate, z, tol)
        assert M.shape == (2 * n, 2 * n)
        M, frame = lift_weingarten(degenerate, z, tol, subspace = 'dee')
        assert M.shape == (2 * n - 2, 2 * n - 2)
        z = sample_point(specs['A+'], 1)
        M, frame = lift_weingarten(specs['A+'], z, tol, subspace = 'dee')
        assert M.shape == (2 * n - 2, 2 * n - 2)

    def test_degenerate_relations(self, degenerate):
        z = sample_point(degenerate, 6)
        N = degenerate.normal(z)
        xi = -1j * N
        assert_allclose(degenerate.weingarten(z, N), 2.0 * N, atol = 1e-10)
        assert_allclose(degenerate.weingarten(z, xi), 0.0, atol = 1e-10)
        assert_allclose(degenerate.weingarten(z, 1j * z), xi, atol = 1e-10)


class TestStructure:

    @pytest.mark.parametrize('label', LABELS)
    def test_almost_contact(self, specs, tol, label):
        spec = specs[label]
        z = sample_point(spec, 2)
        W = descend(spec, z, tol)
        phi, eta, xi, eps = structure_tensors(spec, z, tol, W)
        assert eps == spec.getEpsilon()
        defects = almost_contact_defects(phi, eta, xi, eps, W.getGram())
        assert set(defects) == set(['phi_squared', 'phi_xi', 'eta_xi', 'phi_skew', 'phi_metric'])
        assert max(defects.values()) <= 1e-10

    def test_defects_detect_errors(self, specs, tol):
        spec = specs['A+']
        z = sample_point(spec, 2)
        W = descend(spec, z, tol)
        phi, eta, xi, eps = structure_tensors(spec, z, tol, W)
        defects = almost_contact_defects(2.0 * phi, eta, xi, eps, W.getGram())
        assert defects['phi_squared'] > 1.0


def _orthogonalize(v, others, sig):
    for u in others:
        v = v - real_metric(v, u, sig) / real_metric(u, u, sig) * u
    return v


class TestDifferentialIdentities:

    @pytest.mark.parametrize('label', LABELS)
    def test_reeb(self, specs, tol, rng, label):
        spec = specs[label]
        z = sample_point(spec, 9)
        X = random_tangent(spec, z, rng, tol)
        assert reeb_derivative_residual(spec, z, X, tol) <= 1e-4

    def test_reeb_zero_vector(self, specs, tol):
        spec = specs['B-']
        z = sample_point(spec, 9)
        assert reeb_derivative_residual(spec, z, np.zeros(spec.sig.dim, dtype = complex), tol) == 0.0

    @pytest.mark.parametrize('label', LABELS)
    def test_codazzi(self, specs, tol, rng, label):
        spec = specs[label]
        z = sample_point(spec, 9)
        X = random_tangent(spec, z, rng, tol)
        Y = random_tangent(spec, z, rng, tol)
        assert codazzi_residual(spec, z, X, Y, tol) <= 1e-3

    @pytest.mark.parametrize('label', LABELS)
    def test_codazzi_antisymmetric(self, specs, tol, rng, label):
        spec = specs[label]
        z = sample_point(spec, 4)
        X = random_tangent(spec, z, rng, tol)
        Y = random_tangent(spec, z, rng, tol)
        assert_allclose(codazzi_defect(spec, z, X, Y, tol),
                        -codazzi_defect(spec, z, Y, X, tol), atol = 1e-12)

    @pytest.mark.parametrize('label', LABELS)
    def test_codazzi_vanishing_right_side(self, specs, tol, rng, label):
        spec = specs[label]
        sig = spec.sig
        z = sample_point(spec, 5)
        P = horizontal_projector(spec, z)
        xi = -1j * spec.normal(z)
        X = _orthogonalize(random_tangent(spec, z, rng, tol), [xi], sig)
        Y = _orthogonalize(random_tangent(spec, z, rng, tol), [xi, P(1j * X)], sig)
        assert abs(real_metric(X, xi, sig)) <= 1e-10
        assert abs(real_metric(Y, xi, sig)) <= 1e-10
        assert abs(real_metric(X, P(1j * Y), sig)) <= 1e-10
        assert codazzi_residual(spec, z, X, Y, tol) <= 1e-3
