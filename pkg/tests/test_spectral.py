import numpy as np
import pytest
from numpy.testing import assert_allclose

from pyhopf.ambient import Signature
from pyhopf.catalog import TypeA, sample_point, block_isometry, predicted_invariants
from pyhopf.weingarten import descend, lift_weingarten, structure_tensors
from pyhopf.spectral import (SpectralSummary, Classification, spectral_summary,
                             spectra_agree, hopf_data, hat_lambda, lambda_from_mu,
                             lemma_aphix_defect, lemma_aphix_residual, phi_pairing_residual,
                             commutator_killing, eta_umbilical_fit, classify,
                             curvature_identities, operator_summary, isometry_invariance,
                             _dee_eigenpairs)
from pyhopf.errors import ExceptionalCaseError, PreconditionError

from conftest import LABELS

WITNESSES = [((0, 5, 0.75), 'A_plus_class1'),
             ((2, 4, 0.75), 'A_plus_class2'),
             ((0, 5, 2.0), 'A_minus_class3'),
             ((0, 2, 2.0), 'A_minus_class4')]


def _descended(spec, seed, tol):
    z = sample_point(spec, seed)
    W = descend(spec, z, tol)
    phi, eta, xi, eps = structure_tensors(spec, z, tol, W)
    return W, phi, eta, xi


class TestSpectralSummary:

    def test_diagonal(self, tol):
        s = spectral_summary(np.diag([1.0, 2.0, 1.0]), tol)
        assert s.clusters == [(1.0, 2, 2), (2.0, 1, 1)]
        assert s.diagonalizable
        assert s.getDimension() == 3

    def test_jordan_block(self, tol):
        A = np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 5.0]])
        s = spectral_summary(A, tol)
        assert [c[1:] for c in s.clusters] == [(2, 1), (1, 1)]
        assert_allclose(s.values(), [2.0, 5.0])
        assert not s.diagonalizable

    def test_split_jordan_block(self, tol):
        # the eigenvalues of the perturbed block are 2 +- 1e-6
        A = np.array([[2.0, 1.0], [1e-12, 2.0]])
        s = spectral_summary(A, tol)
        assert len(s) == 1
        assert_allclose(s.clusters[0][0], 2.0, atol = 1e-12)
        assert s.clusters[0][1] == 2

    def test_close_distinct_eigenvalues(self, tol):
        s = spectral_summary(np.diag([0.9995, 1.0, 1.0005, 3.0]), tol)
        assert [c[1:] for c in s.clusters] == [(1, 1)] * 4
        assert_allclose(s.values(), [0.9995, 1.0, 1.0005, 3.0], atol = 1e-12)
        assert s.diagonalizable

    def test_close_to_jordan_block(self, tol):
        A = np.array([[1.0, 1.0, 0.0], [1e-12, 1.0, 0.0], [0.0, 0.0, 1.0009]])
        s = spectral_summary(A, tol)
        assert [c[1:] for c in s.clusters] == [(2, 1), (1, 1)]
        assert not s.diagonalizable

    def test_complex(self, tol):
        s = spectral_summary(np.array([[0.0, -1.0], [1.0, 0.0]]), tol)
        assert len(s) == 0
        assert len(s.complex_clusters) == 2
        assert s.getDimension() == 2
        assert len(s.asDict()['complex']) == 2

    def test_not_square(self, tol):
        with pytest.raises(PreconditionError):
            spectral_summary(np.zeros((2, 3)), tol)

    def test_degenerate_full_operator(self, degenerate, tol):
        n = degenerate.sig.n
        z = sample_point(degenerate, 3)
        s = operator_summary(degenerate, z, tol)
        assert len(s) == 2
        assert_allclose(s.values(), [0.0, 2.0], atol = 1e-6)
        assert [c[1:] for c in s.clusters] == [(n + 1, n - 1), (n - 1, n - 1)]
        assert not s.diagonalizable

    def test_degenerate_dee_block(self, degenerate, tol):
        n = degenerate.sig.n
        z = sample_point(degenerate, 3)
        M, frame = lift_weingarten(degenerate, z, tol, subspace = 'dee')
        s = spectral_summary(M, tol)
        assert s.diagonalizable
        assert [c[1:] for c in s.clusters] == [(n - 1, n - 1), (n - 1, n - 1)]

    @pytest.mark.parametrize('label', LABELS)
    def test_agrees_with_prediction(self, specs, tol, label):
        spec = specs[label]
        z = sample_point(spec, 13)
        s = operator_summary(spec, z, tol)
        expected = predicted_invariants(spec).fullSpectrum()
        ok, dev, flipped = spectra_agree(s, expected, 1e-7)
        assert ok and not flipped
        assert s.diagonalizable

    def test_flip(self, specs, tol):
        spec = specs['B+']
        s = operator_summary(spec, sample_point(spec, 0), tol)
        negated = [(-v, k) for v, k in predicted_invariants(spec).fullSpectrum()]
        assert spectra_agree(s, negated, 1e-7)[0] is False
        ok, dev, flipped = spectra_agree(s, negated, 1e-7, allow_flip = True)
        assert ok and flipped

    def test_multiplicity_mismatch(self):
        s = SpectralSummary([(1.0, 2, 2), (3.0, 1, 1)], True, 1e-6)
        ok, dev, flipped = spectra_agree(s, [(1.0, 1), (3.0, 2)], 1e-7)
        assert not ok
        assert dev == 0.0


class TestHatLambda:

    @pytest.mark.parametrize('eps,mu,lam,hat', [
        (1, lambda r: 2.0 / np.tan(2 * r), lambda x: 1.0 / np.tan(x), lambda x: 1.0 / np.tan(x)),
        (1, lambda r: 2.0 * np.tan(2 * r), np.tan, lambda x: -1.0 / np.tan(x)),
        (-1, lambda r: 2.0 / np.tanh(2 * r), lambda x: 1.0 / np.tanh(x), lambda x: 1.0 / np.tanh(x)),
        (-1, lambda r: 2.0 / np.tanh(2 * r), np.tanh, np.tanh),
        (-1, lambda r: 2.0 * np.tanh(2 * r), lambda x: 1.0 / np.tanh(x), np.tanh),
        (-1, lambda r: 2.0 * np.tanh(2 * r), np.tanh, lambda x: 1.0 / np.tanh(x))])
    def test_closed_forms(self, tol, eps, mu, lam, hat):
        for r in (0.4, 0.55, 0.7):
            for theta in (-0.2, 0.1, 0.25):
                assert_allclose(hat_lambda(lam(r + theta), mu(r), eps, tol), hat(r - theta),
                                rtol = 1e-9)

    def test_horosphere(self, tol):
        assert_allclose(hat_lambda(3.0, 2.0, -1, tol), 1.0)

    def test_exceptional(self, tol):
        with pytest.raises(ExceptionalCaseError) as e:
            hat_lambda(1.0, 2.0, -1, tol)
        assert e.value.admissible
        with pytest.raises(ExceptionalCaseError) as e:
            hat_lambda(0.5, 1.0, 1, tol)
        assert not e.value.admissible

    def test_lambda_from_mu(self):
        assert lambda_from_mu(2.0, -1) == (1.0,)
        assert_allclose(lambda_from_mu(0.0, 1), (-1.0, 1.0))
        assert lambda_from_mu(1.0, -1) == ()
        r = 0.3
        assert_allclose(lambda_from_mu(2.0 / np.tan(2 * r), 1), (-np.tan(r), 1.0 / np.tan(r)))


class TestLemma:

    @pytest.mark.parametrize('label', LABELS)
    def test_residual(self, specs, tol, label):
        W, phi, eta, xi = _descended(specs[label], 1, tol)
        assert lemma_aphix_residual(W, phi, tol) <= 1e-7

    def test_detects_wrong_eigenvalue(self, specs, tol):
        W, phi, eta, xi = _descended(specs['B-'], 1, tol)
        lam, x = _dee_eigenpairs(W)[0]
        x = x / np.linalg.norm(phi @ x)
        lam_hat = hat_lambda(lam, W.mu, W.eps, tol)
        delta = 1e-3
        expected = abs(delta * (2.0 * lam_hat - W.mu))
        assert_allclose(lemma_aphix_defect(W, phi, lam + delta, x), expected, rtol = 1e-5)

    def test_pairing(self, specs, tol):
        W, phi, eta, xi = _descended(specs['B-'], 2, tol)
        lam = np.tanh(0.5)
        assert phi_pairing_residual(W, phi, lam, hat_lambda(lam, W.mu, W.eps, tol), tol) <= 1e-7
        assert_allclose(hat_lambda(lam, W.mu, W.eps, tol), 1.0 / np.tanh(0.5))
        with pytest.raises(PreconditionError):
            phi_pairing_residual(W, phi, 7.0, 1.0, tol)

    def test_hopf_data(self, specs, tol):
        W, phi, eta, xi = _descended(specs['C'], 2, tol)
        mu, res = hopf_data(W)
        assert_allclose(mu, 2.0)
        assert res <= 1e-10


class TestClassify:

    @pytest.mark.parametrize('params,tag', WITNESSES)
    def test_witnesses(self, sig, tol, params, tag):
        spec = TypeA(sig, *params)
        W, phi, eta, xi = _descended(spec, 4, tol)
        s = spectral_summary(W.matrix, tol)
        c = classify(W.eps, s, W.mu, tol)
        assert c.tag == tag
        assert c.isEtaUmbilical()
        assert_allclose(c.r, predicted_invariants(spec).r, atol = 1e-8)
        flipped = classify(W.eps, s.negated(), -W.mu, tol)
        assert flipped.tag == tag

    def test_horosphere(self, specs, tol):
        W, phi, eta, xi = _descended(specs['C'], 4, tol)
        c = classify(-1, spectral_summary(W.matrix, tol), W.mu, tol)
        assert c.tag == 'Horosphere'
        assert c.r is None

    @pytest.mark.parametrize('label', ['A+', 'A-', 'B+', 'B0', 'B-'])
    def test_not_eta_umbilical(self, specs, tol, label):
        W, phi, eta, xi = _descended(specs[label], 4, tol)
        c = classify(W.eps, spectral_summary(W.matrix, tol), W.mu, tol)
        assert c.tag == 'NotEtaUmbilical'
        assert not c.isEtaUmbilical()

    def test_indeterminate(self, tol):
        s = SpectralSummary([(0.5, 6, 6), (2.0, 1, 1)], True, 1e-6)
        assert classify(1, s, 2.0, tol).tag == 'Indeterminate'
        s = SpectralSummary([(1.0, 6, 6), (2.0, 1, 1)], True, 1e-6)
        assert classify(1, s, 3.0, tol).tag == 'Indeterminate'
        assert classify(0, s, 2.0, tol).tag == 'Indeterminate'

    def test_roots_of_mu(self, tol):
        small, large = lambda_from_mu(3.0, -1)
        s = SpectralSummary([(small, 6, 6), (3.0, 1, 1)], True, 1e-6)
        assert classify(-1, s, 3.0, tol).tag == 'A_minus_class4'
        s = SpectralSummary([(large, 6, 6), (3.0, 1, 1)], True, 1e-6)
        assert classify(-1, s, 3.0, tol).tag == 'A_minus_class3'
        s = SpectralSummary([(small + 0.02, 6, 6), (3.0, 1, 1)], True, 1e-6)
        c = classify(-1, s, 3.0, tol)
        assert c.tag == 'Indeterminate'
        assert 'does not solve' in c.note

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            Classification('TypeZ')

    @pytest.mark.parametrize('params,tag', WITNESSES)
    def test_eta_fit(self, sig, tol, params, tag):
        spec = TypeA(sig, *params)
        W, phi, eta, xi = _descended(spec, 5, tol)
        lam, rho, res = eta_umbilical_fit(W, eta, xi, tol)
        pred = predicted_invariants(spec)
        assert_allclose(lam, pred.eigenvalues[0][0], atol = 1e-8)
        assert_allclose(rho, W.eps * (pred.mu - lam), atol = 1e-8)
        assert res <= 1e-8

    def test_eta_fit_gap(self, specs, tol):
        W, phi, eta, xi = _descended(specs['B0'], 5, tol)
        assert eta_umbilical_fit(W, eta, xi, tol)[2] > 0.1


class TestCommutator:

    def test_horosphere_is_killing(self, specs, tol):
        W, phi, eta, xi = _descended(specs['C'], 6, tol)
        cnorm, killing = commutator_killing(W, phi, W.getGram(), tol, samples = 3)
        assert cnorm <= 1e-7
        assert killing <= 1e-3

    def test_type_b_is_not(self, specs, tol):
        W, phi, eta, xi = _descended(specs['B-'], 6, tol)
        cnorm, killing = commutator_killing(W, phi, W.getGram(), tol, samples = 3)
        gap = abs(1.0 / np.tanh(0.5) - np.tanh(0.5))
        assert cnorm >= min(0.5, 0.5 * gap)
        assert killing <= 1e-3


class TestCurvature:

    @pytest.mark.parametrize('label', ['A+', 'B0', 'C'])
    def test_identities(self, specs, tol, label):
        spec = specs[label]
        W, phi, eta, xi = _descended(spec, 3, tol)
        out = curvature_identities(W, phi, eta, xi, W.eps, spec.sig.n, tol)
        assert out['ricci'] <= 1e-8
        assert out['gauss_symmetry'] <= 1e-8
        assert out['holomorphic_curvature'] <= 1e-10


class TestIsometry:

    @pytest.mark.parametrize('label', ['A+', 'B-', 'C'])
    def test_invariance(self, specs, tol, label):
        spec = specs[label]
        out = isometry_invariance(spec, block_isometry(spec, 21), 3, tol, samples = 2)
        assert out['passed']
        assert out['multiplicities_equal']
        assert out['points'] == 2

    def test_degenerate(self, degenerate, tol):
        out = isometry_invariance(degenerate, block_isometry(degenerate, 21), 3, tol, samples = 2)
        assert out['max_defining_residual'] <= 1e-10

    def test_not_unitary(self, specs, tol):
        spec = specs['A+']
        with pytest.raises(PreconditionError):
            isometry_invariance(spec, 2.0 * np.eye(spec.sig.dim), 0, tol, samples = 1)
