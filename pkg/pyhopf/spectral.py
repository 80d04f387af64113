#
# spectral.py (c) pyhopf developers 2026
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.
#
# Part of the "pyhopf" package
#
"""Spectral analysis of shape operators

Eigenvalue clustering with algebraic and geometric multiplicities, the
pointwise identities of Hopf hypersurfaces (the AphiX relation, the
Killing condition, Gauss and Ricci), the eta-umbilical fit and the
classifier of eta-umbilical hypersurfaces.

Matrices are taken in the frame coordinates of
:func:`pyhopf.weingarten.descend`, where the first frame vector is xi
and the metric is diag(signs).
"""

import numpy as np
import scipy.linalg as sl

from pyhopf.ambient import (DEFAULT_TOLERANCES, real_metric, curvature_bar,
                            is_indefinite_unitary)
from pyhopf.catalog import sample_point, defining_residual
from pyhopf.weingarten import descend, lift_weingarten, reeb_derivative
from pyhopf.errors import ExceptionalCaseError, PreconditionError
from pyhopf.utils import make_logger

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"

logger = make_logger(__name__)

TAGS = ('A_plus_class1', 'A_plus_class2', 'A_minus_class3', 'A_minus_class4',
        'Horosphere', 'NotEtaUmbilical', 'Indeterminate')


def _inf_norm(M):
    """Induced infinity norm (max row sum)"""
    M = np.atleast_2d(M)
    if M.size == 0:
        return 0.0
    return float(np.abs(M).sum(axis = 1).max())


def _rank(M, rank_tol):
    if M.size == 0:
        return 0
    sv = sl.svdvals(M)
    return int(np.sum(sv > rank_tol * max(1.0, sv[0])))


class SpectralSummary():
    """Clustered eigenvalues of a real matrix

    ``clusters`` holds (value, algebraic, geometric) for real eigenvalues
    sorted by value; ``complex_clusters`` holds (value, algebraic) for
    eigenvalues with a non negligible imaginary part."""

    def __init__(self, clusters, diagonalizable, cluster_tol, complex_clusters = None):
        self.clusters = [(float(v), int(a), int(g)) for v, a, g in clusters]
        self.clusters.sort()
        self.diagonalizable = bool(diagonalizable)
        self.cluster_tol = cluster_tol
        self.complex_clusters = complex_clusters if complex_clusters is not None else []

    def __len__(self):
        return len(self.clusters)

    def getDimension(self):
        return (sum(a for v, a, g in self.clusters)
                + sum(a for v, a in self.complex_clusters))

    def values(self):
        return [v for v, a, g in self.clusters]

    def find(self, value, tol):
        """Return the cluster closest to value within tol, or None"""
        best = None
        for c in self.clusters:
            if abs(c[0] - value) <= tol and (best is None or abs(c[0] - value) < abs(best[0] - value)):
                best = c
        return best

    def negated(self):
        return SpectralSummary([(-v, a, g) for v, a, g in self.clusters], self.diagonalizable,
                               self.cluster_tol,
                               [(-v, a) for v, a in self.complex_clusters])

    def asDict(self):
        return {'clusters': [{'value': v, 'algebraic': a, 'geometric': g}
                             for v, a, g in self.clusters],
                'complex': [{'real': float(np.real(v)), 'imag': float(np.imag(v)),
                             'algebraic': a} for v, a in self.complex_clusters],
                'diagonalizable': self.diagonalizable}

    def __str__(self):
        s = ""
        for v, a, g in self.clusters:
            s += "%14.10g  alg %d  geo %d\n" % (v, a, g)
        for v, a in self.complex_clusters:
            s += "%s  alg %d (complex)\n" % (str(v), a)
        if not self.diagonalizable:
            s += "**** not diagonalizable\n"
        return s


def _single_linkage(values, tol):
    """Group complex numbers whose chained distances are <= tol"""
    order = np.lexsort((np.imag(values), np.real(values)))
    groups = []
    for i in order:
        v = values[i]
        hit = [g for g in groups if min(abs(v - values[j]) for j in g) <= tol]
        merged = [i]
        for g in hit:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def _chains(groups, vectors, tol):
    """Join clusters whose eigenvectors are parallel to within jordan_tol"""
    joined = []
    for g in groups:
        hit = [h for h in joined
               if np.abs(np.conj(vectors[:, h]).T @ vectors[:, g]).max() >= 1.0 - tol.jordan_tol]
        merged = list(g)
        for h in hit:
            merged.extend(h)
            joined.remove(h)
        joined.append(merged)
    return joined


def spectral_summary(A, tol = DEFAULT_TOLERANCES):
    """Cluster the eigenvalues of a square real matrix

    Eigenvalues are clustered at eig_cluster_tol. Clusters within
    jordan_tol of each other whose eigenvectors are parallel are one
    eigenvalue split by a Jordan block and are joined. The geometric
    multiplicity is dim - rank(A - cI) at rank_tol."""
    A = np.asarray(A, dtype = float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError("spectral_summary needs a square matrix, got shape %s."
                                % str(A.shape))
    dim = A.shape[0]
    if dim == 0:
        return SpectralSummary([], True, tol.eig_cluster_tol)
    ev, vecs = sl.eig(A)
    vecs = vecs / np.linalg.norm(vecs, axis = 0)
    groups = []
    for g in _single_linkage(ev, tol.jordan_tol):
        split = [[g[i] for i in s] for s in _single_linkage(ev[g], tol.eig_cluster_tol)]
        if len(split) == 1:
            groups.append((split[0], False))
            continue
        for h in _chains(split, vecs, tol):
            c = complex(np.mean(ev[h]))
            joined = len([s for s in split if s[0] in h]) > 1
            groups.append((h, joined and abs(c.imag) <= tol.jordan_tol))
    clusters = []
    complex_clusters = []
    for g, merged in groups:
        c = complex(np.mean(ev[g]))
        if not merged and abs(c.imag) > tol.eig_cluster_tol:
            complex_clusters.append((c, len(g)))
            continue
        B = A - c.real * np.eye(dim)
        geo = min(len(g), dim - _rank(B, tol.rank_tol))
        clusters.append((c.real, len(g), max(geo, 1)))
    complex_clusters.sort(key = lambda x: (x[0].real, x[0].imag))
    diag = all(a == g for v, a, g in clusters)
    return SpectralSummary(clusters, diag, tol.eig_cluster_tol, complex_clusters)


def spectra_agree(summary, expected, tol, allow_flip = False):
    """Compare a summary to another summary or to (value, multiplicity) pairs

    Returns (agree, deviation, flipped). Multiplicities must be equal and
    the largest eigenvalue deviation at most tol. With allow_flip the
    negated spectrum is also accepted."""
    if isinstance(expected, SpectralSummary):
        exp = [(v, a, g) for v, a, g in expected.clusters]
    else:
        exp = [(float(e[0]), int(e[1]), int(e[-1])) for e in expected]
    exp.sort()

    def compare(clusters):
        if len(clusters) != len(exp):
            return False, np.inf
        dev = 0.0
        ok = True
        for (v, a, g), (w, b, h) in zip(clusters, exp):
            dev = max(dev, abs(v - w))
            if a != b or g != h:
                ok = False
        return ok and dev <= tol, dev

    ok, dev = compare(summary.clusters)
    if ok or not allow_flip:
        return ok, dev, False
    okf, devf = compare(summary.negated().clusters)
    if okf:
        return True, devf, True
    return False, min(dev, devf), False


def hopf_data(W):
    """Return (mu, hopf residual) of descended data"""
    return W.mu, W.hopf_residual


def hat_lambda(lam, mu, eps, tol = DEFAULT_TOLERANCES):
    """Partner eigenvalue (lambda mu + 2 eps) / (2 lambda - mu)

    When X is a principal vector orthogonal to xi with eigenvalue lambda,
    phi X is principal with eigenvalue hat_lambda."""
    d = 2.0 * lam - mu
    if abs(d) <= tol.eig_cluster_tol:
        admissible = (eps == -1 and abs(abs(lam) - 1.0) <= tol.eig_cluster_tol)
        raise ExceptionalCaseError("Exceptional case 2 lambda = mu (lambda = %g, mu = %g): "
                                   "then epsilon = -1 and lambda^2 = 1." % (lam, mu),
                                   admissible = admissible)
    return (lam * mu + 2.0 * eps) / d


def lambda_from_mu(mu, eps, tol = 1e-14):
    """Roots of lambda^2 - mu lambda - eps = 0 as a sorted tuple"""
    disc = mu * mu + 4.0 * eps
    if abs(disc) <= tol * max(1.0, mu * mu):
        return (mu / 2.0,)
    if disc < 0:
        return ()
    s = np.sqrt(disc)
    return tuple(sorted(((mu - s) / 2.0, (mu + s) / 2.0)))


def _dee_eigenpairs(W):
    """Real eigenpairs of A on D as full frame coordinate vectors"""
    B = W.matrix[1:, 1:]
    w, V = sl.eig(B)
    out = []
    for k in range(len(w)):
        if abs(w[k].imag) > 1e-9:
            continue
        x = np.zeros(W.getDimension())
        x[1:] = np.real(V[:, k])
        out.append((float(w[k].real), x))
    return out


def lemma_aphix_defect(W, phi, lam, x):
    """|(2 lambda - mu) A phi X - (lambda mu + 2 eps) phi X| / max(1, |phi X|)"""
    px = phi @ x
    v = (2.0 * lam - W.mu) * (W.matrix @ px) - (lam * W.mu + 2.0 * W.eps) * px
    return float(np.linalg.norm(v) / max(1.0, np.linalg.norm(px)))


def lemma_aphix_residual(W, phi, tol = DEFAULT_TOLERANCES):
    """Largest Lemma defect over the eigenpairs of A on D

    Eigenvectors are scaled to |phi X| = 1."""
    if W.hopf_residual > tol.constraint_tol * 100:
        raise PreconditionError("Data is not Hopf (residual %.3g)." % W.hopf_residual)
    res = 0.0
    for lam, x in _dee_eigenpairs(W):
        n = np.linalg.norm(phi @ x)
        if n == 0.0:
            continue
        res = max(res, lemma_aphix_defect(W, phi, lam, x / n))
    return res


def phi_pairing_residual(W, phi, lam, lam_hat, tol = DEFAULT_TOLERANCES):
    """max |A phi X - lam_hat phi X| / |phi X| over eigenvectors X of lam"""
    res = 0.0
    found = False
    for l, x in _dee_eigenpairs(W):
        if abs(l - lam) > tol.eig_cluster_tol * max(1.0, abs(lam)):
            continue
        found = True
        px = phi @ x
        n = np.linalg.norm(px)
        res = max(res, float(np.linalg.norm(W.matrix @ px - lam_hat * px) / n))
    if not found:
        raise PreconditionError("No eigenvector with eigenvalue %g." % lam)
    return res


def lie_derivative_fd(W, x, y, tol = DEFAULT_TOLERANCES, h = None):
    """(L_xi g)(X, Y) = g(nabla_X xi, Y) + g(X, nabla_Y xi) by finite differences

    x and y are frame coordinates."""
    spec, z, frame = W.spec, W.base, W.frame
    sig = spec.sig
    X = frame.expand(x)
    Y = frame.expand(y)
    DX = reeb_derivative(spec, z, X, tol, h)
    DY = reeb_derivative(spec, z, Y, tol, h)
    sign = 1.0
    if W.normal is not None and real_metric(W.normal, spec.normal(z), sig) * spec.getEpsilon() < 0:
        # data descended with the flipped normal
        sign = -1.0
    return sign * (real_metric(DX, Y, sig) + real_metric(X, DY, sig))


def commutator_killing(W, phi, gram, tol = DEFAULT_TOLERANCES, samples = 10, seed = 0):
    """Return (|A phi - phi A|, Killing residual)

    The Killing residual compares finite differences of L_xi g with
    g((phi A - A phi) X, Y) for random frame vectors X, Y."""
    A = W.matrix
    C = phi @ A - A @ phi
    cnorm = _inf_norm(A @ phi - phi @ A)
    G = np.asarray(gram, dtype = float)
    rng = np.random.default_rng(seed)
    res = 0.0
    for i in range(samples):
        x = rng.standard_normal(A.shape[0])
        y = rng.standard_normal(A.shape[0])
        fd = lie_derivative_fd(W, x, y, tol)
        res = max(res, abs(fd - y @ G @ C @ x))
    return cnorm, float(res)


def eta_umbilical_fit(W, eta, xi, tol = DEFAULT_TOLERANCES):
    """Least squares fit A = lambda I + rho xi (x) eta

    Returns (lambda, rho, residual) with the residual in the induced
    infinity norm."""
    A = W.matrix
    k = A.shape[0]
    E = np.outer(xi, eta)
    design = np.array([np.eye(k).ravel(), E.ravel()]).T
    coef = np.linalg.lstsq(design, A.ravel(), rcond = None)[0]
    lam, rho = float(coef[0]), float(coef[1])
    return lam, rho, _inf_norm(A - lam * np.eye(k) - rho * E)


class Classification():
    """Result of the eta-umbilical classifier"""

    def __init__(self, tag, r = None, constraint = None, mu = None, lam = None,
                 eps = None, note = None):
        if tag not in TAGS:
            raise ValueError("Unknown classification tag %s." % tag)
        self.tag = tag
        self.r = r
        self.constraint = constraint
        self.mu = mu
        self.lam = lam
        self.eps = eps
        self.note = note

    def isEtaUmbilical(self):
        return self.tag in TAGS[:5]

    def asDict(self):
        d = {'tag': self.tag}
        for k in ('r', 'constraint', 'mu', 'lam', 'eps', 'note'):
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        return d

    def __eq__(self, other):
        return isinstance(other, Classification) and self.tag == other.tag

    def __str__(self):
        s = self.tag
        if self.r is not None:
            s += " (r = %.12g)" % self.r
        if self.constraint:
            s += " [%s]" % self.constraint
        return s

    __repr__ = __str__


def classify(eps, summary, mu, tol = DEFAULT_TOLERANCES):
    """Classify descended Hopf data as one of the eta-umbilical hypersurfaces

    mu is normalized to mu >= 0 by flipping the sign of the operator. The
    data is eta-umbilical when one eigenvalue lambda of multiplicity 2n-2
    remains after removing mu once; lambda must solve
    lambda^2 - mu lambda - eps = 0."""
    ctol = tol.eig_cluster_tol
    if eps not in (1, -1) or len(summary.complex_clusters):
        return Classification('Indeterminate', eps = eps, note = 'no real Hopf data')
    sign = 1.0 if mu >= 0 else -1.0
    s = summary if sign > 0 else summary.negated()
    mu = sign * mu
    c = s.find(mu, ctol * max(1.0, abs(mu)))
    if c is None:
        return Classification('Indeterminate', mu = mu, eps = eps,
                              note = 'mu is not an eigenvalue')
    rest = []
    for v, a, g in s.clusters:
        if (v, a, g) == c:
            a -= 1
        if a > 0:
            rest.append((v, a))
    dim = s.getDimension()
    if len(rest) != 1 or rest[0][1] != dim - 1:
        return Classification('NotEtaUmbilical', mu = mu, eps = eps)
    lam = rest[0][0]
    roots = lambda_from_mu(mu, eps, ctol)
    if not len(roots) or min(abs(lam - x) for x in roots) > np.sqrt(ctol) * max(1.0, abs(lam)):
        return Classification('Indeterminate', mu = mu, lam = lam, eps = eps,
                              note = 'lambda does not solve lambda^2 - mu lambda - eps = 0')
    if eps == 1:
        r = 0.5 * np.arctan2(2.0, mu)
        if abs(lam - 1.0 / np.tan(r)) <= ctol * max(1.0, abs(lam)):
            return Classification('A_plus_class1', r = r, constraint = 'm = n+q+1',
                                  mu = mu, lam = lam, eps = eps)
        if abs(lam + np.tan(r)) <= ctol * max(1.0, abs(lam)):
            return Classification('A_plus_class2', r = r, constraint = 'm = q+2',
                                  mu = mu, lam = lam, eps = eps)
        return Classification('Indeterminate', mu = mu, lam = lam, eps = eps)
    if abs(mu - 2.0) <= ctol and abs(lam - 1.0) <= ctol:
        return Classification('Horosphere', mu = mu, lam = lam, eps = eps)
    if mu > 2.0:
        r = 0.5 * np.arctanh(2.0 / mu)
        if abs(lam - 1.0 / np.tanh(r)) <= ctol * max(1.0, abs(lam)):
            return Classification('A_minus_class3', r = r, constraint = 'm = n+q+1',
                                  mu = mu, lam = lam, eps = eps)
        if abs(lam - np.tanh(r)) <= ctol * max(1.0, abs(lam)):
            return Classification('A_minus_class4', r = r, constraint = 'm = q+2',
                                  mu = mu, lam = lam, eps = eps)
    return Classification('Indeterminate', mu = mu, lam = lam, eps = eps)


def gauss_curvature_tensor(W):
    """Curvature of the hypersurface from the Gauss equation

    Returns R[d, a, b, c], the d-th frame coordinate of R(E_a, E_b) E_c."""
    frame = W.frame
    sig = frame.sig
    A = W.matrix
    G = W.getGram()
    k = len(frame)
    GA = G @ A
    R = np.zeros((k, k, k, k))
    for a in range(k):
        for b in range(k):
            for c in range(k):
                Rb = curvature_bar(frame[a], frame[b], frame[c], sig)
                # g(A E_b, E_c) = (G A)[c, b]
                R[:, a, b, c] = (frame.coordinates(Rb)
                                 + W.eps * (GA[c, b] * A[:, a] - GA[c, a] * A[:, b]))
    return R


def curvature_identities(W, phi, eta, xi, eps, n, tol = DEFAULT_TOLERANCES, seed = 0):
    """Gauss, Ricci and holomorphic curvature cross checks

    Returns a dict with

    ricci
        |S - S_trace| where S = (2n+1) I - 3 eps xi (x) eta + eps tr(A) A - eps A^2
        and S_trace is the trace of the Gauss curvature.
    gauss_symmetry
        largest antisymmetry or pair symmetry defect of the Gauss curvature.
    holomorphic_curvature
        |g(R(X, JX) JX, X) - 4| for a random unit spacelike X.
    """
    A = W.matrix
    G = W.getGram()
    k = A.shape[0]
    R = gauss_curvature_tensor(W)
    Ric = np.einsum('aabc->bc', R)
    S_trace = G @ Ric.T
    S = ((2 * n + 1) * np.eye(k) - 3.0 * eps * np.outer(xi, eta)
         + eps * np.trace(A) * A - eps * A @ A)
    out = {'ricci': _inf_norm(S - S_trace)}

    # R_low[a, b, c, d] = g(R(E_a, E_b) E_c, E_d)
    Rl = np.einsum('eabc,ed->abcd', R, G)
    sym = max(np.abs(R + R.transpose(0, 2, 1, 3)).max(),
              np.abs(Rl + Rl.transpose(0, 1, 3, 2)).max(),
              np.abs(Rl - Rl.transpose(2, 3, 0, 1)).max())
    out['gauss_symmetry'] = float(sym)

    rng = np.random.default_rng(seed)
    frame = W.frame
    sig = frame.sig
    X = None
    while X is None:
        v = frame.expand(rng.standard_normal(k))
        nrm = real_metric(v, v, sig)
        if nrm > 0.2 * float(np.sum(np.abs(v) ** 2)):
            X = v / np.sqrt(nrm)
    JX = 1j * X
    out['holomorphic_curvature'] = float(abs(real_metric(curvature_bar(X, JX, JX, sig), X, sig) - 4.0))
    return out


def operator_summary(spec, z, tol = DEFAULT_TOLERANCES):
    """Spectral summary of the descended operator, or of the lift for Degenerate"""
    if spec.degenerate:
        M, frame = lift_weingarten(spec, z, tol)
        return spectral_summary(M, tol)
    return spectral_summary(descend(spec, z, tol).matrix, tol)


def isometry_invariance(spec, U, seed, tol = DEFAULT_TOLERANCES, samples = 20,
                        residual_tol = 1e-10, spectral_tol = 1e-8):
    """Check that U maps the family to itself with unchanged invariants

    Returns a dict with the largest defining residual at U z, the largest
    eigenvalue deviation, whether all multiplicities agree and the overall
    verdict."""
    if not is_indefinite_unitary(U, spec.sig, tol):
        raise PreconditionError("Map does not preserve the hermitian form.")
    U = np.asarray(U, dtype = complex)
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2 ** 62, size = samples)
    res = 0.0
    dev = 0.0
    mult = True
    for s in seeds:
        z = sample_point(spec, int(s))
        w = U @ z
        r1, r2 = defining_residual(spec, w)
        res = max(res, abs(r1), abs(r2))
        sw = operator_summary(spec, w, tol)
        sz = operator_summary(spec, z, tol)
        ok, d, f = spectra_agree(sw, sz, spectral_tol)
        if [c[1:] for c in sw.clusters] != [c[1:] for c in sz.clusters]:
            mult = False
        else:
            dev = max(dev, d)
    passed = bool(res <= residual_tol and dev <= spectral_tol and mult)
    logger.debug("---- isometry invariance of %s: residual %.3g, deviation %.3g"
                 % (str(spec), res, dev))
    return {'max_defining_residual': float(res), 'max_spectral_deviation': float(dev),
            'multiplicities_equal': mult, 'points': int(samples), 'passed': passed}
