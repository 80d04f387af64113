#
# ambient.py (c) pyhopf developers 2026
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
"""Indefinite complex linear algebra on C^{n+1}_p

This module holds the building blocks every other part of pyhopf works
with: the hermitian product of index p, the complex structure J
(multiplication by i), causal characters, indefinite Gram-Schmidt
frames, great circles of the hyperquadric g(z,z) = 1, the S^1 action of
the Hopf fibration and the curvature tensor of the indefinite complex
projective space of holomorphic sectional curvature 4.

Vectors are plain numpy complex arrays of length n+1. Where real linear
algebra is needed a vector is *realified* into [Re z, Im z]; the real
metric is then diag(s, s) with s the diagonal of the hermitian form.
"""

import numpy as np
import scipy.linalg as sl

from pyhopf.errors import DimensionError, PreconditionError, DegeneracyError

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"


class Signature():
    """Signature of the ambient space C^{n+1}_p

    The first p coordinates are timelike, the remaining n+1-p are
    spacelike. The projective space CP^n_p needs n >= 2 and 1 <= p <= n-1;
    pass strict = False to work with the small ambient spaces used when
    checking the linear algebra by hand."""

    def __init__(self, n, p, strict = True):
        n = int(n)
        p = int(p)
        if n < 1 or p < 0 or p > n + 1:
            raise PreconditionError("Signature (n=%d, p=%d) is not valid." % (n, p))
        if strict and (n < 2 or p < 1 or p > n - 1):
            raise PreconditionError("CP^n_p needs n >= 2 and 1 <= p <= n-1, got n=%d, p=%d." % (n, p))
        self.n = n
        self.p = p
        self.dim = n + 1
        self.realDim = 2 * n + 2
        self.index = 2 * p
        self.diag = np.ones(self.dim)
        self.diag[:p] = -1.0
        self.realDiag = np.concatenate([self.diag, self.diag])

    def __eq__(self, other):
        return isinstance(other, Signature) and (self.n, self.p) == (other.n, other.p)

    def __hash__(self):
        return hash((self.n, self.p))

    def __repr__(self):
        return "Signature(n=%d, p=%d)" % (self.n, self.p)

    def __str__(self):
        return "C^%d_%d (real index %d)" % (self.dim, self.p, self.index)

    def getMetricMatrix(self):
        """Return the diagonal matrix G of the hermitian form"""
        return np.diag(self.diag).astype(complex)

    def getRealMetricMatrix(self):
        """Return the real metric on the realification"""
        return np.diag(self.realDiag)


class TolerancePolicy():
    """Numerical tolerances used throughout pyhopf

    Parameters
    ----------
    constraint_tol : float
        Membership residuals and the null threshold of causal_character.
    eig_cluster_tol : float
        Distance below which computed eigenvalues are one cluster.
    rank_tol : float
        Relative singular value threshold for numerical ranks.
    jordan_tol : float
        Radius inside which eigenvalue groups are tested for a common
        defective eigenvalue.
    h : float
        Finite difference step.
    newton_tol : float
        Residual target of the Newton retraction.
    newton_max_iter : int
        Iteration cap of the Newton retraction.
    """

    _defaults = [('constraint_tol', 1e-10),
                 ('eig_cluster_tol', 1e-6),
                 ('rank_tol', 1e-7),
                 ('jordan_tol', 1e-3),
                 ('h', 1e-5),
                 ('newton_tol', 1e-12),
                 ('newton_max_iter', 50)]

    def __init__(self, **kwargs):
        names = [k for k, v in self._defaults]
        for key in kwargs:
            if key not in names:
                raise PreconditionError("Unknown tolerance '%s'." % key)
        for key, default in self._defaults:
            val = kwargs.get(key, default)
            if key == 'newton_max_iter':
                val = int(val)
            else:
                val = float(val)
            if not val > 0:
                raise PreconditionError("Tolerance %s must be strictly positive." % key)
            self.__dict__[key] = val
        if self.newton_tol > self.constraint_tol:
            raise PreconditionError("newton_tol (%g) must not exceed constraint_tol (%g)."
                                    % (self.newton_tol, self.constraint_tol))

    def __setattr__(self, key, value):
        raise AttributeError("TolerancePolicy is immutable, use replace().")

    def __eq__(self, other):
        return isinstance(other, TolerancePolicy) and self.asDict() == other.asDict()

    def replace(self, **kwargs):
        """Return a copy with some tolerances replaced"""
        d = self.asDict()
        d.update(kwargs)
        return TolerancePolicy(**d)

    def asDict(self):
        return dict((k, self.__dict__[k]) for k, v in self._defaults)

    def __str__(self):
        return "\n".join("%-16s = %g" % (k, self.__dict__[k]) for k, v in self._defaults)


DEFAULT_TOLERANCES = TolerancePolicy()


def as_vector(v, sig):
    """Return v as a complex array checked against the signature"""
    v = np.asarray(v, dtype = complex)
    if v.shape != (sig.dim,):
        raise DimensionError("Expected a vector of length %d, got shape %s."
                             % (sig.dim, str(v.shape)))
    return v


def realify(v):
    """Map C^{n+1} to R^{2n+2} as [Re v, Im v]"""
    v = np.asarray(v, dtype = complex)
    return np.concatenate([v.real, v.imag], axis = -1)


def complexify(r):
    """Inverse of realify"""
    r = np.asarray(r, dtype = float)
    k = r.shape[-1] // 2
    return r[..., :k] + 1j * r[..., k:]


def herm_product(z, w, sig):
    """Hermitian product of index p

    g_C(z, w) = -sum_{j<=p} z_j conj(w_j) + sum_{j>p} z_j conj(w_j),
    linear in z and conjugate-linear in w."""
    z = as_vector(z, sig)
    w = as_vector(w, sig)
    return complex(np.sum(sig.diag * z * np.conj(w)))


def real_metric(z, w, sig):
    """Real metric g = Re g_C"""
    return herm_product(z, w, sig).real


def apply_J(v):
    """Complex structure: multiplication by i"""
    return 1j * np.asarray(v, dtype = complex)


def conjugate_vector(v):
    """Componentwise complex conjugate"""
    return np.conj(np.asarray(v, dtype = complex))


def causal_character(v, sig, tol = DEFAULT_TOLERANCES):
    """Return 'spacelike', 'timelike' or 'null' for the vector v"""
    nrm = real_metric(v, v, sig)
    if nrm > tol.constraint_tol:
        return 'spacelike'
    if nrm < -tol.constraint_tol:
        return 'timelike'
    return 'null'


class FrameAtPoint():
    """An ordered set of ambient vectors attached to a base point

    The Gram matrix of the real metric is computed on construction. When
    the frame is orthonormal the diagonal signs are the causal signs
    epsilon_i = g(E_i, E_i) and coordinates are read off with the metric;
    otherwise coordinates are Euclidean least squares coefficients on the
    realification, which also works for degenerate frames."""

    def __init__(self, base, vectors, sig, orthonormal = False):
        self.sig = sig
        self.base = None if base is None else as_vector(base, sig)
        vectors = np.asarray(vectors, dtype = complex)
        self.vectors = vectors.reshape(-1, sig.dim)
        v = self.vectors
        self.gram = np.real((v * sig.diag) @ np.conj(v).T)
        self.orthonormal = orthonormal
        self.signs = np.sign(np.round(np.diag(self.gram), 12)).astype(int)

    def __len__(self):
        return self.vectors.shape[0]

    def __getitem__(self, i):
        return self.vectors[i]

    def __str__(self):
        s = "Frame of %d vectors in %s" % (len(self), str(self.sig))
        if self.orthonormal:
            s += ", orthonormal, signs %s" % str(list(self.signs))
        return s

    def getDimension(self):
        return len(self)

    def getRealMatrix(self):
        """Frame vectors as columns of a real (2n+2) x k matrix"""
        return realify(self.vectors).T

    def orthonormalityDefect(self):
        """Return max |gram - diag(signs)|"""
        if len(self) == 0:
            return 0.0
        return float(np.abs(self.gram - np.diag(self.signs)).max())

    def pairings(self, v):
        """Return g(v, E_i) for all frame vectors"""
        v = as_vector(v, self.sig)
        return np.real((self.vectors * self.sig.diag) @ np.conj(v))

    def coordinates(self, v):
        """Real coordinates of v in the frame"""
        if self.orthonormal:
            return self.signs * self.pairings(v)
        B = self.getRealMatrix()
        c, res, rank, sv = sl.lstsq(B, realify(as_vector(v, self.sig)))
        return c

    def expand(self, c):
        """Ambient vector with real coordinates c"""
        return np.asarray(c, dtype = float) @ self.vectors

    def project(self, v):
        """g-orthogonal projection onto the span of an orthonormal frame"""
        if not self.orthonormal:
            raise PreconditionError("Metric projection needs an orthonormal frame.")
        return self.expand(self.coordinates(v))

    def matrixOf(self, op):
        """Matrix of the real linear map op in this frame

        Column j holds the coordinates of op(E_j)."""
        cols = [self.coordinates(op(e)) for e in self.vectors]
        if len(cols) == 0:
            return np.zeros((0, 0))
        return np.array(cols).T


def _gram(vectors, sig):
    v = np.asarray(vectors, dtype = complex).reshape(-1, sig.dim)
    return np.real((v * sig.diag) @ np.conj(v).T)


def _numerical_rank(M, rank_tol):
    if M.size == 0:
        return 0
    sv = sl.svdvals(M)
    return int(np.sum(sv > rank_tol * max(1.0, sv[0])))


def _subtract(v, basis, signs, sig):
    for e, s in zip(basis, signs):
        v = v - s * real_metric(v, e, sig) * e
    return v


def _pivoted_gram_schmidt(candidates, sig, count, basis, signs, tol):
    """Extend (basis, signs) by count vectors taken from the candidates

    At every step the candidate with the largest |g(v,v)| after projection
    is normalized and appended. If every remaining candidate is null a sum
    or difference of two candidates with non-zero pairing is used."""
    basis = list(basis)
    signs = list(signs)
    cands = [_subtract(c, basis, signs, sig) for c in candidates]
    added = 0
    while added < count:
        norms = np.array([real_metric(c, c, sig) for c in cands])
        k = int(np.argmax(np.abs(norms))) if len(cands) else -1
        if k >= 0 and abs(norms[k]) > tol.constraint_tol:
            v = cands.pop(k)
        else:
            v = _null_pair(cands, sig, tol)
            if v is None:
                raise DegeneracyError("Unable to extend the frame: remaining directions are null.",
                                      deficiency = count - added)
        # second pass keeps the frame orthonormal to working precision
        v = _subtract(v, basis, signs, sig)
        nrm = real_metric(v, v, sig)
        e = v / np.sqrt(abs(nrm))
        s = 1 if nrm > 0 else -1
        basis.append(e)
        signs.append(s)
        cands = [c - s * real_metric(c, e, sig) * e for c in cands]
        added += 1
    return basis, signs


def _null_pair(cands, sig, tol):
    best = None
    bestval = tol.constraint_tol
    live = [c for c in cands if np.abs(c).max() > np.sqrt(tol.constraint_tol)]
    for i in range(len(live)):
        for j in range(i + 1, len(live)):
            gij = real_metric(live[i], live[j], sig)
            if abs(gij) > bestval:
                bestval = abs(gij)
                best = live[i] + live[j]
    return best


def orthonormal_complement(span, sig, tol = DEFAULT_TOLERANCES, base = None):
    """g-orthonormal basis of the g-orthogonal complement of span

    Parameters
    ----------
    span : sequence of ambient vectors
        Must span a non-degenerate subspace.
    sig : Signature
    tol : TolerancePolicy
    base : ambient vector, optional
        Base point recorded in the returned frame.

    Returns
    -------
    FrameAtPoint
        Orthonormal frame of real dimension 2n+2 - rank(span) built by
        pivoted indefinite Gram-Schmidt from the coordinate axes e_k, i e_k.
    """
    span = [as_vector(v, sig) for v in span]
    if len(span):
        G = _gram(span, sig)
        rank = _numerical_rank(G, tol.rank_tol)
        if rank < len(span):
            raise DegeneracyError("Span is degenerate: Gram matrix has rank deficiency %d."
                                  % (len(span) - rank), deficiency = len(span) - rank)
    sbasis, ssigns = _pivoted_gram_schmidt(span, sig, len(span), [], [], tol)

    axes = []
    for k in range(sig.dim):
        e = np.zeros(sig.dim, dtype = complex)
        e[k] = 1.0
        axes.append(e)
        axes.append(1j * e)
    count = sig.realDim - len(span)
    basis, signs = _pivoted_gram_schmidt(axes, sig, count, sbasis, ssigns, tol)
    return FrameAtPoint(base, basis[len(span):], sig, orthonormal = True)


def sphere_geodesic(z, v, s, sig, tol = DEFAULT_TOLERANCES):
    """Great circle cos(s) z + sin(s) v of the hyperquadric

    z must lie on the hyperquadric and v must be a unit spacelike vector
    g-orthogonal to z."""
    z = as_vector(z, sig)
    v = as_vector(v, sig)
    if abs(real_metric(z, z, sig) - 1.0) > tol.constraint_tol:
        raise PreconditionError("Base point is not on the hyperquadric.")
    if abs(real_metric(v, v, sig) - 1.0) > tol.constraint_tol:
        raise PreconditionError("Direction is not unit spacelike.")
    if abs(real_metric(z, v, sig)) > tol.constraint_tol:
        raise PreconditionError("Direction is not orthogonal to the base point.")
    return np.cos(s) * z + np.sin(s) * v


def curvature_bar(X, Y, Z, sig):
    """Curvature tensor of CP^n_p on horizontal representatives

    R(X,Y)Z = g(Y,Z)X - g(X,Z)Y + g(JY,Z)JX - g(JX,Z)JY + 2g(X,JY)JZ
    """
    X = as_vector(X, sig)
    Y = as_vector(Y, sig)
    Z = as_vector(Z, sig)
    JX = apply_J(X)
    JY = apply_J(Y)
    JZ = apply_J(Z)
    g = lambda a, b: real_metric(a, b, sig)
    return (g(Y, Z) * X - g(X, Z) * Y + g(JY, Z) * JX - g(JX, Z) * JY
            + 2.0 * g(X, JY) * JZ)


def _phase_distance(z, w, theta):
    return float(np.abs(w - np.exp(1j * theta) * z).max())


def s1_equivalent(z, w, sig, tol = DEFAULT_TOLERANCES):
    """True if w = exp(i theta) z for some theta

    The phase is read from g_C(w, z). When that product is too small to
    carry a phase (z null) the Euclidean product is used instead. Both
    give the phase in closed form, there is no sampled search over theta."""
    z = as_vector(z, sig)
    w = as_vector(w, sig)
    c = herm_product(w, z, sig)
    if abs(c) < tol.constraint_tol:
        c = np.vdot(z, w)
    if abs(c) == 0.0:
        return bool(np.abs(w).max() <= tol.constraint_tol and np.abs(z).max() <= tol.constraint_tol)
    return bool(_phase_distance(z, w, np.angle(c)) <= tol.constraint_tol)


def indefinite_unitary(sig, seed, block = None, real = False, scale = 0.5):
    """Random linear map preserving g_C

    Returns expm(G H) with H anti-hermitian (real antisymmetric when
    real = True) restricted to the coordinates listed in block, and the
    identity elsewhere. G is the diagonal of the hermitian form."""
    rng = np.random.default_rng(seed)
    idx = np.arange(sig.dim) if block is None else np.asarray(block, dtype = int)
    k = len(idx)
    U = np.eye(sig.dim, dtype = complex)
    if k == 0:
        return U
    H = rng.standard_normal((k, k))
    if real:
        H = H - H.T
    else:
        H = H + 1j * rng.standard_normal((k, k))
        H = H - np.conj(H).T
    K = scale * (sig.diag[idx][:, None] * H)
    U[np.ix_(idx, idx)] = sl.expm(K)
    return U


def is_indefinite_unitary(U, sig, tol = DEFAULT_TOLERANCES):
    """Check U^H G U = G to constraint_tol"""
    U = np.asarray(U, dtype = complex)
    if U.shape != (sig.dim, sig.dim):
        raise DimensionError("Expected a %d x %d matrix." % (sig.dim, sig.dim))
    G = sig.getMetricMatrix()
    return bool(np.abs(np.conj(U).T @ G @ U - G).max() <= tol.constraint_tol)
