#
# weingarten.py (c) pyhopf developers 2026
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
"""Shape operators of the catalog hypersurfaces

The lifted hypersurface M~ of the hyperquadric is cut out by the two real
constraints g(z,z) = 1 and F(z) = t. This module provides

* a Newton retraction onto M~,
* a central difference oracle for A_N computed from the normal field
  along retracted curves,
* the descent of A_N through the Hopf fibration,
  A X = pi_*(A_N X~ - g(xi, X) J chi), in the frame {xi} + D,
* the almost contact structure (phi, eta, xi) in the same frame,
* finite difference residuals of nabla_X xi = phi A X and of the
  Codazzi equation.

The connection of CP^n_p acts on horizontal lifts as the horizontal part of
the flat derivative; vector fields are extended off a point by projecting
a frozen ambient vector onto the moving horizontal tangent space.
"""

import numpy as np
import scipy.linalg as sl

from pyhopf.ambient import (DEFAULT_TOLERANCES, FrameAtPoint, as_vector,
                            real_metric, realify, complexify)
from pyhopf.catalog import (check_on_surface, tangent_and_dee_frames,
                            degenerate_dee_frame, analytic_weingarten)
from pyhopf.errors import RetractionError, PreconditionError
from pyhopf.utils import make_logger

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"

logger = make_logger(__name__)

# step pair used for the empirical convergence order
ORDER_STEPS = (4e-3, 2e-3)
# errors below this are at the rounding level and carry no order
ORDER_FLOOR = 1e-11


class WeingartenData():
    """Shape operator of the projected hypersurface in a frame

    ``matrix[i, j]`` is the i-th frame coordinate of A E_j. The frame starts
    with xi; mu is the Hopf curvature and hopf_residual the largest frame
    coordinate of A xi - mu xi."""

    def __init__(self, matrix, frame, eps, mu, hopf_residual, spec = None,
                 base = None, normal = None):
        self.matrix = np.asarray(matrix, dtype = float)
        self.frame = frame
        self.eps = eps
        self.mu = float(mu)
        self.hopf_residual = float(hopf_residual)
        self.spec = spec
        self.base = base
        self.normal = normal

    def getGram(self):
        return np.diag(self.frame.signs).astype(float)

    def getDimension(self):
        return self.matrix.shape[0]

    def selfAdjointDefect(self):
        """|G A - A^T G| in the induced infinity norm"""
        G = self.getGram()
        D = G @ self.matrix - self.matrix.T @ G
        return float(np.abs(D).sum(axis = 1).max())

    def __str__(self):
        s = "WeingartenData for %s\n" % str(self.spec)
        s += "epsilon = %d, mu = %.12g, hopf residual = %.3g\n" % (self.eps, self.mu,
                                                                  self.hopf_residual)
        s += str(self.matrix)
        return s


#
# retraction
#

def _constraints(spec, y):
    return np.array([real_metric(y, y, spec.sig) - 1.0,
                     spec.definingFunction(y) - spec.getTarget()])


def _euclidean_jacobian(spec, y):
    # dF(X) = g(X, G) = realify(X) . realify(diag * G)
    rows = [realify(spec.sig.diag * (2.0 * y)),
            realify(spec.sig.diag * spec.constraintGradient(y))]
    return np.array(rows)


def retract(spec, y, tol = DEFAULT_TOLERANCES, iterations = False):
    """Project y onto the lifted hypersurface by Newton iteration

    Each step is the minimum norm correction in the span of the Euclidean
    gradients of the two constraints. Returns the point, or the point and
    the number of Newton steps when iterations is True."""
    y = as_vector(y, spec.sig).copy()
    c = _constraints(spec, y)
    for it in range(tol.newton_max_iter + 1):
        if np.abs(c).max() <= tol.newton_tol:
            if iterations:
                return y, it
            return y
        if it == tol.newton_max_iter:
            break
        Jm = _euclidean_jacobian(spec, y)
        sv = sl.svdvals(Jm)
        if sv[-1] <= tol.rank_tol * max(1.0, sv[0]):
            raise RetractionError("Singular Newton system: constraint gradients "
                                  "are dependent (singular values %s)." % str(sv))
        delta = -Jm.T @ np.linalg.solve(Jm @ Jm.T, c)
        y = y + complexify(delta)
        c = _constraints(spec, y)
        logger.debug("---- Newton step %d, residuals %s" % (it + 1, str(c)))
    raise RetractionError("Newton retraction did not converge in %d iterations "
                          "(residuals %s)." % (tol.newton_max_iter, str(c)))


#
# projectors
#

def horizontal_projector(spec, z, tangential = True):
    """Return the g-orthogonal projector onto the horizontal space at z

    With tangential set the normal direction is removed as well, which
    projects onto the lift of the tangent space of the hypersurface. For
    the Degenerate family only z is removed."""
    sig = spec.sig
    z = as_vector(z, sig)
    iz = 1j * z
    if spec.degenerate:
        def project(v):
            v = np.asarray(v, dtype = complex)
            return v - real_metric(v, z, sig) * z
        return project
    N = spec.normal(z)
    eps = spec.getEpsilon()

    def project(v):
        v = np.asarray(v, dtype = complex)
        v = v - real_metric(v, z, sig) * z - real_metric(v, iz, sig) * iz
        if tangential:
            v = v - eps * real_metric(v, N, sig) * N
        return v
    return project


def tangent_projection(spec, z, v):
    """g-orthogonal projection onto T_z M~"""
    sig = spec.sig
    v = np.asarray(v, dtype = complex)
    v = v - real_metric(v, z, sig) * z
    if spec.degenerate:
        return v
    N = spec.normal(z)
    return v - spec.getEpsilon() * real_metric(v, N, sig) * N


#
# finite difference oracle
#

def numeric_weingarten(spec, z, X, tol = DEFAULT_TOLERANCES, h = None):
    """Central difference estimate of A_N X

    A_num X = -P_T((N(c(h)) - N(c(-h))) / 2h) with c(s) = retract(z + s X)."""
    sig = spec.sig
    z = as_vector(z, sig)
    X = as_vector(X, sig)
    if h is None:
        h = tol.h
    cp = retract(spec, z + h * X, tol)
    cm = retract(spec, z - h * X, tol)
    dN = (spec.normal(cp) - spec.normal(cm)) / (2.0 * h)
    return -tangent_projection(spec, z, dN)


def oracle_error(spec, z, X, tol = DEFAULT_TOLERANCES, h = None):
    """|A_num X - A_ana X| in the max norm"""
    ana = analytic_weingarten(spec, z, X, tol)
    num = numeric_weingarten(spec, z, X, tol, h)
    return float(np.abs(num - ana).max())


def convergence_order(spec, z, X, tol = DEFAULT_TOLERANCES, steps = ORDER_STEPS):
    """Empirical order of the oracle from two step sizes

    Returns (order, errors). The order is None when the larger step already
    reproduces the closed form to rounding, which happens when the normal
    is linear in z and the curve corrections fall into the normal space."""
    h1, h2 = steps
    e1 = oracle_error(spec, z, X, tol, h1)
    e2 = oracle_error(spec, z, X, tol, h2)
    if e1 <= ORDER_FLOOR or e2 <= ORDER_FLOOR:
        return None, (e1, e2)
    return float(np.log(e1 / e2) / np.log(h1 / h2)), (e1, e2)


#
# descent
#

def _check_nondegenerate(spec):
    if spec.degenerate:
        raise PreconditionError("%s has a null normal; the descended operator is "
                                "not defined." % str(spec))


def descend(spec, z, tol = DEFAULT_TOLERANCES, flip_normal = False):
    """Matrix of the projective shape operator in the frame {xi} + D

    A X = pi_*(A_N X~ - g(xi, X) J chi). With flip_normal the opposite
    normal -N is used, which changes the sign of A and of xi."""
    _check_nondegenerate(spec)
    sig = spec.sig
    z = as_vector(z, sig)
    full, horizontal, dee = tangent_and_dee_frames(spec, z, tol)
    sign = -1.0 if flip_normal else 1.0
    N = sign * spec.normal(z)
    xi = -1j * N
    Jchi = 1j * z
    frame = FrameAtPoint(z, np.vstack([xi[None, :], dee.vectors]), sig, orthonormal = True)

    def op(E):
        return sign * spec.weingarten(z, E) - real_metric(xi, E, sig) * Jchi

    M = frame.matrixOf(op)
    mu = M[0, 0]
    resid = float(np.abs(M[1:, 0]).max()) if M.shape[0] > 1 else 0.0
    W = WeingartenData(M, frame, spec.getEpsilon(), mu, resid, spec = spec, base = z,
                       normal = N)
    logger.debug("---- descended %s: mu = %.12g, hopf residual %.3g"
                 % (str(spec), mu, resid))
    return W


def lift_weingarten(spec, z, tol = DEFAULT_TOLERANCES, subspace = 'full'):
    """Matrix of A_N upstairs

    subspace is 'full' for T_z M~ or 'dee' for the distribution D~. The
    Degenerate family uses Euclidean bases, the others orthonormal ones.
    Returns (matrix, frame)."""
    z = as_vector(z, spec.sig)
    if spec.degenerate:
        check_on_surface(spec, z, tol)
        if subspace == 'full':
            frame = tangent_and_dee_frames(spec, z, tol)[0]
        else:
            frame = degenerate_dee_frame(spec, z)
    else:
        full, horizontal, dee = tangent_and_dee_frames(spec, z, tol)
        frame = full if subspace == 'full' else dee
    return frame.matrixOf(lambda E: spec.weingarten(z, E)), frame


def mu_at(spec, z, tol = DEFAULT_TOLERANCES):
    """Hopf curvature at z"""
    return descend(spec, z, tol).mu


def mu_gradient(spec, z, X, tol = DEFAULT_TOLERANCES, h = None):
    """Central difference of mu along the retracted curve through z with velocity X"""
    z = as_vector(z, spec.sig)
    if h is None:
        h = tol.h
    cp = retract(spec, z + h * X, tol)
    cm = retract(spec, z - h * X, tol)
    return (mu_at(spec, cp, tol) - mu_at(spec, cm, tol)) / (2.0 * h)


def structure_tensors(spec, z, tol = DEFAULT_TOLERANCES, W = None):
    """Almost contact structure in the frame of descend

    Returns (phi, eta, xi, eps): phi is the matrix of the tangential part of
    J, eta the co-vector eta(X) = g(X, xi) and xi the coordinates of xi."""
    _check_nondegenerate(spec)
    if W is None:
        W = descend(spec, z, tol)
    frame = W.frame
    phi = frame.matrixOf(lambda E: 1j * E)
    k = len(frame)
    eps = W.eps
    xi = np.zeros(k)
    xi[0] = 1.0
    eta = np.zeros(k)
    eta[0] = float(eps)
    return phi, eta, xi, eps


def almost_contact_defects(phi, eta, xi, eps, gram):
    """Defects of the almost contact identities in frame coordinates"""
    k = phi.shape[0]
    I = np.eye(k)
    G = np.asarray(gram, dtype = float)
    out = {}
    out['phi_squared'] = float(np.abs(phi @ phi + I - eps * np.outer(xi, eta)).max())
    out['phi_xi'] = float(np.abs(phi @ xi).max())
    out['eta_xi'] = float(abs(eta @ xi - eps))
    out['phi_skew'] = float(np.abs(G @ phi + phi.T @ G).max())
    out['phi_metric'] = float(np.abs(phi.T @ G @ phi - G + eps * np.outer(eta, eta)).max())
    return out


#
# differential identities
#

def random_tangent(spec, z, rng, tol = DEFAULT_TOLERANCES):
    """Random horizontal tangent vector at z with standard normal frame coordinates"""
    full, horizontal, dee = tangent_and_dee_frames(spec, z, tol)
    return horizontal.expand(rng.standard_normal(len(horizontal)))


def _lifted_shape(spec, z, V):
    """Horizontal lift of A applied to the horizontal tangent V at z"""
    P = horizontal_projector(spec, z)
    return P(spec.weingarten(z, V))


def _directional(field, spec, z, X, tol, h):
    """Horizontal tangential part of the central difference of field along X"""
    cp = retract(spec, z + h * X, tol)
    cm = retract(spec, z - h * X, tol)
    P = horizontal_projector(spec, z)
    return P((field(cp) - field(cm)) / (2.0 * h))


def reeb_derivative(spec, z, X, tol = DEFAULT_TOLERANCES, h = None):
    """Horizontal lift of nabla_X xi by central differences of xi = -i N"""
    _check_nondegenerate(spec)
    z = as_vector(z, spec.sig)
    X = horizontal_projector(spec, z)(as_vector(X, spec.sig))
    if h is None:
        h = tol.h
    if np.abs(X).max() == 0.0:
        return np.zeros(spec.sig.dim, dtype = complex)
    return _directional(lambda c: -1j * spec.normal(c), spec, z, X, tol, h)


def reeb_derivative_residual(spec, z, X, tol = DEFAULT_TOLERANCES, h = None):
    """|nabla_X xi - phi A X| for a tangent X at z"""
    z = as_vector(z, spec.sig)
    X = horizontal_projector(spec, z)(as_vector(X, spec.sig))
    lhs = reeb_derivative(spec, z, X, tol, h)
    rhs = horizontal_projector(spec, z)(1j * _lifted_shape(spec, z, X))
    return float(np.abs(lhs - rhs).max())


def _nabla_A(spec, z, X, Y0, tol, h):
    """(nabla_X A) Y with Y extended by projecting Y0 at nearby points"""
    def AY(c):
        return _lifted_shape(spec, c, horizontal_projector(spec, c)(Y0))

    def Yfield(c):
        return horizontal_projector(spec, c)(Y0)

    return (_directional(AY, spec, z, X, tol, h)
            - _lifted_shape(spec, z, _directional(Yfield, spec, z, X, tol, h)))


def codazzi_defect(spec, z, X, Y, tol = DEFAULT_TOLERANCES, h = None):
    """Ambient vector (nabla_X A)Y - (nabla_Y A)X - RHS

    RHS = eta(X) phi Y - eta(Y) phi X + 2 g(X, phi Y) xi."""
    _check_nondegenerate(spec)
    sig = spec.sig
    z = as_vector(z, sig)
    P = horizontal_projector(spec, z)
    X = P(as_vector(X, sig))
    Y = P(as_vector(Y, sig))
    if h is None:
        h = tol.h
    lhs = _nabla_A(spec, z, X, Y, tol, h) - _nabla_A(spec, z, Y, X, tol, h)
    xi = -1j * spec.normal(z)
    phiX = P(1j * X)
    phiY = P(1j * Y)
    rhs = (real_metric(X, xi, sig) * phiY - real_metric(Y, xi, sig) * phiX
           + 2.0 * real_metric(X, phiY, sig) * xi)
    return lhs - rhs


def codazzi_residual(spec, z, X, Y, tol = DEFAULT_TOLERANCES, h = None):
    """Max norm of codazzi_defect"""
    return float(np.abs(codazzi_defect(spec, z, X, Y, tol, h)).max())
