#
# catalog.py (c) pyhopf developers 2026
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
"""Catalog of Hopf real hypersurfaces of CP^n_p

Every family is described upstairs, on the hyperquadric g(z,z) = 1 of
C^{n+1}_p, by one S^1-invariant real equation F(z) = t:

TypeA(q, m, t)
    g(q1 z, q1 z) = t with q1, q2 complementary coordinate blocks.
TypeB(t)
    Q(z) conj(Q(z)) = t with Q(z) = g_C(z, conj(z)).
Degenerate
    The t = 1 member of the TypeB equation; its normal is null.
Horosphere(t)
    |z_1 - z_{n+1}|^2 = t.

For each family the module gives the defining function, its gradient,
the normal of the lifted hypersurface, the closed form shape operator
A_N upstairs, an exact random sampler, the tangent and D frames and the
invariants predicted by the closed formulas.
"""

import numpy as np

from pyhopf.ambient import (DEFAULT_TOLERANCES, FrameAtPoint, as_vector,
                            herm_product, real_metric, realify, complexify,
                            conjugate_vector, orthonormal_complement,
                            sphere_geodesic, indefinite_unitary)
from pyhopf.errors import (InadmissibleSpecError, InfeasibleSpecError,
                           SamplingError, PreconditionError)

import scipy.linalg as sl

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"

# attempts before a sampler gives up
REJECTION_BUDGET = 10000
# minimal |g(v,v)| / |v|^2 accepted by the samplers before rescaling
CONDITION_RATIO = 0.2


def q_polynomial(z, sig):
    """Q(z) = -sum_{j<=p} z_j^2 + sum_{j>p} z_j^2 = g_C(z, conj(z))"""
    z = as_vector(z, sig)
    return complex(np.sum(sig.diag * z * z))


class PredictedInvariants():
    """Invariants predicted by the closed formulas of a family

    ``eigenvalues`` lists (value, multiplicity) of the shape operator on
    the distribution D orthogonal to xi; ``quoted`` keeps the rows as they
    are printed in the item lists of the families."""

    def __init__(self, mu, eigenvalues, phi_behavior, orientation_caveat = False,
                 r = None, label = None, quoted = None):
        self.mu = float(mu)
        self.eigenvalues = [(float(v), int(k)) for v, k in eigenvalues if k > 0]
        self.phi_behavior = phi_behavior
        self.orientation_caveat = bool(orientation_caveat)
        self.r = None if r is None else float(r)
        self.label = label
        self.quoted = quoted if quoted is not None else []

    def fullSpectrum(self):
        """(value, multiplicity) of the whole operator, xi included"""
        spec = {}
        for v, k in self.eigenvalues + [(self.mu, 1)]:
            key = None
            for s in spec:
                if abs(s - v) <= 1e-12 * max(1.0, abs(v)):
                    key = s
            if key is None:
                spec[v] = k
            else:
                spec[key] += k
        return sorted(spec.items())

    def __str__(self):
        s = "mu = %.12g" % self.mu
        for v, k in self.eigenvalues:
            s += "\nlambda = %.12g (x%d)" % (v, k)
        s += "\nphi: %s" % self.phi_behavior
        if self.r is not None:
            s += "\nr = %.12g" % self.r
        if self.orientation_caveat:
            s += "\n**** printed orientation differs from the computed one"
        return s


def _quote(name, value, multiplicity):
    return {'name': name, 'value': float(value), 'multiplicity': int(multiplicity)}


class HypersurfaceSpec():
    """Base class of the catalog families"""

    family = None
    degenerate = False

    def __init__(self, sig):
        self.sig = sig

    #
    # defining data
    #

    def getTarget(self):
        return self.t

    def getEpsilon(self):
        return self.epsilon

    def definingFunction(self, z):
        raise NotImplementedError

    def constraintGradient(self, z):
        """Metric gradient G of the defining function, dF(X) = g(X, G)"""
        raise NotImplementedError

    def normal(self, z):
        raise NotImplementedError

    def weingarten(self, z, X):
        raise NotImplementedError

    def blocks(self):
        """List of (name, coordinate indices, prescribed norm)"""
        return []

    def violations(self):
        """Return (block name, message) for every block that cannot carry its norm"""
        out = []
        for name, idx, target in self.blocks():
            neg = int(np.sum(np.asarray(idx) < self.sig.p))
            pos = len(idx) - neg
            if target > 0 and pos == 0:
                out.append((name, "block %s has signature (%d timelike, %d spacelike) "
                            "and cannot carry the positive norm %g" % (name, neg, pos, target)))
            elif target < 0 and neg == 0:
                out.append((name, "block %s has signature (%d timelike, %d spacelike) "
                            "and cannot carry the negative norm %g" % (name, neg, pos, target)))
        return out

    def feasibility(self):
        """Return the list of violated block-signature conditions"""
        return [msg for name, msg in self.violations()]

    def checkFeasible(self):
        bad = self.violations()
        if len(bad):
            name, msg = bad[0]
            raise InfeasibleSpecError("%s is empty on %s: %s." % (str(self), str(self.sig), msg),
                                      family = self.family, block = name)

    def sample(self, rng):
        raise NotImplementedError

    def predicted(self):
        raise NotImplementedError

    #
    # description
    #

    def params(self):
        return {}

    def asDict(self):
        d = {'family': self.family, 'n': self.sig.n, 'p': self.sig.p}
        d.update(self.params())
        return d

    def label(self):
        return self.family

    def __eq__(self, other):
        return isinstance(other, HypersurfaceSpec) and self.asDict() == other.asDict()

    def __hash__(self):
        return hash(tuple(sorted(self.asDict().items())))

    def __str__(self):
        p = ", ".join("%s=%g" % (k, v) for k, v in sorted(self.params().items()))
        return "%s(%s)" % (self.family, p)

    __repr__ = __str__


def _check_t(t, family):
    t = float(t)
    if not np.isfinite(t):
        raise InadmissibleSpecError("%s needs a finite parameter t." % family)
    return t


class TypeA(HypersurfaceSpec):
    """Tube g(q1 z, q1 z) = t over a totally geodesic CP^k_l"""

    family = 'TypeA'

    def __init__(self, sig, q, m, t):
        HypersurfaceSpec.__init__(self, sig)
        self.q = int(q)
        self.m = int(m)
        self.t = _check_t(t, self.family)
        n, p = sig.n, sig.p
        q, m = self.q, self.m
        if not (0 <= q <= p <= m <= n + 2) or m <= q + 1:
            raise InadmissibleSpecError("TypeA needs 0 <= q <= p <= m <= n+2 and m > q+1, "
                                        "got q=%d, p=%d, m=%d, n=%d." % (q, p, m, n))
        if q == 0 and m == n + 2:
            raise InadmissibleSpecError("TypeA with q=0 and m=n+2 is not considered.")
        if self.t == 0.0 or self.t == 1.0:
            raise InadmissibleSpecError("TypeA needs t != 0, 1.")
        self.idx1 = np.array(list(range(0, q)) + list(range(m - 1, n + 1)), dtype = int)
        self.idx2 = np.array(list(range(q, m - 1)), dtype = int)
        t = self.t
        self.epsilon = 1 if t * (1.0 - t) > 0 else -1
        s = np.sqrt(self.epsilon * t * (1.0 - t))
        self.alpha = (1.0 - t) / s
        self.beta = -t / s

    def params(self):
        return {'q': self.q, 'm': self.m, 't': self.t}

    def label(self):
        if 0 < self.t < 1:
            return 'A+'
        if self.t > 1:
            return 'A-'
        return 'A'

    def q1(self, z):
        out = np.zeros(self.sig.dim, dtype = complex)
        out[self.idx1] = np.asarray(z)[self.idx1]
        return out

    def q2(self, z):
        out = np.zeros(self.sig.dim, dtype = complex)
        out[self.idx2] = np.asarray(z)[self.idx2]
        return out

    def definingFunction(self, z):
        return real_metric(self.q1(z), self.q1(z), self.sig)

    def constraintGradient(self, z):
        return 2.0 * self.q1(z)

    def normal(self, z):
        return self.alpha * self.q1(z) + self.beta * self.q2(z)

    def weingarten(self, z, X):
        return -self.alpha * self.q1(X) - self.beta * self.q2(X)

    def blocks(self):
        return [('q1', self.idx1, self.t), ('q2', self.idx2, 1.0 - self.t)]

    def sample(self, rng):
        return (_sample_block(rng, self.sig, self.idx1, self.t) +
                _sample_block(rng, self.sig, self.idx2, 1.0 - self.t))

    def predicted(self):
        n, q, m, t = self.sig.n, self.q, self.m, self.t
        mu = (2.0 * t - 1.0) / np.sqrt(self.epsilon * t * (1.0 - t))
        # -alpha lives on the q1 block, -beta on the q2 block
        eig = [(-self.alpha, 2 * (n + q - m + 1)), (-self.beta, 2 * (m - q - 2))]
        r = None
        quoted = []
        if 0 < t < 1:
            r = np.arccos(np.sqrt(t))
            quoted = [_quote('mu', 2.0 / np.tan(2.0 * r), 1),
                      _quote('lambda1', -np.tan(r), 2 * (m - q - 2)),
                      _quote('lambda2', 1.0 / np.tan(r), 2 * (n + q - m + 1))]
        elif t > 1:
            r = np.arccosh(np.sqrt(t))
            quoted = [_quote('mu', 2.0 / np.tanh(2.0 * r), 1),
                      _quote('lambda1', -np.tanh(r), 2 * (m - q - 2)),
                      _quote('lambda2', 1.0 / np.tanh(r), 2 * (n + q - m + 1))]
        return PredictedInvariants(mu, eig, 'each-eigenspace-J-invariant', False,
                                   r = r, label = self.label(), quoted = quoted)


class TypeB(HypersurfaceSpec):
    """Tube Q(z) conj(Q(z)) = t over the complex quadric"""

    family = 'TypeB'

    def __init__(self, sig, t):
        HypersurfaceSpec.__init__(self, sig)
        self.t = _check_t(t, self.family)
        if self.t <= 0.0 or self.t == 1.0:
            raise InadmissibleSpecError("TypeB needs t > 0 and t != 1, got t=%g." % self.t)
        t = self.t
        self.epsilon = 1 if t < 1 else -1
        self.alpha = 1.0 / np.sqrt(self.epsilon * t * (1.0 - t))

    def params(self):
        return {'t': self.t}

    def label(self):
        if self.t < 1:
            return 'B+'
        if abs(self.t - 4.0) <= 1e-12:
            return 'B0'
        return 'B-'

    def definingFunction(self, z):
        return abs(q_polynomial(z, self.sig)) ** 2

    def constraintGradient(self, z):
        return 4.0 * q_polynomial(z, self.sig) * np.conj(z)

    def normal(self, z):
        Q = q_polynomial(z, self.sig)
        return self.alpha * (Q * np.conj(z) - self.t * np.asarray(z))

    def weingarten(self, z, X):
        z = np.asarray(z)
        X = np.asarray(X)
        Q = q_polynomial(z, self.sig)
        zb = np.conj(z)
        return -self.alpha * (2.0 * herm_product(X, zb, self.sig) * zb + Q * np.conj(X) - self.t * X)

    def blocks(self):
        a = (1.0 + np.sqrt(self.t)) / 2.0
        b = (1.0 - np.sqrt(self.t)) / 2.0
        # the imaginary part lives in the complement of the spacelike real part
        comp = np.concatenate([np.arange(self.sig.p), np.arange(self.sig.p + 1, self.sig.dim)])
        return [('real part', np.arange(self.sig.dim), a), ('imaginary part', comp, b)]

    def sample(self, rng):
        return _sample_real_pair(rng, self.sig, np.sqrt(self.t))

    def predicted(self):
        n, t, a = self.sig.n, self.t, self.alpha
        mu = 2.0 * (t - 1.0) / np.sqrt(self.epsilon * t * (1.0 - t))
        eig = [(a * (t - np.sqrt(t)), n - 1), (a * (t + np.sqrt(t)), n - 1)]
        label = self.label()
        quoted = []
        r = None
        if t < 1:
            r = np.arcsin(np.sqrt(t)) / 2.0
            quoted = [_quote('mu', 2.0 / np.tan(2.0 * r), 1),
                      _quote('lambda1', 1.0 / np.tan(r), n - 1),
                      _quote('lambda2', np.tan(r), n - 1)]
        else:
            r = np.arccosh(np.sqrt(t)) / 2.0
            if label == 'B0':
                quoted = [_quote('mu', np.sqrt(3.0), n),
                          _quote('lambda', 1.0 / np.sqrt(3.0), n - 1)]
            else:
                quoted = [_quote('mu', 2.0 * np.tanh(2.0 * r), 1),
                          _quote('lambda1', 1.0 / np.tanh(r), n - 1),
                          _quote('lambda2', np.tanh(r), n - 1)]
        return PredictedInvariants(mu, eig, 'phi-swaps-pair', t < 1, r = r,
                                   label = label, quoted = quoted)


class Degenerate(HypersurfaceSpec):
    """The lightlike tube Q(z) conj(Q(z)) = 1"""

    family = 'Degenerate'
    degenerate = True

    def __init__(self, sig):
        HypersurfaceSpec.__init__(self, sig)
        self.t = 1.0
        self.epsilon = 0

    def label(self):
        return 'D'

    def definingFunction(self, z):
        return abs(q_polynomial(z, self.sig)) ** 2

    def constraintGradient(self, z):
        return 4.0 * q_polynomial(z, self.sig) * np.conj(z)

    def normal(self, z):
        return q_polynomial(z, self.sig) * np.conj(z) - np.asarray(z)

    def weingarten(self, z, X):
        z = np.asarray(z)
        X = np.asarray(X)
        zb = np.conj(z)
        Q = q_polynomial(z, self.sig)
        return -2.0 * herm_product(X, zb, self.sig) * zb - Q * np.conj(X) + X

    def blocks(self):
        comp = np.concatenate([np.arange(self.sig.p), np.arange(self.sig.p + 1, self.sig.dim)])
        # a null imaginary part needs both signs in the complement
        return [('real part', np.arange(self.sig.dim), 1.0),
                ('imaginary part (timelike half)', comp, -1.0),
                ('imaginary part (spacelike half)', comp, 1.0)]

    def sample(self, rng):
        for i in range(REJECTION_BUDGET):
            z = _sample_real_pair(rng, self.sig, 1.0)
            if real_rank(z) == 4:
                return z
        raise SamplingError("Degenerate sampler exhausted %d attempts." % REJECTION_BUDGET)

    def predicted(self):
        raise PreconditionError("The Degenerate family has no unit normal; "
                                "its invariants are checked upstairs.")


class Horosphere(HypersurfaceSpec):
    """Horosphere |z_1 - z_{n+1}|^2 = t"""

    family = 'Horosphere'

    def __init__(self, sig, t):
        HypersurfaceSpec.__init__(self, sig)
        self.t = _check_t(t, self.family)
        if self.t <= 0.0:
            raise InadmissibleSpecError("Horosphere needs t > 0, got t=%g." % self.t)
        self.epsilon = -1

    def params(self):
        return {'t': self.t}

    def label(self):
        return 'C'

    def zeta(self, z):
        z = np.asarray(z)
        w = z[0] - z[-1]
        out = np.zeros(self.sig.dim, dtype = complex)
        out[0] = w
        out[-1] = w
        return out

    def definingFunction(self, z):
        z = np.asarray(z)
        return abs(z[0] - z[-1]) ** 2

    def constraintGradient(self, z):
        return -2.0 * self.zeta(z)

    def normal(self, z):
        return -self.zeta(z) / self.t - np.asarray(z)

    def weingarten(self, z, X):
        X = np.asarray(X, dtype = complex)
        return self.zeta(X) / self.t + X

    def blocks(self):
        return [('z_1', np.array([0]), -1.0), ('z_{n+1}', np.array([self.sig.dim - 1]), 1.0)]

    def sample(self, rng):
        sig = self.sig
        st = np.sqrt(self.t)
        phase = np.exp(2j * np.pi * rng.random())
        mid = np.zeros(sig.dim, dtype = complex)
        mid[1:-1] = 0.5 * (rng.standard_normal(sig.dim - 2) + 1j * rng.standard_normal(sig.dim - 2))
        c = real_metric(mid, mid, sig)
        w = st * phase
        z1 = phase * ((self.t - 1.0 + c) / (2.0 * st) + 1j * rng.standard_normal())
        z = mid
        z[0] = z1
        z[-1] = z1 - w
        return z

    def predicted(self):
        n = self.sig.n
        return PredictedInvariants(2.0, [(1.0, 2 * n - 2)], 'each-eigenspace-J-invariant',
                                   False, label = 'C',
                                   quoted = [_quote('mu', 2.0, 1), _quote('lambda', 1.0, 2 * n - 2)])


def make_spec(family, sig, q = None, m = None, t = None):
    """Build a catalog spec from its family name"""
    f = str(family).lower()
    if f in ('typea', 'a'):
        return TypeA(sig, q, m, t)
    if f in ('typeb', 'b'):
        return TypeB(sig, t)
    if f in ('degenerate', 'd'):
        return Degenerate(sig)
    if f in ('horosphere', 'c', 'typec'):
        return Horosphere(sig, 1.0 if t is None else t)
    raise InadmissibleSpecError("Unknown family '%s'." % family)


#
# samplers
#

def _sample_block(rng, sig, idx, target):
    """Complex vector supported on idx with g(v,v) = target"""
    v = np.zeros(sig.dim, dtype = complex)
    if len(idx) == 0:
        if target == 0:
            return v
        raise InfeasibleSpecError("Empty block cannot carry norm %g." % target)
    for i in range(REJECTION_BUDGET):
        v[idx] = rng.standard_normal(len(idx)) + 1j * rng.standard_normal(len(idx))
        nrm = real_metric(v, v, sig)
        euc = float(np.sum(np.abs(v) ** 2))
        if nrm * target > 0 and abs(nrm) >= CONDITION_RATIO * euc:
            return v * np.sqrt(target / nrm)
    raise SamplingError("Block sampler exhausted %d attempts." % REJECTION_BUDGET)


def _bilinear(x, y, s):
    return float(np.sum(s * x * y))


def _sample_real(rng, s, target, orth):
    """Real vector with <x,x> = target, <x,o> = 0 for o in orth"""
    k = len(s)
    for i in range(REJECTION_BUDGET):
        x = rng.standard_normal(k)
        for o in orth:
            x = x - _bilinear(x, o, s) / _bilinear(o, o, s) * o
        nrm = _bilinear(x, x, s)
        euc = float(np.dot(x, x))
        if target == 0:
            return x
        if nrm * target > 0 and abs(nrm) >= CONDITION_RATIO * euc:
            return x * np.sqrt(target / nrm)
    raise SamplingError("Real sampler exhausted %d attempts." % REJECTION_BUDGET)


def _sample_real_pair(rng, sig, qvalue):
    """z = x + iy on the hyperquadric with Q(z) = qvalue >= 0

    Uses Q(x+iy) = <x,x> - <y,y> + 2i<x,y> and g(z,z) = <x,x> + <y,y>."""
    s = sig.diag
    a = (1.0 + qvalue) / 2.0
    b = (1.0 - qvalue) / 2.0
    x = _sample_real(rng, s, a, [])
    if abs(b) > 1e-15:
        y = _sample_real(rng, s, b, [x])
    else:
        # null y: unit spacelike plus unit timelike, both orthogonal to x
        u = _sample_real(rng, s, 1.0, [x])
        v = _sample_real(rng, s, -1.0, [x, u])
        y = rng.uniform(0.5, 1.5) * (u + v)
    return x + 1j * y


def real_rank(z, tol = 1e-8):
    """Real rank of {z, iz, conj(z), i conj(z)}"""
    z = np.asarray(z, dtype = complex)
    M = realify(np.array([z, 1j * z, np.conj(z), 1j * np.conj(z)]))
    return int(np.linalg.matrix_rank(M, tol = tol))


def sample_point(spec, seed):
    """Deterministic random point of the lifted hypersurface"""
    spec.checkFeasible()
    rng = np.random.default_rng(seed)
    return spec.sample(rng)


def sample_quadric_point(sig, seed):
    """Random point of the hyperquadric with Q(z) = 0"""
    rng = np.random.default_rng(seed)
    return _sample_real_pair(rng, sig, 0.0)


#
# operations on a spec and a point
#

def block_projectors(spec, z):
    """Return (q1 z, q2 z) for a TypeA spec"""
    if not isinstance(spec, TypeA):
        raise InadmissibleSpecError("block_projectors needs a TypeA spec.")
    z = as_vector(z, spec.sig)
    return spec.q1(z), spec.q2(z)


def block_signature(spec):
    """Return {block name: (timelike count, spacelike count)}"""
    out = {}
    for name, idx, target in spec.blocks():
        neg = int(np.sum(np.asarray(idx) < spec.sig.p))
        out[name] = (neg, len(idx) - neg)
    return out


def defining_residual(spec, z):
    """Return (F(z) - t, g(z,z) - 1)"""
    z = as_vector(z, spec.sig)
    return (spec.definingFunction(z) - spec.getTarget(),
            real_metric(z, z, spec.sig) - 1.0)


def check_on_surface(spec, z, tol = DEFAULT_TOLERANCES):
    res, sph = defining_residual(spec, z)
    if abs(res) > tol.constraint_tol or abs(sph) > tol.constraint_tol:
        raise PreconditionError("Point is off %s: residuals %.3g, %.3g." % (str(spec), res, sph))


def unit_normal(spec, z, tol = DEFAULT_TOLERANCES):
    """Return (N, epsilon) at z; N is null and epsilon = 0 for Degenerate"""
    check_on_surface(spec, z, tol)
    z = as_vector(z, spec.sig)
    return spec.normal(z), spec.getEpsilon()


def _check_tangent(spec, z, X, tol):
    N = spec.normal(z)
    scale = tol.constraint_tol * max(1.0, float(np.abs(X).max()))
    if abs(real_metric(X, z, spec.sig)) > scale or abs(real_metric(X, N, spec.sig)) > scale:
        raise PreconditionError("Vector is not tangent to %s at the given point." % str(spec))


def analytic_weingarten(spec, z, X, tol = DEFAULT_TOLERANCES):
    """Closed form A_N X of the lifted hypersurface"""
    z = as_vector(z, spec.sig)
    X = as_vector(X, spec.sig)
    _check_tangent(spec, z, X, tol)
    return spec.weingarten(z, X)


def tangent_and_dee_frames(spec, z, tol = DEFAULT_TOLERANCES):
    """Return (full, horizontal, dee) frames at z

    full spans T_z M (2n vectors: J chi, xi, then D), horizontal starts
    with xi and spans the lift of T M (2n-1), dee spans D (2n-2) and is
    orthonormal. The Degenerate family only gets a Euclidean basis of the
    tangent space; horizontal and dee are None."""
    z = as_vector(z, spec.sig)
    check_on_surface(spec, z, tol)
    sig = spec.sig
    if spec.degenerate:
        rows = realify(np.array([z, spec.constraintGradient(z)])) @ sig.getRealMetricMatrix()
        B = sl.null_space(rows)
        return FrameAtPoint(z, complexify(B.T), sig), None, None
    N = spec.normal(z)
    xi = -1j * N
    Jchi = 1j * z
    dee = orthonormal_complement([z, Jchi, N, xi], sig, tol, base = z)
    horizontal = FrameAtPoint(z, np.vstack([xi[None, :], dee.vectors]), sig, orthonormal = True)
    full = FrameAtPoint(z, np.vstack([Jchi[None, :], xi[None, :], dee.vectors]), sig,
                        orthonormal = True)
    return full, horizontal, dee


def degenerate_dee_frame(spec, z):
    """Euclidean basis of D = {z, iz, N, iN}^perp for the Degenerate family

    The span contains the null normal, so D contains N and xi."""
    z = as_vector(z, spec.sig)
    N = spec.normal(z)
    rows = realify(np.array([z, 1j * z, N, -1j * N])) @ spec.sig.getRealMetricMatrix()
    B = sl.null_space(rows)
    return FrameAtPoint(z, complexify(B.T), spec.sig)


def predicted_invariants(spec):
    """Invariants of a non-degenerate spec from its closed formulas"""
    return spec.predicted()


def parameter_r(spec):
    """Principal-branch r of a spec, or None"""
    if spec.degenerate:
        return None
    return spec.predicted().r


def tube_point(z0, theta, s, sig, tol = DEFAULT_TOLERANCES):
    """Point at distance s on the normal geodesic from the complex quadric

    gamma(s) = cos(s) z0 + sin(s)(cos(theta) conj(z0) + sin(theta) i conj(z0))
    with Q(z0) = 0. Then Q(gamma) conj(Q(gamma)) = sin^2(2s)."""
    z0 = as_vector(z0, sig)
    if abs(real_metric(z0, z0, sig) - 1.0) > tol.constraint_tol:
        raise PreconditionError("Base point is not on the hyperquadric.")
    if abs(q_polynomial(z0, sig)) > tol.constraint_tol:
        raise PreconditionError("Base point is not on the complex quadric Q = 0.")
    zb = conjugate_vector(z0)
    v = np.cos(theta) * zb + np.sin(theta) * 1j * zb
    return sphere_geodesic(z0, v, s, sig, tol)


def block_isometry(spec, seed, scale = 0.5):
    """Random indefinite-unitary map sending the family to itself"""
    sig = spec.sig
    rng = np.random.default_rng(seed)
    s1, s2 = rng.integers(0, 2 ** 31, size = 2)
    phase = np.exp(2j * np.pi * rng.random())
    if isinstance(spec, TypeA):
        U = indefinite_unitary(sig, s1, block = spec.idx1, scale = scale)
        if len(spec.idx2):
            U = U @ indefinite_unitary(sig, s2, block = spec.idx2, scale = scale)
        return U
    if isinstance(spec, (TypeB, Degenerate)):
        return phase * indefinite_unitary(sig, s1, real = True, scale = scale)
    if isinstance(spec, Horosphere):
        return phase * indefinite_unitary(sig, s1, block = np.arange(1, sig.dim - 1),
                                          scale = scale)
    raise InadmissibleSpecError("No isometry generator for %s." % str(spec))


def feasible_catalog(sig):
    """Enumerate the catalog on a signature

    Returns a list of dicts with the family, its parameters and the
    t-ranges on which it is non-empty."""
    out = []
    n, p = sig.n, sig.p
    trial_ts = [('t<0', -1.0), ('0<t<1', 0.5), ('t>1', 2.0)]
    for q in range(0, p + 1):
        for m in range(p, n + 3):
            if m <= q + 1 or (q == 0 and m == n + 2):
                continue
            ranges = [name for name, t in trial_ts
                      if len(TypeA(sig, q, m, t).feasibility()) == 0]
            out.append({'family': 'TypeA', 'q': q, 'm': m, 'ranges': ranges})
    ranges = [name for name, t in trial_ts[1:] if len(TypeB(sig, t).feasibility()) == 0]
    out.append({'family': 'TypeB', 'ranges': ranges})
    out.append({'family': 'Degenerate', 'ranges': ['t=1'] if not Degenerate(sig).feasibility() else []})
    out.append({'family': 'Horosphere', 'ranges': ['t>0']})
    return out
