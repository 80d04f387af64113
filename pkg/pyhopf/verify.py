#
# verify.py (c) pyhopf developers 2026
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
"""Verification suites and the hopflab command line

A suite runs every check of the engine and of the spectral analysis on a
list of catalog hypersurfaces and collects the residuals into a
:class:`Report`. Pass or fail of every named criterion is decided from the
residuals alone, so identical configurations give identical reports.

The command line has four subcommands::

    hopflab catalog  --n 4 --p 2
    hopflab verify   [--config FILE] [--family TypeA --q 1 --m 4 --t 0.75] ...
    hopflab classify operator.json
    hopflab report   report.json --format markdown

Exit codes are 0 when all criteria pass, 1 when a criterion fails, 2 for
configuration or feasibility errors and 3 for numerical failures.
"""

import os
import sys
import zlib
import json
import time
import argparse
import itertools
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy
import scipy.linalg as sl

from pyhopf.ambient import (Signature, TolerancePolicy, DEFAULT_TOLERANCES,
                            real_metric)
from pyhopf.catalog import (TypeA, TypeB, Degenerate, make_spec,
                            sample_quadric_point, tube_point, defining_residual,
                            unit_normal, analytic_weingarten, tangent_and_dee_frames,
                            block_isometry, feasible_catalog)
from pyhopf.weingarten import (oracle_error, convergence_order, descend, mu_at,
                               mu_gradient, lift_weingarten, structure_tensors,
                               almost_contact_defects, random_tangent,
                               reeb_derivative_residual, codazzi_residual)
from pyhopf.spectral import (SpectralSummary, spectral_summary, spectra_agree,
                             hat_lambda, lemma_aphix_residual, phi_pairing_residual,
                             commutator_killing, eta_umbilical_fit, classify,
                             curvature_identities, isometry_invariance)
from pyhopf.config import LabConfigParser, parse_families, SECTION
from pyhopf.errors import (HopfError, ConfigError, PreconditionError,
                           InadmissibleSpecError, InfeasibleSpecError,
                           ExceptionalCaseError, MissingFamilyError,
                           RetractionError, DegeneracyError, SamplingError)
from pyhopf.utils import (make_logger, set_verbose, fmt10, canonical_json_bytes,
                          RELEASE)

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"

__verbose__ = False

logger = make_logger(__name__)

OUTDIR_VARIABLE = 'PYHOPF_OUTDIR'

DEFAULTS = {'n': 4,
            'p': 2,
            'samples': 10,
            'seed': 42,
            'jobs': 1,
            'directions': 5,
            'mu_points': 100,
            'isometries': 20,
            'format': 'json',
            'out': None,
            'witnesses': True}

# pass/fail thresholds of the named criteria
LIMITS = {'oracle': 1e-6,
          'order': (1.8, 2.2),
          'hopf': 1e-8,
          'mu': 1e-8,
          'mu_stddev': 1e-8,
          'mu_gradient': 1e-6,
          'self_adjoint': 1e-10,
          'jchi': 1e-10,
          'spectrum': 1e-7,
          'null_normal': 1e-12,
          'degenerate_relations': 1e-10,
          'lemma': 1e-7,
          'pairing': 1e-7,
          'table': 1e-9,
          'structure': 1e-10,
          'reeb': 1e-4,
          'codazzi': 1e-3,
          'ricci': 1e-8,
          'gauss_symmetry': 1e-8,
          'holomorphic_curvature': 1e-10,
          'tube': 1e-10,
          'eta_fit': 1e-8,
          'eta_fit_gap': 0.1,
          'commutator': 1e-7,
          'commutator_gap': 0.5,
          'killing': 1e-3,
          'isometry_residual': 1e-10,
          'isometry_spectrum': 1e-8}

CRITERIA = ('oracle_agreement', 'hopf_and_mu', 'spectral_tables', 'degenerate_example',
            'lemma_and_table', 'structure_identities', 'tube_law', 'classifier',
            'killing_equivalence', 'isometry_invariance', 'determinism', 'paper_tables')

VERDICTS = ('match', 'match-with-caveat', 'mismatch')


#
# families
#

# (family, q, m, t) of the reference families
ACCEPTANCE = [('TypeA', 1, 4, 0.75),
              ('TypeA', 1, 4, 2.0),
              ('TypeB', None, None, 0.5),
              ('TypeB', None, None, 4.0),
              ('TypeB', None, None, np.cosh(1.0) ** 2),
              ('Horosphere', None, None, 1.0),
              ('Degenerate', None, None, None)]


def acceptance_families(sig):
    """The reference families: A+ and A- (q=1, m=4), B+, B0, B-, horosphere, lightlike tube

    Families whose parameters are not admissible on sig are left out."""
    out = []
    for family, q, m, t in ACCEPTANCE:
        try:
            out.append(make_spec(family, sig, q, m, t))
        except InadmissibleSpecError as e:
            logger.info("**** %s" % str(e))
    return out


def witness_families(sig):
    """TypeA members with a single principal curvature on D

    Returns (spec, tag) for the first feasible (q, m) of each class;
    m = n+q+1 leaves only -beta, m = q+2 only -alpha."""
    n, p = sig.n, sig.p
    out = []
    for tag, t, long_block in (('A_plus_class1', 0.75, True),
                               ('A_plus_class2', 0.75, False),
                               ('A_minus_class3', 2.0, True),
                               ('A_minus_class4', 2.0, False)):
        for q in range(0, p + 1):
            m = n + q + 1 if long_block else q + 2
            try:
                spec = TypeA(sig, q, m, t)
            except InadmissibleSpecError:
                continue
            if len(spec.feasibility()):
                continue
            out.append((spec, tag))
            break
        else:
            logger.info("**** No feasible witness for %s on %s." % (tag, str(sig)))
    return out


def expected_tag(spec, tol = DEFAULT_TOLERANCES):
    """Classification of the predicted invariants of a spec, None for Degenerate"""
    if spec.degenerate:
        return None
    pred = spec.predicted()
    clusters = [(v, k, k) for v, k in pred.fullSpectrum()]
    summary = SpectralSummary(clusters, True, tol.eig_cluster_tol)
    return classify(spec.getEpsilon(), summary, pred.mu, tol).tag


def family_key(spec):
    return "%s %s" % (spec.label(), str(spec))


#
# configuration
#

def _check_range(name, value, low, high = None):
    if value < low or (high is not None and value >= high):
        raise ConfigError("Option %s = %s is out of range." % (name, str(value)))


class SuiteConfig():
    """Settings of a verification suite

    Values come from the built-in defaults, then the config file, then the
    command line. ``specs`` is a list of (spec, expected tag) pairs."""

    def __init__(self, sig = None, specs = None, samples = 10, seed = 42,
                 tol = DEFAULT_TOLERANCES, out = None, format = 'json', jobs = 1,
                 directions = 5, mu_points = 100, isometries = 20):
        if sig is None:
            sig = Signature(DEFAULTS['n'], DEFAULTS['p'])
        self.sig = sig
        _check_range('samples', samples, 1)
        _check_range('seed', seed, 0, 2 ** 64)
        _check_range('jobs', jobs, 1)
        _check_range('directions', directions, 1)
        _check_range('mu_points', mu_points, 2)
        _check_range('isometries', isometries, 1)
        if format not in ('json', 'markdown'):
            raise ConfigError("Unknown report format '%s'." % format)
        self.samples = int(samples)
        self.seed = int(seed)
        self.tol = tol
        self.out = out
        self.format = format
        self.jobs = int(jobs)
        self.directions = int(directions)
        self.mu_points = int(mu_points)
        self.isometries = int(isometries)
        if specs is None:
            specs = default_specs(sig)
        self.specs = []
        for spec, tag in specs:
            spec.checkFeasible()
            if tag is None:
                tag = expected_tag(spec, tol)
            self.specs.append((spec, tag))
        keys = [family_key(s) for s, t in self.specs]
        if len(set(keys)) != len(keys):
            raise ConfigError("The same family is selected twice.")

    def getFamilies(self):
        """Return (key, spec, expected tag) sorted by key"""
        return sorted(((family_key(s), s, t) for s, t in self.specs), key = lambda x: x[0])

    @classmethod
    def from_sources(cls, args = None):
        """Build the configuration from the config file and the parsed command line"""
        values = dict(DEFAULTS)
        tols = {}
        families = None
        cfgfile = getattr(args, 'config', None)
        if cfgfile:
            parser = LabConfigParser()
            if parser.readAllLocations(cfgfile) is None:
                raise ConfigError("Unable to find config file %s." % cfgfile)
            logger.info("---- Read config file %s" % cfgfile)
            for name in ('n', 'p', 'samples', 'seed', 'jobs', 'directions', 'mu_points',
                         'isometries'):
                v = parser.getInt(SECTION, name, None)
                if v is not None:
                    values[name] = v
            for name in ('format', 'out'):
                v = parser.getWithDefault(SECTION, name, None)
                if v is not None:
                    values[name] = v.strip()
            v = parser.getBool(SECTION, 'witnesses', None)
            if v is not None:
                values['witnesses'] = v
            tols.update(parser.getTolerances())
            text = parser.getWithDefault(SECTION, 'families', None)
            if text is not None:
                families = parse_families(text)
        if args is not None:
            for name in ('n', 'p', 'samples', 'seed', 'jobs', 'format', 'out'):
                v = getattr(args, name, None)
                if v is not None:
                    values[name] = v
            for name, default in TolerancePolicy._defaults:
                v = getattr(args, 'tol_' + name, None)
                if v is not None:
                    tols[name] = v
            if getattr(args, 'h', None) is not None:
                tols['h'] = args.h
            if getattr(args, 'no_witnesses', False):
                values['witnesses'] = False
            if getattr(args, 'family', None):
                families = [(args.family, {'q': args.q, 'm': args.m, 't': args.t})]
        try:
            tol = DEFAULT_TOLERANCES.replace(**tols)
            sig = Signature(values['n'], values['p'])
        except PreconditionError as e:
            raise ConfigError(str(e))
        if families is None:
            specs = default_specs(sig, values['witnesses'])
        else:
            specs = [(_spec_from_params(sig, f, params), None) for f, params in families]
        return cls(sig, specs, samples = values['samples'], seed = values['seed'], tol = tol,
                   out = values['out'], format = values['format'], jobs = values['jobs'],
                   directions = values['directions'], mu_points = values['mu_points'],
                   isometries = values['isometries'])


def _spec_from_params(sig, family, params):
    f = str(family).lower()
    need = {'typea': ('q', 'm', 't'), 'typeb': ('t',), 'horosphere': ('t',)}.get(f, ())
    for name in need:
        if params.get(name) is None:
            raise ConfigError("Family %s needs the parameter %s." % (family, name))
    return make_spec(family, sig, params.get('q'), params.get('m'), params.get('t'))


def default_specs(sig, witnesses = True):
    """Acceptance families and witnesses that are non-empty on sig"""
    out = []
    for spec in acceptance_families(sig):
        if len(spec.feasibility()):
            logger.info("**** Skipping %s, empty on %s." % (str(spec), str(sig)))
            continue
        out.append((spec, None))
    if witnesses:
        out.extend(witness_families(sig))
    return out


#
# seeds
#

def _stream(seed, key, *path):
    return np.random.SeedSequence([int(seed), zlib.crc32(key.encode('ascii'))] + list(path))


def _rng(seed, key, *path):
    return np.random.default_rng(_stream(seed, key, *path))


def _seed(seed, key, *path):
    return int(_stream(seed, key, *path).generate_state(1, dtype = np.uint64)[0]) >> 2


#
# work items
#

def _pairing(W, phi, pred, tol):
    """Largest phi pairing residual over the predicted D eigenvalues

    Returns (residual, exceptional, inadmissible)."""
    res = 0.0
    exceptional = False
    inadmissible = False
    for lam, k in pred.eigenvalues:
        try:
            lh = hat_lambda(lam, W.mu, W.eps, tol)
        except ExceptionalCaseError as e:
            exceptional = True
            inadmissible = inadmissible or not e.admissible
            continue
        res = max(res, phi_pairing_residual(W, phi, lam, lh, tol))
    return res, exceptional, inadmissible


def evaluate_point(spec, z, rng, config):
    """All pointwise checks of a non-degenerate spec at z"""
    tol = config.tol
    sig = spec.sig
    pred = spec.predicted()
    full, horizontal, dee = tangent_and_dee_frames(spec, z, tol)
    out = {}
    out['oracle'] = max(oracle_error(spec, z, full.expand(rng.standard_normal(len(full))), tol)
                        for i in range(config.directions))
    order, errors = convergence_order(spec, z, full.expand(rng.standard_normal(len(full))), tol)
    out['order'] = order
    out['order_errors'] = list(errors)
    xi = -1j * spec.normal(z)
    out['jchi'] = float(np.abs(analytic_weingarten(spec, z, 1j * z, tol) - xi).max())

    W = descend(spec, z, tol)
    out['mu'] = W.mu
    out['hopf'] = W.hopf_residual
    out['self_adjoint'] = W.selfAdjointDefect()
    summary = spectral_summary(W.matrix, tol)
    out['spectrum'] = summary.asDict()
    expected = [(v, k, k) for v, k in pred.fullSpectrum()]
    ok, dev, flipped = spectra_agree(summary, expected, LIMITS['spectrum'])
    out['spectrum_ok'] = ok
    out['spectral_deviation'] = float(dev) if np.isfinite(dev) else 1.0

    phi, eta, xiv, eps = structure_tensors(spec, z, tol, W)
    defects = almost_contact_defects(phi, eta, xiv, eps, W.getGram())
    out['structure'] = max(defects.values())
    out['lemma'] = lemma_aphix_residual(W, phi, tol)
    out['pairing'], out['exceptional'], out['inadmissible'] = _pairing(W, phi, pred, tol)

    X = random_tangent(spec, z, rng, tol)
    Y = random_tangent(spec, z, rng, tol)
    out['reeb'] = max(reeb_derivative_residual(spec, z, X, tol),
                      reeb_derivative_residual(spec, z, Y, tol))
    out['codazzi'] = codazzi_residual(spec, z, X, Y, tol)
    out['commutator'], out['killing'] = commutator_killing(W, phi, W.getGram(), tol, samples = 3,
                                                           seed = int(rng.integers(2 ** 31)))
    lam, rho, fit = eta_umbilical_fit(W, eta, xiv, tol)
    out['eta_fit'] = {'lambda': lam, 'rho': rho, 'residual': fit}
    out['curvature'] = curvature_identities(W, phi, eta, xiv, eps, sig.n, tol,
                                            seed = int(rng.integers(2 ** 31)))

    tag = classify(eps, summary, W.mu, tol)
    Wf = descend(spec, z, tol, flip_normal = True)
    tagf = classify(Wf.eps, spectral_summary(Wf.matrix, tol), Wf.mu, tol)
    out['classification'] = tag.tag
    out['flip_invariant'] = (tag.tag == tagf.tag)
    out['mu_gradient'] = abs(mu_gradient(spec, z, random_tangent(spec, z, rng, tol), tol))
    return out


def evaluate_degenerate_point(spec, z, config):
    """Null normal, shape relations and Jordan structure of the lightlike tube at z"""
    tol = config.tol
    n = spec.sig.n
    sig = spec.sig
    N, eps = unit_normal(spec, z, tol)
    xi = -1j * N
    out = {}
    out['null_normal'] = abs(real_metric(N, N, sig))
    out['a_normal'] = float(np.abs(analytic_weingarten(spec, z, N, tol) - 2.0 * N).max())
    out['a_xi'] = float(np.abs(analytic_weingarten(spec, z, xi, tol)).max())
    out['a_jchi'] = float(np.abs(analytic_weingarten(spec, z, 1j * z, tol) - xi).max())
    M, frame = lift_weingarten(spec, z, tol, 'full')
    summary = spectral_summary(M, tol)
    out['spectrum'] = summary.asDict()
    zero = summary.find(0.0, tol.eig_cluster_tol)
    out['jordan_ok'] = bool(zero is not None and zero[1] == n + 1 and zero[2] == n - 1
                            and not summary.diagonalizable)
    Md, dframe = lift_weingarten(spec, z, tol, 'dee')
    dsum = spectral_summary(Md, tol)
    out['dee_spectrum'] = dsum.asDict()
    ok, dev, flipped = spectra_agree(dsum, [(0.0, n - 1, n - 1), (2.0, n - 1, n - 1)],
                                     LIMITS['spectrum'])
    out['dee_ok'] = bool(ok and dsum.diagonalizable)
    return out


def _point_task(spec, key, i, config):
    rng = _rng(config.seed, key, 0, i)
    z = spec.sample(rng)
    if spec.degenerate:
        return evaluate_degenerate_point(spec, z, config)
    return evaluate_point(spec, z, rng, config)


def _mu_task(spec, key, i, config):
    values = []
    for j in range(config.mu_points):
        z = spec.sample(_rng(config.seed, key, 1, j))
        values.append(mu_at(spec, z, config.tol))
    return values


def _isometry_task(spec, key, i, config):
    res = 0.0
    dev = 0.0
    mult = True
    for j in range(config.isometries):
        U = block_isometry(spec, _seed(config.seed, key, 2, j))
        r = isometry_invariance(spec, U, _seed(config.seed, key, 3, j), config.tol, samples = 1,
                                residual_tol = LIMITS['isometry_residual'],
                                spectral_tol = LIMITS['isometry_spectrum'])
        res = max(res, r['max_defining_residual'])
        dev = max(dev, r['max_spectral_deviation'])
        mult = mult and r['multiplicities_equal']
    return {'max_defining_residual': res, 'max_spectral_deviation': dev,
            'multiplicities_equal': mult, 'maps': config.isometries,
            'passed': bool(res <= LIMITS['isometry_residual']
                           and dev <= LIMITS['isometry_spectrum'] and mult)}


_TASKS = {'point': _point_task, 'mu': _mu_task, 'isometry': _isometry_task}


#
# global checks
#

def tube_law_check(sig, seed, tol = DEFAULT_TOLERANCES, grid = 10):
    """|Q conj(Q) - sin^2(2s)| on a (theta, s) grid of normal geodesics from the quadric

    The s = pi/4 points are also checked against the lightlike tube."""
    rng = _rng(seed, 'tube', 0)
    z0 = sample_quadric_point(sig, int(rng.integers(2 ** 62)))
    tube = TypeB(sig, 0.5)
    degenerate = Degenerate(sig)
    res = 0.0
    for theta in 2.0 * np.pi * np.arange(grid) / grid:
        for s in 0.5 * np.pi * (np.arange(grid) + 0.5) / grid:
            w = tube_point(z0, theta, s, sig, tol)
            res = max(res, abs(tube.definingFunction(w) - np.sin(2.0 * s) ** 2),
                      abs(real_metric(w, w, sig) - 1.0))
    dres = 0.0
    for theta in 2.0 * np.pi * np.arange(grid) / grid:
        w = tube_point(z0, theta, np.pi / 4.0, sig, tol)
        r1, r2 = defining_residual(degenerate, w)
        dres = max(dres, abs(r1), abs(r2))
    return {'points': grid * grid, 'max_residual': float(res),
            'max_degenerate_residual': float(dres),
            'passed': bool(res <= LIMITS['tube'] and dres <= LIMITS['tube'])}


def _cot(x):
    return 1.0 / np.tan(x)


def _coth(x):
    return 1.0 / np.tanh(x)


# (name, epsilon, mu(r), lambda(r, theta), hat lambda(r, theta), r range, theta range)
TABLE_ROWS = [('cot/cot', 1, lambda r: 2.0 * _cot(2.0 * r),
               lambda r, a: _cot(r + a), lambda r, a: _cot(r - a), (0.3, 1.2), 0.25),
              ('tan/-cot', 1, lambda r: 2.0 * np.tan(2.0 * r),
               lambda r, a: np.tan(r + a), lambda r, a: -_cot(r - a), (0.3, 0.7), 0.2),
              ('coth/coth', -1, lambda r: 2.0 * _coth(2.0 * r),
               lambda r, a: _coth(r + a), lambda r, a: _coth(r - a), (0.3, 1.5), 0.25),
              ('tanh/tanh', -1, lambda r: 2.0 * _coth(2.0 * r),
               lambda r, a: np.tanh(r + a), lambda r, a: np.tanh(r - a), (0.3, 1.5), 0.25),
              ('coth/tanh', -1, lambda r: 2.0 * np.tanh(2.0 * r),
               lambda r, a: _coth(r + a), lambda r, a: np.tanh(r - a), (0.3, 1.5), 0.25),
              ('tanh/coth', -1, lambda r: 2.0 * np.tanh(2.0 * r),
               lambda r, a: np.tanh(r + a), lambda r, a: _coth(r - a), (0.3, 1.5), 0.25)]


def hat_lambda_table_check(seed, tol = DEFAULT_TOLERANCES, samples = 10000):
    """Evaluate hat_lambda against the closed pairs of principal curvatures

    At least samples random (r, theta) are spread over the rows; the
    mu = 2 row, where hat lambda = 1 for every lambda != 1, is checked as
    well."""
    rng = _rng(seed, 'table', 0)
    per_row = max(1, -(-samples // len(TABLE_ROWS)))
    rows = {}
    for name, eps, mu_f, lam_f, hat_f, (rlo, rhi), amax in TABLE_ROWS:
        dev = 0.0
        for k in range(per_row):
            r = rng.uniform(rlo, rhi)
            if eps == 1 and name.startswith('tan') and rng.random() < 0.5:
                r = -r
            a = rng.uniform(-amax, amax)
            expect = hat_f(r, a)
            got = hat_lambda(lam_f(r, a), mu_f(r), eps, tol)
            dev = max(dev, abs(got - expect) / max(1.0, abs(expect)))
        rows[name] = float(dev)
    dev = 0.0
    for k in range(per_row // 4 + 1):
        lam = rng.uniform(-3.0, 3.0)
        if abs(lam - 1.0) < 0.1:
            continue
        dev = max(dev, abs(hat_lambda(lam, 2.0, -1, tol) - 1.0))
    rows['mu=2'] = float(dev)
    worst = max(rows.values())
    return {'samples': per_row * len(TABLE_ROWS), 'rows': rows, 'max_deviation': worst,
            'passed': bool(worst <= LIMITS['table'])}


# (lambda, mu, epsilon, raises, admissible)
EXCEPTIONAL_CASES = [(1.0, 2.0, -1, True, True),
                     (-1.0, -2.0, -1, True, True),
                     (0.5, 1.0, 1, True, False),
                     (1.0, 2.0, 1, True, False),
                     (2.0, 4.0, -1, True, False),
                     (1.0, 1.0, -1, False, False),
                     (0.5, 3.0, 1, False, False)]


def exceptional_case_check(tol = DEFAULT_TOLERANCES):
    """hat_lambda raises exactly on 2 lambda = mu, admissible iff eps = -1 and |lambda| = 1"""
    correct = True
    for lam, mu, eps, raises, admissible in EXCEPTIONAL_CASES:
        try:
            hat_lambda(lam, mu, eps, tol)
            correct = correct and not raises
        except ExceptionalCaseError as e:
            correct = correct and raises and (e.admissible == admissible)
    return {'cases': len(EXCEPTIONAL_CASES), 'passed': bool(correct)}


#
# aggregation
#

def _stats(values):
    values = np.asarray(values, dtype = float)
    std = float(np.std(values, ddof = 1)) if len(values) > 1 else 0.0
    return float(np.mean(values)), std


def _predicted_block(spec):
    pred = spec.predicted()
    return {'mu': pred.mu,
            'eigenvalues': [[v, k] for v, k in pred.eigenvalues],
            'phi_behavior': pred.phi_behavior,
            'orientation_caveat': pred.orientation_caveat,
            'r': pred.r,
            'label': pred.label,
            'quoted': pred.quoted}


def _family_block(spec, tag, results, config):
    points = results['point']
    block = {'family': spec.asDict(), 'label': spec.label(), 'epsilon': spec.getEpsilon(),
             'isometry': results['isometry'][0]}
    crit = {'isometry_invariance': block['isometry']['passed']}
    if spec.degenerate:
        block['spectrum'] = points[0]['spectrum']
        block['dee_spectrum'] = points[0]['dee_spectrum']
        res = {}
        for name in ('null_normal', 'a_normal', 'a_xi', 'a_jchi'):
            res[name] = max(p[name] for p in points)
        block['residuals'] = res
        crit['degenerate_example'] = bool(res['null_normal'] <= LIMITS['null_normal']
                                          and max(res['a_normal'], res['a_xi'], res['a_jchi'])
                                          <= LIMITS['degenerate_relations']
                                          and all(p['jordan_ok'] and p['dee_ok'] for p in points))
        block['criteria'] = crit
        return block

    pred = spec.predicted()
    block['predicted'] = _predicted_block(spec)
    block['spectrum'] = points[0]['spectrum']
    mean, std = _stats(results['mu'][0])
    block['mu'] = {'mean': mean, 'stddev': std, 'predicted': pred.mu,
                   'points': len(results['mu'][0])}
    res = {}
    for name in ('oracle', 'jchi', 'hopf', 'self_adjoint', 'spectral_deviation', 'structure',
                 'lemma', 'pairing', 'reeb', 'codazzi', 'commutator', 'killing', 'mu_gradient'):
        res[name] = max(p[name] for p in points)
    res['commutator_min'] = min(p['commutator'] for p in points)
    res['eta_fit'] = max(p['eta_fit']['residual'] for p in points)
    res['eta_fit_min'] = min(p['eta_fit']['residual'] for p in points)
    for name in ('ricci', 'gauss_symmetry', 'holomorphic_curvature'):
        res[name] = max(p['curvature'][name] for p in points)
    block['residuals'] = res
    block['eta_fit'] = points[0]['eta_fit']
    orders = [p['order'] for p in points]
    block['orders'] = [o for o in orders if o is not None]
    block['exact_orders'] = sum(1 for o in orders if o is None)

    tags = sorted(set(p['classification'] for p in points))
    measured = tags[0] if len(tags) == 1 else 'Indeterminate'
    block['classification'] = {'tag': measured, 'expected': tag,
                               'flip_invariant': all(p['flip_invariant'] for p in points)}

    lo, hi = LIMITS['order']
    crit['oracle_agreement'] = bool(res['oracle'] <= LIMITS['oracle']
                                    and all(lo <= o <= hi for o in block['orders']))
    crit['hopf_and_mu'] = bool(res['hopf'] <= LIMITS['hopf']
                               and abs(mean - pred.mu) <= LIMITS['mu']
                               and std <= LIMITS['mu_stddev']
                               and res['mu_gradient'] <= LIMITS['mu_gradient']
                               and res['self_adjoint'] <= LIMITS['self_adjoint']
                               and res['jchi'] <= LIMITS['jchi'])
    crit['spectral_tables'] = all(p['spectrum_ok'] for p in points)
    crit['lemma_and_table'] = bool(res['lemma'] <= LIMITS['lemma']
                                   and res['pairing'] <= LIMITS['pairing']
                                   and not any(p['inadmissible'] for p in points))
    crit['structure_identities'] = bool(res['structure'] <= LIMITS['structure']
                                        and res['reeb'] <= LIMITS['reeb']
                                        and res['codazzi'] <= LIMITS['codazzi']
                                        and res['ricci'] <= LIMITS['ricci']
                                        and res['gauss_symmetry'] <= LIMITS['gauss_symmetry']
                                        and res['holomorphic_curvature']
                                        <= LIMITS['holomorphic_curvature'])
    umbilical = tag in ('A_plus_class1', 'A_plus_class2', 'A_minus_class3',
                        'A_minus_class4', 'Horosphere')
    fit_ok = True
    if umbilical:
        fit_ok = res['eta_fit'] <= LIMITS['eta_fit']
    elif isinstance(spec, TypeB):
        fit_ok = res['eta_fit_min'] >= LIMITS['eta_fit_gap']
    crit['classifier'] = bool((tag is None or measured == tag)
                              and block['classification']['flip_invariant'] and fit_ok)
    if isinstance(spec, TypeB):
        gap = abs(pred.eigenvalues[0][0] - pred.eigenvalues[-1][0])
        comm_ok = res['commutator_min'] >= min(LIMITS['commutator_gap'], 0.5 * gap)
    else:
        comm_ok = res['commutator'] <= LIMITS['commutator']
    crit['killing_equivalence'] = bool(comm_ok and res['killing'] <= LIMITS['killing'])
    block['criteria'] = crit
    return block


class Report():
    """Result of a verification suite

    ``families`` maps the family key to its block, ``checks`` holds the
    checks that do not belong to a family and ``criteria`` the named
    pass/fail entries."""

    def __init__(self, meta, families, checks, criteria, ledger = None):
        self.meta = meta
        self.families = families
        self.checks = checks
        self.criteria = criteria
        self.ledger = ledger if ledger is not None else []

    def passed(self):
        return all(self.criteria.values())

    def exitCode(self):
        return 0 if self.passed() else 1

    def getFamily(self, key):
        if key not in self.families:
            raise MissingFamilyError(key)
        return self.families[key]

    def findFamily(self, label):
        """Return the first key whose family label is label"""
        for key in sorted(self.families):
            if self.families[key]['label'] == label:
                return key
        raise MissingFamilyError(label)

    def asDict(self):
        return {'meta': self.meta, 'families': self.families, 'checks': self.checks,
                'criteria': self.criteria, 'paper_tables': self.ledger,
                'passed': self.passed()}

    @classmethod
    def fromDict(cls, d):
        try:
            return cls(d['meta'], d['families'], d['checks'], d['criteria'],
                       d.get('paper_tables', []))
        except (KeyError, TypeError):
            raise ConfigError("File is not a pyhopf report.")

    @classmethod
    def load(cls, filename):
        try:
            with open(filename) as f:
                d = json.load(f)
        except (IOError, OSError, ValueError) as e:
            raise ConfigError("Unable to read report %s (%s)." % (filename, str(e)))
        return cls.fromDict(d)


def _aggregate_criteria(families, checks):
    crit = {}
    for name in CRITERIA:
        flags = [b['criteria'][name] for k, b in sorted(families.items())
                 if name in b['criteria']]
        crit[name] = all(flags)
    crit['lemma_and_table'] = bool(crit['lemma_and_table'] and checks['table']['passed']
                                   and checks['exceptional']['passed'])
    crit['tube_law'] = checks['tube']['passed']
    crit['determinism'] = checks['determinism']['passed']
    return crit


def _versions():
    return {'pyhopf': RELEASE, 'numpy': np.__version__, 'scipy': scipy.__version__}


def run_suite(config):
    """Run all checks of the configured families and return a Report

    Work items are (family, kind, index) triples; they may run on a thread
    pool and are merged in their fixed order, so the report does not depend
    on the number of workers."""
    t0 = time.time()
    families = config.getFamilies()
    lookup = dict((key, spec) for key, spec, tag in families)
    tasks = []
    for key, spec, tag in families:
        tasks.extend((key, 'point', i) for i in range(config.samples))
        if not spec.degenerate:
            tasks.append((key, 'mu', 0))
        tasks.append((key, 'isometry', 0))
    logger.info("---- Running %d work items on %d families (seed %d)"
                % (len(tasks), len(families), config.seed))

    def work(task):
        key, kind, i = task
        if __verbose__:
            logger.debug("---- %s %s %d" % (key, kind, i))
        return _TASKS[kind](lookup[key], key, i, config)

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers = config.jobs) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(t) for t in tasks]

    grouped = {}
    for (key, kind, i), r in zip(tasks, results):
        grouped.setdefault(key, {}).setdefault(kind, []).append(r)
    blocks = {}
    for key, spec, tag in families:
        blocks[key] = _family_block(spec, tag, grouped[key], config)
        logger.info("---- %s : %s" % (key, ", ".join("%s %s" % (k, 'pass' if v else 'FAIL')
                                                       for k, v in sorted(blocks[key]['criteria'].items()))))

    checks = {'tube': tube_law_check(config.sig, config.seed, config.tol),
              'table': hat_lambda_table_check(config.seed, config.tol),
              'exceptional': exceptional_case_check(config.tol)}
    if len(tasks):
        again = work(tasks[0])
        same = canonical_json_bytes(again) == canonical_json_bytes(results[0])
    else:
        same = True
    checks['determinism'] = {'passed': bool(same)}

    meta = {'seed': config.seed, 'n': config.sig.n, 'p': config.sig.p,
            'samples': config.samples, 'directions': config.directions,
            'mu_points': config.mu_points, 'isometries': config.isometries,
            'tolerances': config.tol.asDict(), 'families': [k for k, s, t in families],
            'versions': _versions()}
    report = Report(meta, blocks, checks, _aggregate_criteria(blocks, checks))
    report.ledger = compare_to_paper_tables(report)
    report.criteria['paper_tables'] = all(r['verdict'] != 'mismatch' for r in report.ledger)
    for name in CRITERIA:
        if not report.criteria[name]:
            logger.error("XXXX Criterion %s failed." % name)
    logger.info("---- Suite finished in %.2f s" % (time.time() - t0))
    return report


#
# comparison with the printed item lists
#

def _merge(rows, tol):
    out = []
    for v, k in sorted(rows):
        if k <= 0:
            continue
        if len(out) and abs(out[-1][0] - v) <= tol * max(1.0, abs(v)):
            out[-1] = (out[-1][0], out[-1][1] + k)
        else:
            out.append((v, k))
    return out


def _same(a, b, tol):
    if len(a) != len(b):
        return False
    for (v, k), (w, l) in zip(a, b):
        if k != l or abs(v - w) > tol * max(1.0, abs(v)):
            return False
    return True


def _table_transforms(quoted, measured, mu, tol):
    """Cheapest transformation making the quoted rows equal to the measured spectrum

    Returns (names, mapping) or None; mapping gives the transformed (value,
    multiplicity) of every quoted row in the measured orientation."""
    murow = [r for r in quoted if r['name'] == 'mu'][0]
    lams = [r for r in quoted if r['name'] != 'mu']
    best = None
    swaps = (False, True) if len(lams) == 2 else (False,)
    for swap in swaps:
        for signs in itertools.product((1.0, -1.0), repeat = len(lams)):
            for negate in (False, True):
                names = []
                if swap:
                    names.append('exchanged multiplicities')
                for r, s in zip(lams, signs):
                    if s < 0:
                        names.append('sign of %s' % r['name'])
                if negate:
                    names.append('mu >= 0 normalization')
                if best is not None and len(names) >= len(best[0]):
                    continue
                mults = [r['multiplicity'] for r in lams]
                if swap:
                    mults = mults[::-1]
                g = -1.0 if negate else 1.0
                rows = [(g * murow['value'], murow['multiplicity'])]
                rows += [(g * s * r['value'], k) for r, s, k in zip(lams, signs, mults)]
                if abs(rows[0][0] - mu) > tol * max(1.0, abs(mu)):
                    continue
                if _same(_merge(rows, tol), measured, tol):
                    mapping = dict((r['name'], row) for r, row in zip([murow] + lams, rows))
                    best = (names, mapping)
    return best


def compare_to_paper_tables(report, families = None, tol = None):
    """Ledger of the printed item lists against the measured spectra

    Every quoted row gives one entry with the printed and measured value
    and the verdict of its family: 'match' when the printed multiset is the
    measured one, 'match-with-caveat' when it is after exchanging the TypeA
    multiplicities, flipping signs of printed lambdas or normalizing to
    mu >= 0, and 'mismatch' otherwise."""
    if isinstance(report, dict):
        report = Report.fromDict(report)
    if tol is None:
        tol = LIMITS['spectrum']
    if families is None:
        keys = sorted(report.families)
    else:
        keys = list(families)
        for key in keys:
            report.getFamily(key)
    ledger = []
    for key in keys:
        block = report.getFamily(key)
        quoted = block.get('predicted', {}).get('quoted', [])
        if not len(quoted):
            continue
        clusters = block['spectrum']['clusters']
        measured = [(c['value'], c['algebraic']) for c in clusters]
        mu = block['mu']['mean']
        found = _table_transforms(quoted, measured, mu, tol)
        if found is None:
            verdict, names = VERDICTS[2], []
            mapping = dict((r['name'], (r['value'], r['multiplicity'])) for r in quoted)
        else:
            names, mapping = found
            verdict = VERDICTS[1] if len(names) else VERDICTS[0]
        mucl = min(clusters, key = lambda c: abs(c['value'] - mu))
        for r in quoted:
            target, k = mapping[r['name']]
            if r['name'] == 'mu':
                near = mucl
            elif k <= 0:
                near = None
            else:
                # the mu cluster only carries a lambda row of the same value
                cands = [c for c in clusters if c is not mucl
                         or abs(target - mu) <= tol * max(1.0, abs(mu))]
                near = min(cands, key = lambda c: abs(c['value'] - target)) if len(cands) else None
            ledger.append({'family': key, 'quantity': r['name'],
                           'printed': r['value'], 'printed_multiplicity': r['multiplicity'],
                           'measured': near['value'] if near is not None else None,
                           'measured_multiplicity': near['algebraic'] if near is not None else 0,
                           'verdict': verdict, 'transformations': list(names)})
        if verdict == 'mismatch':
            logger.error("XXXX %s does not match its printed item list." % key)
    return ledger


#
# rendering
#

def _md_table(header, rows):
    s = "| " + " | ".join(header) + " |\n"
    s += "|" + "---|" * len(header) + "\n"
    for r in rows:
        s += "| " + " | ".join(r) + " |\n"
    return s


def _measured_cell(r):
    if r['measured'] is None:
        return "absent (x0)"
    return "%s (x%d)" % (fmt10(r['measured']), r['measured_multiplicity'])


def _render_markdown(d):
    meta = d['meta']
    s = "# pyhopf verification report\n\n"
    s += "seed %d, n = %d, p = %d, %d points per family\n\n" % (meta['seed'], meta['n'],
                                                                 meta['p'], meta['samples'])
    s += "## Criteria\n\n"
    s += _md_table(['criterion', 'result'],
                   [[k, 'pass' if d['criteria'][k] else 'FAIL'] for k in sorted(d['criteria'])])
    for key in sorted(d['families']):
        b = d['families'][key]
        s += "\n## %s\n\n" % key
        clusters = b['spectrum']['clusters']
        if 'mu' not in b:
            s += "epsilon = 0 (null normal), shape operator of the lift\n\n"
            s += _md_table(['eigenvalue', 'algebraic', 'geometric'],
                           [[fmt10(c['value']), '%d' % c['algebraic'], '%d' % c['geometric']]
                            for c in clusters])
        else:
            mu = b['mu']['mean']
            s += "epsilon = %d, mu = %s (stddev %s)\n\n" % (b['epsilon'], fmt10(mu),
                                                           fmt10(b['mu']['stddev']))
            mucl = min(clusters, key = lambda c: abs(c['value'] - mu))
            rows = [['mu', fmt10(mu), '%d' % mucl['algebraic']]]
            for c in clusters:
                if c is mucl:
                    continue
                rows.append(['lambda', fmt10(c['value']), '%d' % c['algebraic']])
            s += _md_table(['quantity', 'value', 'multiplicity'], rows)
            s += "\nclassification: %s\n" % b['classification']['tag']
        s += "\n" + _md_table(['residual', 'value'],
                              [[k, fmt10(v)] for k, v in sorted(b['residuals'].items())])
    if len(d.get('paper_tables', [])):
        s += "\n## Printed item lists\n\n"
        s += _md_table(['family', 'quantity', 'printed', 'measured', 'verdict'],
                       [[r['family'], r['quantity'],
                         "%s (x%d)" % (fmt10(r['printed']), r['printed_multiplicity']),
                         _measured_cell(r),
                         r['verdict']] for r in d['paper_tables']])
    return s


def emit_report(report, format = 'json'):
    """Serialize a report to bytes, canonical JSON or markdown"""
    d = report.asDict() if isinstance(report, Report) else report
    if format == 'json':
        return canonical_json_bytes(d)
    if format == 'markdown':
        return _render_markdown(d).encode('utf-8')
    raise ConfigError("Unknown report format '%s'." % format)


def _output_path(out, format):
    if out:
        return out
    outdir = os.environ.get(OUTDIR_VARIABLE)
    if outdir:
        return os.path.join(outdir, 'hopflab-report.' + ('md' if format == 'markdown' else 'json'))
    return None


def _write(data, path):
    if path is None:
        sys.stdout.write(data.decode('utf-8'))
        return
    try:
        with open(path, 'wb') as f:
            f.write(data)
    except (IOError, OSError) as e:
        raise ConfigError("Unable to write %s (%s)." % (path, str(e)))
    logger.info("---- Wrote %s" % path)


#
# command line
#

def _build_parser():
    common = argparse.ArgumentParser(add_help = False)
    common.add_argument('-v', '--verbose', action = 'store_true', default = argparse.SUPPRESS,
                        help = 'print debug messages')

    parser = argparse.ArgumentParser(prog = 'hopflab', parents = [common],
                                     description = 'Numerical lab for Hopf real hypersurfaces '
                                                   'of the indefinite complex projective space.')
    sub = parser.add_subparsers(dest = 'command')

    cat = sub.add_parser('catalog', parents = [common], help = 'list the feasible families')
    cat.add_argument('--n', type = int, default = DEFAULTS['n'])
    cat.add_argument('--p', type = int, default = DEFAULTS['p'])
    cat.add_argument('--format', choices = ['text', 'json'], default = 'text')

    ver = sub.add_parser('verify', parents = [common], help = 'run a verification suite')
    ver.add_argument('--config', help = 'config file (searched in ~/.pyhopf, /etc/pyhopf)')
    ver.add_argument('--n', type = int)
    ver.add_argument('--p', type = int)
    ver.add_argument('--family', help = 'TypeA, TypeB, Horosphere or Degenerate')
    ver.add_argument('--q', type = int)
    ver.add_argument('--m', type = int)
    ver.add_argument('--t', type = float)
    ver.add_argument('--samples', type = int, help = 'points per family')
    ver.add_argument('--seed', type = int)
    ver.add_argument('--h', type = float, help = 'finite difference step')
    ver.add_argument('--out', help = 'report file')
    ver.add_argument('--format', choices = ['json', 'markdown'])
    ver.add_argument('--jobs', type = int, help = 'worker threads')
    ver.add_argument('--no-witnesses', action = 'store_true', dest = 'no_witnesses',
                     help = 'leave out the single curvature TypeA members')
    for name, default in TolerancePolicy._defaults:
        ver.add_argument('--tol.' + name, dest = 'tol_' + name,
                         type = int if name == 'newton_max_iter' else float,
                         help = 'default %g' % default)

    cls = sub.add_parser('classify', parents = [common],
                         help = 'classify an operator matrix given in a JSON file')
    cls.add_argument('operator', help = 'JSON file with "matrix", "eps" and optionally "mu"')

    rep = sub.add_parser('report', parents = [common], help = 're-render a saved report')
    rep.add_argument('report')
    rep.add_argument('--format', choices = ['json', 'markdown'], default = 'markdown')
    rep.add_argument('--out')
    return parser


def _cmd_catalog(args):
    try:
        sig = Signature(args.n, args.p)
    except PreconditionError as e:
        raise ConfigError(str(e))
    entries = feasible_catalog(sig)
    if args.format == 'json':
        _write(canonical_json_bytes({'n': sig.n, 'p': sig.p, 'catalog': entries}), None)
        return 0
    for e in entries:
        params = " ".join("%s=%d" % (k, e[k]) for k in ('q', 'm') if k in e)
        sys.stdout.write("%-12s %-10s %s\n" % (e['family'], params,
                                               ", ".join(e['ranges']) or 'empty'))
    return 0


def _cmd_verify(args):
    config = SuiteConfig.from_sources(args)
    report = run_suite(config)
    _write(emit_report(report, config.format), _output_path(config.out, config.format))
    return report.exitCode()


def _cmd_classify(args):
    try:
        with open(args.operator) as f:
            d = json.load(f)
        A = np.array(d['matrix'], dtype = float)
        eps = int(d['eps'])
    except (IOError, OSError, ValueError, KeyError, TypeError) as e:
        raise ConfigError("Unable to read operator file %s (%s)." % (args.operator, str(e)))
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ConfigError("Operator matrix must be square.")
    # the frame starts with xi
    mu = float(d.get('mu', A[0, 0]))
    c = classify(eps, spectral_summary(A), mu)
    _write(canonical_json_bytes(c.asDict()), None)
    return 0


def _cmd_report(args):
    report = Report.load(args.report)
    _write(emit_report(report, args.format), _output_path(args.out, args.format))
    return 0


def main(argv = None):
    """Entry point of hopflab; returns the exit code"""
    global __verbose__
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, 'verbose', False):
        __verbose__ = True
        set_verbose(True)
    if args.command is None:
        parser.print_help()
        return 2
    commands = {'catalog': _cmd_catalog, 'verify': _cmd_verify,
                'classify': _cmd_classify, 'report': _cmd_report}
    try:
        return commands[args.command](args)
    except (ConfigError, InadmissibleSpecError, InfeasibleSpecError, MissingFamilyError) as e:
        logger.error("XXXX %s" % str(e))
        return 2
    except (RetractionError, DegeneracyError, SamplingError, PreconditionError,
            np.linalg.LinAlgError, sl.LinAlgError) as e:
        logger.error("XXXX Numerical failure: %s" % str(e))
        return 3
    except HopfError as e:
        logger.error("XXXX %s" % str(e))
        return 3


if __name__ == '__main__':
    sys.exit(main())
