#
# utils.py (c) pyhopf developers 2026
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
"""Set of useful utilities for logging and number formatting"""

import logging
import sys
import json

import numpy as np

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"

LOG_FORMAT = "%(message)s"

RELEASE = "0.1.0"


def make_logger(name, verbose = False, stream = None):
    """Return the logger for a pyhopf module

    The first call installs a stream handler on the "pyhopf" logger;
    verbose switches the level to DEBUG."""
    root = logging.getLogger('pyhopf')
    if not root.handlers:
        handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.setLevel(logging.INFO)
        root.propagate = False
    if verbose:
        root.setLevel(logging.DEBUG)
    return logging.getLogger(name)


def set_verbose(verbose):
    logging.getLogger('pyhopf').setLevel(logging.DEBUG if verbose else logging.INFO)


def fmt17(x):
    """Float with 17 significant digits (exact round trip)"""
    return '%.17g' % float(x)


def fmt10(x):
    """Float with 10 significant digits for human readable tables"""
    return '%.10g' % float(x)


def _encode(obj, indent, level):
    pad = ' ' * (indent * (level + 1))
    end = ' ' * (indent * level)
    if obj is None:
        return 'null'
    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if isinstance(obj, (int, np.integer)):
        return '%d' % int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            raise ValueError("Non finite value %r in report." % x)
        return fmt17(x)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii = True)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not len(obj):
            return '{}'
        items = ['%s%s: %s' % (pad, json.dumps(str(k), ensure_ascii = True),
                               _encode(obj[k], indent, level + 1))
                 for k in sorted(obj, key = str)]
        return '{\n' + ',\n'.join(items) + '\n' + end + '}'
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return '[]'
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return '[\n' + ',\n'.join(items) + '\n' + end + ']'
    raise TypeError("Object of type %s cannot be serialized." % type(obj).__name__)


def canonical_json_bytes(obj, indent = 1):
    """Serialize with sorted keys and 17 significant digit floats

    Identical structures always give identical bytes; json.loads reads the
    text back to an equal structure."""
    return (_encode(obj, indent, 0) + '\n').encode('ascii')
