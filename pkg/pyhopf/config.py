#
# config.py (c) pyhopf developers 2026
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
"""Reader for suite configuration files

A configuration file is a list of ``key = value`` lines, optionally under
a ``[suite]`` section header, for example::

    n = 4
    p = 2
    seed = 42
    samples = 10
    families = TypeA:1:4:0.75, TypeB:4, Horosphere:1
    tol.eig_cluster_tol = 1e-6

Keys starting with ``tol.`` set fields of the tolerance policy.
"""

import os
import re
from configparser import ConfigParser, NoOptionError, NoSectionError

from pyhopf.errors import ConfigError
from pyhopf.utils import make_logger

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"

logger = make_logger(__name__)

SECTION = 'suite'
_HEADER = re.compile(r'^\s*\[[^\]]+\]', re.MULTILINE)


class LabConfigParser(ConfigParser):
    """Class to read the config file which defines a verification suite"""

    def readText(self, text, source = '<string>'):
        """Parse text, adding the implicit [suite] header when none is given"""
        if not _HEADER.search(text):
            text = '[%s]\n' % SECTION + text
        self.read_string(text, source = source)

    def readFile(self, filename):
        try:
            with open(filename) as f:
                text = f.read()
        except (IOError, OSError) as e:
            raise ConfigError("Unable to read config file %s (%s)." % (filename, str(e)))
        self.readText(text, source = filename)
        return filename

    def readAllLocations(self, filename):
        """Read filename, searching the standard locations when it is not a path

        Returns the file read or None."""
        if os.path.isfile(filename):
            return self.readFile(filename)
        locations = []
        if os.name == 'posix':
            if 'HOME' in os.environ:
                locations.append(os.environ['HOME'] + os.path.sep + ".pyhopf")
            locations.append('/usr/local/pyhopf/etc')
            locations.append('/etc/pyhopf')
        for l in locations:
            _f = l + os.path.sep + filename
            if os.path.isfile(_f):
                return self.readFile(_f)
        return None

    def getWithDefault(self, section, option, default):
        try:
            r = self.get(section, option)
        except (NoOptionError, NoSectionError):
            r = default
            logger.debug("**** Using default value for %s." % option)
        return r

    def _getWithConvert(self, _conv_fcn, section, option, default):
        val = self.getWithDefault(section, option, default)
        if val is None:
            return None
        try:
            val = _conv_fcn(val)
        except (TypeError, ValueError):
            raise ConfigError("Unable to convert option %s to correct datatype." % (option))
        return val

    def getFloat(self, *args, **kwargs):
        return self._getWithConvert(float, *args, **kwargs)

    def getInt(self, *args, **kwargs):
        return self._getWithConvert(_to_int, *args, **kwargs)

    def getBool(self, *args, **kwargs):
        return self._getWithConvert(_to_bool, *args, **kwargs)

    def getTolerances(self, section = SECTION):
        """Return the dict of tol.<name> options converted to numbers"""
        out = {}
        if not self.has_section(section):
            return out
        for key in self.options(section):
            if key.startswith('tol.'):
                name = key[4:]
                conv = _to_int if name == 'newton_max_iter' else float
                out[name] = self._getWithConvert(conv, section, key, None)
        return out


def _to_int(v):
    if isinstance(v, int):
        return v
    return int(str(v).strip(), 0)


def _to_bool(v):
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ('1', 'yes', 'true', 'on'):
        return True
    if s in ('0', 'no', 'false', 'off'):
        return False
    raise ValueError(s)


def parse_families(text):
    """Parse 'TypeA:1:4:0.75, TypeB:4' into (family, params) tuples

    TypeA takes q:m:t, TypeB and Horosphere take t, Degenerate nothing."""
    out = []
    for item in str(text).split(','):
        item = item.strip()
        if not item:
            continue
        parts = [p.strip() for p in item.split(':')]
        name = parts[0]
        try:
            if name.lower() == 'typea':
                if len(parts) != 4:
                    raise ValueError(item)
                out.append(('TypeA', {'q': int(parts[1]), 'm': int(parts[2]),
                                      't': float(parts[3])}))
            elif name.lower() in ('typeb', 'horosphere'):
                if len(parts) != 2:
                    raise ValueError(item)
                out.append(('TypeB' if name.lower() == 'typeb' else 'Horosphere',
                            {'t': float(parts[1])}))
            elif name.lower() == 'degenerate':
                out.append(('Degenerate', {}))
            else:
                raise ValueError(item)
        except ValueError:
            raise ConfigError("Unable to parse family entry '%s'." % item)
    return out
