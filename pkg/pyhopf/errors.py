#
# errors.py (c) pyhopf developers 2026
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
"""Exceptions raised by pyhopf"""

__version__   = "$Revision$"
__author__    = "pyhopf developers"
__date__      = "$LastChangedDate$"
__id__        = "$Id$"


class HopfError(Exception):
    """Base class of all pyhopf errors"""
    pass


class DimensionError(HopfError, ValueError):
    """Raised when vector lengths do not match the signature"""
    pass


class PreconditionError(HopfError, ValueError):
    """Raised when the arguments of an operation violate its precondition"""
    pass


class DegeneracyError(HopfError):
    """Raised when a span or an induced metric is numerically degenerate

    The attribute ``deficiency`` holds the rank deficiency of the Gram
    matrix that triggered the error."""
    def __init__(self, msg, deficiency = 0):
        HopfError.__init__(self, msg)
        self.deficiency = deficiency


class InadmissibleSpecError(HopfError, ValueError):
    """Raised when family parameters are outside the admissible set"""
    pass


class InfeasibleSpecError(HopfError):
    """Raised when a block of the signature cannot carry a prescribed norm"""
    def __init__(self, msg, family = None, block = None):
        HopfError.__init__(self, msg)
        self.family = family
        self.block = block


class SamplingError(HopfError):
    """Raised when a sampler exhausts its rejection budget"""
    pass


class RetractionError(HopfError):
    """Raised when the Newton retraction fails"""
    pass


class ExceptionalCaseError(HopfError):
    """Raised by hat_lambda when 2*lambda equals mu

    ``admissible`` is True when the data can come from a Hopf hypersurface,
    which forces epsilon = -1 and |lambda| = 1."""
    def __init__(self, msg, admissible = False):
        HopfError.__init__(self, msg)
        self.admissible = admissible


class MissingFamilyError(HopfError, KeyError):
    """Raised when a report does not contain a requested family"""
    def __str__(self):
        return str(self.args[0]) if self.args else ''


class ConfigError(HopfError):
    """Raised when a configuration option cannot be read or converted"""
    pass
