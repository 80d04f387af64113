#!/usr/bin/env python
""" pyhopf : numerical lab for Hopf real hypersurfaces of CP^n_p

The pyhopf package builds the standard examples of Hopf real
hypersurfaces in the indefinite complex projective space as level sets
on the hyperquadric of C^{n+1}_p, computes their shape operators in
closed form and by finite differences, and checks the identities of
Hopf hypersurface theory numerically.

A command line harness (hopflab) runs seeded verification suites and
writes deterministic JSON or markdown reports.
"""

classifiers = """\
Development Status :: 4 - Beta
Environment :: Console
Intended Audience :: Science/Research
License :: OSI Approved :: GNU General Public License (GPL)
Programming Language :: Python
Programming Language :: Python :: 3
Topic :: Scientific/Engineering :: Mathematics
Topic :: Software Development :: Libraries :: Python Modules
Operating System :: MacOS :: MacOS X
Operating System :: Unix
"""

from setuptools import setup

__version__ = "0.1.0"

doclines = __doc__.split("\n")

setup(name='pyhopf',
      version=__version__,
      author='pyhopf developers',
      platforms = ["any"],
      description = doclines[0],
      long_description = "\n".join(doclines[2:]),
      classifiers = [c for c in classifiers.split("\n") if c],
      packages=['pyhopf'],
      install_requires=['numpy>=1.17', 'scipy>=1.4'],
      extras_require={'test': ['pytest'], 'doc': ['sphinx']},
      python_requires='>=3.7',
      scripts=['scripts/hopflab']
)
