# -*- coding: utf-8 -*-
#
# pyhopf documentation build configuration file
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.todo', 'sphinx.ext.imgmath']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'pyhopf'
copyright = u'2026, pyhopf developers'

version = '0.1'
release = '0.1.0'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'nature'
html_static_path = ['_static']
html_show_copyright = True
htmlhelp_basename = 'pyhopfdoc'
highlight_language = 'python'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'pyhopf.tex', u'pyhopf Documentation',
   u'pyhopf developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'hopflab', u'pyhopf Documentation',
     [u'pyhopf developers'], 1)
]
