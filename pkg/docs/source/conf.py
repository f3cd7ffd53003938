# -*- coding: utf-8 -*-
#
# evopiezo documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# The package is documented from the source tree.
sys.path.insert(0, os.path.abspath('../../'))

# -- General configuration ------------------------------------------------

needs_sphinx = '1.3'

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.napoleon'
             ]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'evopiezo'
copyright = u'2026, The evopiezo developers'
author = u'The evopiezo developers'

version = u'1.0'
release = u'1.0'

language = 'en'

exclude_patterns = []

pygments_style = 'sphinx'

todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

htmlhelp_basename = 'evopiezodoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = { }

latex_documents = [
    (master_doc, 'evopiezo.tex', u'evopiezo Documentation',
     u'The evopiezo developers', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'evopiezo', u'evopiezo Documentation',
     [author], 1)
]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    (master_doc, 'evopiezo', u'evopiezo Documentation',
     author, 'evopiezo', 'Evolutionary equations of coupled media.',
     'Miscellaneous'),
]
