# -*- coding: utf-8 -*-
#
# RenewKit documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

import sys
import os

# the package is two levels up from the docs folder
sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

from renewkit import __version__, __release__, __author__

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

# General information about the project.
project = u'RenewKit'
copyright = u'2024, RenewKit developers'
author = __author__

# The short X.Y version.
version = __version__
# The full version, including alpha/beta/rc tags.
release = __release__

exclude_patterns = ['_build']
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_theme_options = {
    'description': 'Renewal process limit law verification',
    'show_related': True
}
html_sidebars = {
    '**': [
        'about.html',
        'navigation.html',
        'searchbox.html',
        'relations.html'
    ]
}
htmlhelp_basename = 'RenewKitdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}
latex_documents = [
    (master_doc, 'RenewKit.tex', u'RenewKit Documentation', __author__,
     'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'renewkit', u'RenewKit Documentation', [author], 1)
]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
    (master_doc, 'RenewKit', u'RenewKit Documentation', author, 'RenewKit',
     'Renewal process limit law verification toolkit.', 'Miscellaneous'),
]

# Example configuration for intersphinx: refer to the Python standard library.
intersphinx_mapping = {
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'python': ('https://docs.python.org/3/', None),
    'jsonschema': ('https://python-jsonschema.readthedocs.io/en/stable/',
                   None)
}
