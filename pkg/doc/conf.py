# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import sys
import os

sys.path.insert(0, os.path.abspath('..'))

# -- Project information -----------------------------------------------------

project = 'rcsplit'
copyright = '2026, the rcsplit developers'
author = 'the rcsplit developers'

# The full version, including alpha/beta/rc tags
release = '0.1'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.todo',
    'sphinx.ext.intersphinx',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
    'numpydoc',
    'sphinx_gallery.gen_gallery',
]


sphinx_gallery_conf = {
    'examples_dirs': ['examples'],
    'gallery_dirs': ['auto_example'],
    'run_stale_examples': True,
    'show_signature': False
    }

autodoc_default_options = {'members': None, 'inherited-members': None}

intersphinx_mapping = {'sympy': ('https://docs.sympy.org/latest', None),
                       'numpy': ('https://numpy.org/doc/stable', None)}
autosummary_generate = True

numpydoc_show_class_members = True
numpydoc_class_members_toctree = False

templates_path = ['_templates']

source_suffix = ['.rst']

master_doc = 'index'

exclude_patterns = []


# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'

html_show_sourcelink = True

latex_elements = {
    'papersize': 'a4paper',
    'pointsize': '10pt',
}

man_pages = [
    ('index', 'rcsplit', u'rcsplit Documentation',
     [author], 1)
]

texinfo_documents = [
    ('index', 'rcsplit', u'rcsplit Documentation',
   author, 'rcsplit', 'Splitting types of normal bundles of rational curves.',
   'Miscellaneous'),
]
