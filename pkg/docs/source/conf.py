# Configuration file for the Sphinx documentation builder.
#
# For the full list of options see
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
from datetime import datetime

# The package is documented from the repository checkout.
sys.path.insert(0, os.path.abspath('../../'))

from hermlab.__version__ import __version__  # noqa E402

# -- Project information -----------------------------------------------------

project = 'Hermlab'
copyright = f'{datetime.now().year}, Hermlab developers'
author = 'Hermlab developers'

release = __version__


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax',
    # Link to other project's documentation (see mapping below)
    'sphinx.ext.intersphinx',
    # Add a link to the Python source code for classes, functions etc.
    'sphinx.ext.viewcode',
    # Add a link to another page of the documentation
    'sphinx.ext.autosectionlabel',
    'sphinx_rtd_theme',
]

intersphinx_mapping = {
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'python': ('https://docs.python.org/3', None),
}

# napoleon configuration for numpy docstring
napoleon_use_ivar = True
napoleon_use_google_string = False
napoleon_include_special_with_doc = True

autosummary_generate = True
autoclass_content = 'both'
autodoc_inherit_docstrings = True
html_show_sourcelink = False

templates_path = ['_templates']

language = 'en'

exclude_patterns = []

source_suffix = '.rst'

master_doc = 'index'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_options = {
    'logo_only': False,
    'display_version': True,
    'prev_next_buttons_location': 'bottom',
    'style_external_links': False,
}

# -- Options for PDF output ---------------------------------------------------

latex_elements = {
    'papersize': 'letterpaper',
    'pointsize': '10pt',
    'figure_align': 'htbp',
}
