#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# sepvol documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
from pathlib import Path

HERE = Path(__file__).parent
sys.path[:0] = [str(HERE.parent)]

import sepvol  # noqa

# -- General configuration ---------------------------------------------

needs_sphinx = "4.3"  # Nicer param docs

extensions = [
    "myst_parser",
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx_autodoc_typehints",  # needs to be after napoleon
    "sphinx.ext.autosummary",
    "sphinx_copybutton",
]

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# Generate the API documentation when building
autosummary_generate = True
autodoc_member_order = "bysource"
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_include_init_with_doc = False
napoleon_use_rtype = True  # having a separate entry generally helps readability
napoleon_use_param = True
todo_include_todos = False
numpydoc_show_class_members = False
myst_enable_extensions = [
    "colon_fence",
    "dollarmath",
    "amsmath",
]

master_doc = "index"

intersphinx_mapping = dict(
    numpy=("https://numpy.org/doc/stable/", None),
    pandas=("https://pandas.pydata.org/docs/", None),
    python=("https://docs.python.org/3", None),
    scipy=("https://docs.scipy.org/doc/scipy/reference/", None),
    cvxpy=("https://www.cvxpy.org/", None),
)

project = "sepvol"
copyright = "2022, The sepvol development team"
author = "The sepvol development team"

version = sepvol.__version__
release = sepvol.__version__

language = None

pygments_style = "default"
pygments_dark_style = "native"

# -- Options for HTML output -------------------------------------------

html_theme = "furo"
html_title = "sepvol"
html_theme_options = {
    "light_css_variables": {
        "color-brand-primary": "#003262",
        "color-brand-content": "#003262",
    },
}
html_show_sphinx = False
