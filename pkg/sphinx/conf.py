"""Sphinx configuration for the Timoshenko spectral lab documentation."""
import os
import sys

# Make `timpy` and `lab_app` importable for autoapi and argparse pages
sys.path.insert(0, os.path.abspath(".."))

project = "Timoshenko spectral lab"
copyright = "2024, timpy developers"
author = "timpy developers"

extensions = [
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx.ext.autosectionlabel",
    "sphinx_rtd_theme",
    "autoapi.extension",
    "myst_parser",
]

autoapi_dirs = ["../timpy", "../lab_app"]
autoapi_add_toctree_entry = True
napoleon_google_docstring = True
autosectionlabel_prefix_document = True
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "pandas": ("https://pandas.pydata.org/docs", None),
}

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"

html_theme = "sphinx_rtd_theme"
master_doc = "index"
