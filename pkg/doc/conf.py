# -*- coding: utf-8 -*-
#
# dsalign documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

import os
import sys
try:
  from unittest import mock
except ImportError:
  import mock

MOCK_MODULES = ['pandas']
for mod_name in MOCK_MODULES:
  sys.modules[mod_name] = mock.Mock()

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
]
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'dsalign'
copyright = u'2024, dsalign developers'

import dsalign
# The short X.Y version.
version = dsalign.__version__.rsplit('.', 1)[0]
# The full version, including alpha/beta/rc tags.
release = dsalign.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# Include both class and `__init__` docstrings.
autoclass_content = 'both'

# -- Options for HTML output ----------------------------------------------

html_theme = 'default'
html_static_path = []
htmlhelp_basename = 'dsaligndoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'dsalign', u'dsalign documentation', [u'dsalign developers'], 1)
]
