# Sphinx configuration for ncfem. The API pages are regenerated from `src/ncfem` on every
# build; see `python setup.py docs`.
import inspect
import os
import shutil
import sys

__location__ = os.path.join(os.getcwd(), os.path.dirname(
    inspect.getfile(inspect.currentframe())))
sys.path.insert(0, os.path.join(__location__, '../src'))

from sphinx.ext import apidoc  # noqa: E402

output_dir = os.path.join(__location__, 'api')
module_dir = os.path.join(__location__, '../src/ncfem')
shutil.rmtree(output_dir, ignore_errors=True)
try:
    apidoc.main(['-f', '-o', output_dir, module_dir])
except Exception as e:
    print(f'Running `sphinx-apidoc` failed!\n{e}')

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'matplotlib.sphinxext.plot_directive',
]

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build']

project = 'ncfem'
copyright = '2026, ncfem developers'
try:
    from ncfem import __version__ as version
except ImportError:
    version = ''
release = version

pygments_style = 'sphinx'
html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'ncfem-doc'

python_version = '.'.join(map(str, sys.version_info[0:2]))
intersphinx_mapping = {
    'python': ('https://docs.python.org/' + python_version, None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/reference', None),
    'matplotlib': ('https://matplotlib.org', None),
    'astropy': ('https://docs.astropy.org/en/stable/', None),
    'panoptes.utils': ('https://panoptes-utils.readthedocs.io/en/latest/', None),
}


def skip(app, what, name, obj, would_skip, options):
    if name == '__init__':
        return False
    return would_skip


def setup(app):
    app.connect('autodoc-skip-member', skip)
