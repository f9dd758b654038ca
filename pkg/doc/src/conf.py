#
# uavnoma documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

from better import better_theme_path

# -- General configuration -----------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.todo',
    'sphinx.ext.ifconfig',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
]

# Add any paths that contain templates here, relative to this directory.
templates_path = ['_templates']

# The suffix of source filenames.
source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

# General information about the project.
project = 'uavnoma'
copyright = '2026, The uavnoma Team'

# The short X.Y version.
version = '0.1'

# The full version, including alpha/beta/rc tags.
try:
    import uavnoma
except ImportError:
    print("WARNING: couldn't import uavnoma to read version.")
    release = version
else:
    release = uavnoma.__version__
    version = '.'.join(release.split('.')[:2])

intersphinx_mapping = {
    'py': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
}

# List of directories, relative to source directory, that shouldn't be searched
# for source files.
exclude_trees = ['_build', 'html']

# The reST default role (used for this markup: `text`) to use for all documents.
default_role = 'obj'

# Using 'python' instead of the default gives warnings if parsing an example
# fails, instead of defaulting to none
highlight_language = 'python'

# The name of the Pygments (syntax highlighting) style to use.
pygments_style = 'sphinx'

# Include TODO items in the documentation
todo_include_todos = False

autodoc_member_order = 'bysource'

rst_epilog = """
.. |NOMA| replace:: :abbr:`NOMA (Non-Orthogonal Multiple Access)`
.. |SIC| replace:: :abbr:`SIC (Successive Interference Cancellation)`
.. |LoS| replace:: :abbr:`LoS (Line of Sight)`
.. |NLoS| replace:: :abbr:`NLoS (Non Line of Sight)`
"""

# -- Options for HTML output ---------------------------------------------------

html_theme = 'better'

# Hide the sphinx footer
html_show_sphinx = False

html_theme_options = {
    'linktotheme': False,
}

# Add any paths that contain custom themes here, relative to this directory.
html_theme_path = [better_theme_path]

# A shorter title for the navigation bar.  Default is the same as html_title.
html_short_title = 'Home'

# no need for the prev/next topic link using better theme: they are on top
html_sidebars = {
    '**': ['localtoc.html', 'searchbox.html'],
}

# Output file base name for HTML help builder.
htmlhelp_basename = 'uavnomadoc'


# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
    (
        'index',
        'uavnoma.tex',
        'uavnoma Documentation',
        'The uavnoma Team',
        'manual',
    )
]
