# peano_trees/__init__.py
"""Cut-point, cut-pair and combined decomposition trees of finite graphs, and actions on them."""

__version__ = "0.1.0"
