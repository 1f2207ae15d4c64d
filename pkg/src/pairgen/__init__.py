"""Pairwise generating sets and coverings of symmetric groups."""

__version__ = "0.1.0"

from .perm import Permutation  # noqa: F401
from .stabchain import GenClass, generation_class, group_order  # noqa: F401
