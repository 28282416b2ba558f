"""Exact computer algebra for the super extended Ovsienko-Roger algebra.

Submodules: ``algebra`` (presets and identity checks), ``conformal``
(lambda-brackets and the annihilation superalgebra), ``cohomology`` (windowed
H^2), ``pbw`` (exponent vectors and straightening), ``modules`` (induced,
Verma and Whittaker modules) and ``cli``.
"""

from .algebra import S, Gen, SuperVector, bracket, get_algebra, parse_gen

__all__ = ["S", "Gen", "SuperVector", "bracket", "get_algebra", "parse_gen"]
__version__ = "0.1.0"
