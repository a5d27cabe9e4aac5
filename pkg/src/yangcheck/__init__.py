"""Exact symbolic checks for Yangian-type identities in classical
enveloping algebras: PBW normal forms, evaluation images of the matrix
series T(u), S(u) and their relation residuals, Harish-Chandra images,
shifted symmetric functions, and graded invariant-theory witnesses.

Everything is computed over exact rationals with the stability parameter
c kept symbolic by default; there is no floating point anywhere.
"""

from .lie import AlgebraSpec
from .poly import MultiPoly
from .series import BiSeries, TruncSeries

__all__ = ["AlgebraSpec", "MultiPoly", "TruncSeries", "BiSeries"]
