"""Exact computations with Lie algebra cocycles, mapping algebras and vector fields."""

__version__ = "0.1.0"

CONVENTIONS = "cocyclekit-conventions/1"
