"""Exact computer algebra for twisted toroidal Lie algebras and Clifford-type
extended affine Lie algebras, with degree-truncated vertex operator
representations verified by exact commutator checks."""

__version__ = "0.1.0"
