"""Bivariate orthogonal polynomial families on the plane and the unit disc,
their q-analogues, identity verification, and quadrature cross-checks."""

__version__ = "0.1.0"
