"""Exact cohomology, symplectic and lattice computations on two solvmanifold families."""

__version__ = "0.1.0"
