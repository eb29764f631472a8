"""Finite-lattice and propositional-logic workbench for fundamental logic and its (Ex) extension."""

__version__ = "0.1.0"
