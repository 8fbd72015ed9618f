"""Exact subalgebra zeta functions of free class-2-nilpotent Lie rings."""

__version__ = "0.1.0"
