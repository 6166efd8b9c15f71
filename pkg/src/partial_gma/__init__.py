"""Exact verification and construction kernel for partial Hopf actions on generalized matrix algebras."""

__version__ = "0.1.0"
