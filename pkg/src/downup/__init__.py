"""Exact construction, verification and classification of finite-dimensional
representations of Noetherian down-up algebras."""

__version__ = "0.1.0"
