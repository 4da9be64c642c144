"""Exact homological invariants of finite-dimensional (super)algebras."""

__version__ = "0.1.0"
