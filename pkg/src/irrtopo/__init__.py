"""Executable topological domain theory on finitely presented countable T0 spaces."""

__version__ = "0.1.0"
