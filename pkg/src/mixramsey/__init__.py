"""Executable combinatorics for three-colour Ramsey numbers of mixed-parity cycles."""

__version__ = "0.1.0"
