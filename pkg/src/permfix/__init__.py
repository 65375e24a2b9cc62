"""Fixity of transitive permutation group actions."""
__version__ = "0.1.0"
