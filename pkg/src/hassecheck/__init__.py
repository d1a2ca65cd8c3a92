"""Exact toolkit for pencil-of-curves counterexamples to the Hasse principle over Q."""

__version__ = "0.1.0"
