"""Toolkit for building and modeling a Chinese NP corpus whose plurality and
definiteness annotations are projected from an English-Chinese parallel
corpus."""

__version__ = "0.1.0"
