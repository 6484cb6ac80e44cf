"""Bidimenger: constructive Menger theory for bidirected graphs."""

__version__ = "0.1.0"
