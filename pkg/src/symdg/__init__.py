"""Exact construction and verification of arc-transitive digraphs with non-diagonalizable adjacency matrices."""

__version__ = "0.1.0"
