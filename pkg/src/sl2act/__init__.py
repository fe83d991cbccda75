"""Diagrammatic category for sl2 with zero zigzags, its crystal model, and its action on graded category O."""

__version__ = "0.1.0"
