"""Constructive topology on finite carriers and the rational line."""

__version__ = "0.1dev"
