"""Exact constructions for p-elementary subgroups of the plane Cremona group."""

__version__ = "0.1.0"
