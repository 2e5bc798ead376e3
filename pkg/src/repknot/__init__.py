"""Meridian-traceless SU(2) and SO(3) representation invariants of knots and links."""

__version__ = "0.1.0"
