"""Exact quaternion arithmetic, finite groups, and checks of the canonical formula."""

__version__ = "0.1.0"
