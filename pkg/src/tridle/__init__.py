"""Regional knot invariants from planar diagram codes."""

__version__ = "0.1.0"
