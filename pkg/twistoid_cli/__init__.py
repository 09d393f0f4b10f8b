"""
Twistoid CLI - exact classification of cubic twistoids

This package provides both a command-line interface and a Python library for
classifying cubic tessellations of the dicosm, tricosm and tetracosm and for
checking the closed forms against a brute-force flag oracle.
"""

from .flag_complex_oracle import verify
from .params import ManifoldKind
from .platycosm_groups import build_group
from .toroidal_covers import cover_class
from .twistoid_classifier import classify

__all__ = ["ManifoldKind", "build_group", "classify", "cover_class", "verify"]
