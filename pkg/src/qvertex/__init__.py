"""Exact R-matrices for symmetric tensor representations of quantum affine
sl(n), with zero-tolerance verification of the identities they satisfy."""

__version__ = "0.1.0"
