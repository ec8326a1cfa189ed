"""Residue-level verification of distinction criteria for level-zero
non-cuspidal discrete series of GL2 over a division algebra."""

__version__ = "0.1.0"
