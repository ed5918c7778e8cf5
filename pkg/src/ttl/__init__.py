"""Exact-arithmetic constructions and certificates for k-wise Tverberg partitions and thrackles."""

__version__ = "0.1.0"
