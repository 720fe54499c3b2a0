"""Omega-automatic (2, l)-partitions, the H(u,v,w) clique family and friends."""

__version__ = "0.1.0"
