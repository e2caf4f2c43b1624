"""Weak Lawvere-Tierney topologies on the topos of finite M-sets."""

__version__ = "0.1.0"
