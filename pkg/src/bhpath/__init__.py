"""Fault-tolerant prescribed hamiltonian paths in balanced hypercubes."""
from .topology import BalancedHypercube, Edge, Parity, PartitionView, Vertex, make_edge, parity

__version__ = "0.1.0"

__all__ = [
    "BalancedHypercube",
    "Edge",
    "Parity",
    "PartitionView",
    "Vertex",
    "make_edge",
    "parity",
]
