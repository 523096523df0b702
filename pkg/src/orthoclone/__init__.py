"""Gate-network simulation of optimal 1 -> 2 cloning of two pairs of orthogonal qubit states."""

__version__ = "0.1.0"
