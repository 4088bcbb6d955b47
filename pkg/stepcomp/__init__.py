"""(i,j)-step competitive orientations: verification, synthesis and an exhaustive oracle."""

__version__ = "0.1.0"

__all__ = ["__version__"]
