"""del Pezzo orbifolds - curve classes, adjoint positivity and Zariski decompositions."""

__version__ = "0.1.0"
