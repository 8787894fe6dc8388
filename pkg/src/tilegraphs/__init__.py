"""Contact and neighbor graphs for self-affine tiles and Rauzy fractals."""

__version__ = "0.1.0"
