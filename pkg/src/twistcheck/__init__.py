"""twistcheck: exact decision engine for simplicity of Galois twists of
abelian varieties, with an independent matrix-commutant verification path."""

__version__ = "0.1.0"
