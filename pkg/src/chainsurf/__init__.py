"""Large-genus hyperbolic surfaces built from chained cubic graphs.

Constructs the graphs, certifies the systole of the glued equilateral-pants
surfaces, and brackets their Laplacian eigenvalues lambda_k between a Cheeger
lower bound and Rayleigh-quotient upper bounds.
"""
from .certify import certify_systole, cheeger_lower, required_girth
from .graphs import CubicGraph, MultiGraph, bridges, girth
from .pipeline import bound_report, sweep
from .surface import assemble, block_chain

__all__ = [
    "CubicGraph",
    "MultiGraph",
    "assemble",
    "block_chain",
    "bound_report",
    "bridges",
    "certify_systole",
    "cheeger_lower",
    "girth",
    "required_girth",
    "sweep",
]
