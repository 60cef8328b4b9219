"""Coset leader graphs of binary linear codes, their exact coarse Ricci
curvature, and finite-n checks of the diameter and dimension bounds that
curvature implies."""

from .codes import (
    LinearCode,
    construct,
    direct_product,
    hadamard,
    hadamard_plus_cube,
    identity_code,
    ltc_tight_family,
    parse_code,
    perfect_3lcc_basic,
    random_code,
    serialize_code,
)
from .cosetgraph import build_coset_graph, covering_radius_bruteforce, diameter, sphere_profile
from .curvature import bonnet_myers_check, curvature_direction, curvature_graph
from .f2 import BitMatrix, BitVector

__version__ = "0.1.0"
