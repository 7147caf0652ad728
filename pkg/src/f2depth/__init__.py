"""Exact depth, Tor/Ext and Gysin computations for graded modules over F2 polynomial rings."""

from .dickson import SubgroupFlag, dickson_classes, dtilde_generators
from .errors import CutoffInsufficient, InconsistentResult
from .f2poly import Polynomial, RingDescriptor, parse_polynomial, polynomial_ring
from .grmodule import DegreewiseModule, GradedPresentation, expand
from .homalg import depth, depth_via_ab, depth_via_dickson, depth_via_ext, koszul_tor

__version__ = "0.1.0"
