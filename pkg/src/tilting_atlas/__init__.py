"""Tilting posets, braid group actions and cluster combinatorics for CY-N categories of Dynkin quivers."""

from .braid import ArtinGroup, BraidElement, group
from .dynkin import DynkinDiagram, Quiver, build_diagram, build_quiver, euler_form, parse_quiver, positive_roots
from .hearts import FundHeart, HeartCalculus, fundamental_domain, heart_key
from .repq import DerivedCategory, IndecObject, category
from .tiltp import CoveringPoset, Node, cone_poset, covering_poset

__all__ = [
    "ArtinGroup",
    "BraidElement",
    "CoveringPoset",
    "DerivedCategory",
    "DynkinDiagram",
    "FundHeart",
    "HeartCalculus",
    "IndecObject",
    "Node",
    "Quiver",
    "build_diagram",
    "build_quiver",
    "category",
    "cone_poset",
    "covering_poset",
    "euler_form",
    "fundamental_domain",
    "group",
    "heart_key",
    "parse_quiver",
    "positive_roots",
]

__version__ = "0.1.0"
