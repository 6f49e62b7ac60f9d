"""Exact nullity pairs, SAP and i-SNIP for rooted graphs."""

from __future__ import annotations

from .errors import SnipLabError
from .ratmat import RationalMatrix, kernel_basis, nullity, rank, schur_complement
from .rgraph import RootedGraph, contains_rooted_minor, from_graph6, to_graph6
from .snipcore import (IndexType, NullityPair, SnipCertificate, certify, has_isnip_cases,
                       has_isnip_direct, has_isnip_recipe, has_sap, nullity_pair)

__version__ = "0.1.0"

__all__ = [
    "SnipLabError", "RationalMatrix", "kernel_basis", "nullity", "rank", "schur_complement",
    "RootedGraph", "contains_rooted_minor", "from_graph6", "to_graph6",
    "IndexType", "NullityPair", "SnipCertificate", "certify", "has_isnip_cases",
    "has_isnip_direct", "has_isnip_recipe", "has_sap", "nullity_pair",
]
