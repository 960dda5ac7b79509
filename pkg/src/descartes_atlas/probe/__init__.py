"""Randomized search and numerical/identity probes."""

from .hfamily import FAMILIES, h_family_probe
from .identities import IDENTITIES, identity_check
from .search import NotFound, SearchConfig, witness_search
from .theorem1 import theorem1_probe

__all__ = ["FAMILIES", "IDENTITIES", "NotFound", "SearchConfig", "h_family_probe", "identity_check",
           "theorem1_probe", "witness_search"]
