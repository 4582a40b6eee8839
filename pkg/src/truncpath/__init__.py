"""Homological invariants of truncated path algebras KQ/(paths of length L+1)."""

from .algebra import TruncatedAlgebra, findim, l_deg, pdim_cyclic, pdim_simple
from .generic import generic_pdim, realizable, spectrum, spectrum_by_enumeration
from .modules import MonomialModule, SemisimpleSequence, pdim_module, radical_layering, syzygy
from .quiver import INF, Path, Quiver, format_extnat, validate

__version__ = "0.1.0"

__all__ = [
    "INF", "Path", "Quiver", "SemisimpleSequence", "MonomialModule", "TruncatedAlgebra",
    "findim", "format_extnat", "generic_pdim", "l_deg", "pdim_cyclic", "pdim_module",
    "pdim_simple", "radical_layering", "realizable", "spectrum", "spectrum_by_enumeration",
    "syzygy", "validate",
]
