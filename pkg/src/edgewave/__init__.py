"""Online estimation of time-varying signals on graph edges.

Edge signals are moved onto the nodes of the line graph, where ordinary
graph Fourier tools apply; :class:`LGLMS` then tracks them with an LMS
update under noise and missing observations.
"""

from .estimators import LGLMS, SimplicialConvolution, SpectralFilter
from .exceptions import ConfigError, DataFormatError, EdgewaveError, GraphError, StabilityError
from .graph import Graph, build_graph, hodge_laplacians, incidence, laplacian, line_graph
from .spectral import GftBasis, FilterSpectrum, gft_basis

__version__ = "0.1.0"

__all__ = [
    "LGLMS",
    "SpectralFilter",
    "SimplicialConvolution",
    "Graph",
    "build_graph",
    "incidence",
    "laplacian",
    "line_graph",
    "hodge_laplacians",
    "GftBasis",
    "FilterSpectrum",
    "gft_basis",
    "EdgewaveError",
    "GraphError",
    "DataFormatError",
    "ConfigError",
    "StabilityError",
]
