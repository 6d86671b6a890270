"""Tangle calculus, surface indices, relative framings, and the toroidal-surgery case enumeration.

Modules:
    tangle          rational tangles, sums, bottom twists, mirrors, gluing
    diagram         PD codes, tracing, crossing signs, linking, bracket and Jones
    surface_index   relative index of surface pieces and fat-graph identities
    framing         disk weights, train-track types, framings, boundary slopes
    classifier      case enumeration with certificates, and the K1/K2/K3 catalog
    cli             command-line front end
"""

from .classifier import build_catalog, classify, epsilon_of, verify_certificate
from .diagram import (
    OrientedDiagram,
    PDCode,
    jones,
    kauffman_bracket,
    linking_number,
    orient,
    relative_linking,
    trace_components,
    writhe,
)
from .errors import ContractError, DomainError, ResourceError, StructureError, TangleSurgError
from .framing import boundary_slope, solve_weights, train_track_type
from .polynomial import LaurentPolynomial
from .tangle import (
    INFINITY,
    GluingMap,
    Slope,
    compile_expr,
    glue,
    mirror_tangle,
    montesinos,
    parse_expr,
    standard_eta,
)

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "DomainError",
    "GluingMap",
    "INFINITY",
    "LaurentPolynomial",
    "OrientedDiagram",
    "PDCode",
    "ResourceError",
    "Slope",
    "StructureError",
    "TangleSurgError",
    "boundary_slope",
    "build_catalog",
    "classify",
    "compile_expr",
    "epsilon_of",
    "glue",
    "jones",
    "kauffman_bracket",
    "linking_number",
    "mirror_tangle",
    "montesinos",
    "orient",
    "parse_expr",
    "relative_linking",
    "solve_weights",
    "standard_eta",
    "trace_components",
    "train_track_type",
    "verify_certificate",
    "writhe",
]
