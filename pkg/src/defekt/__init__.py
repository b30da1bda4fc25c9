"""Defective colouring toolkit.

Colour graphs with few colours and a bounded number of same-coloured
neighbours per vertex, certify the structural preconditions that make the
colourings possible, and evaluate the closed-form defect bounds behind
them.  Everything exact is capped; see :mod:`defekt.caps`.
"""

from .bounds import (
    BoundResult,
    earth_moon_table,
    evaluate,
    genus_thickness_colour_params,
    main_defect_bound,
    n1,
)
from .caps import Caps, current_caps
from .colouring import (
    KellResult,
    TreeFreeOutcome,
    colour_kell,
    colour_tree_free,
    defective_list_colour,
    edge_partition_forest_bounded,
    is_kd_colourable_bruteforce,
    verify_defective,
)
from .density import DensityReport, build_report, degeneracy, mad_exact, top_grad_half
from .errors import (
    AlgorithmError,
    CapExceededError,
    DefektError,
    ParseError,
    PreconditionRefutedError,
    StructuralError,
    ValidationError,
)
from .graphs import Graph, from_dimacs, from_edge_list, from_json, sniff
from .structure import (
    MinorModel,
    minor_test_bruteforce,
    structural_dichotomy,
    tree_depth,
    validate_certificate,
    validate_minor_model,
    vertex_cover_number,
)

__all__ = [
    "AlgorithmError",
    "BoundResult",
    "CapExceededError",
    "Caps",
    "DefektError",
    "DensityReport",
    "Graph",
    "KellResult",
    "MinorModel",
    "ParseError",
    "PreconditionRefutedError",
    "StructuralError",
    "TreeFreeOutcome",
    "ValidationError",
    "build_report",
    "colour_kell",
    "colour_tree_free",
    "current_caps",
    "defective_list_colour",
    "degeneracy",
    "earth_moon_table",
    "edge_partition_forest_bounded",
    "evaluate",
    "from_dimacs",
    "from_edge_list",
    "from_json",
    "genus_thickness_colour_params",
    "is_kd_colourable_bruteforce",
    "mad_exact",
    "main_defect_bound",
    "minor_test_bruteforce",
    "n1",
    "sniff",
    "structural_dichotomy",
    "top_grad_half",
    "tree_depth",
    "validate_certificate",
    "validate_minor_model",
    "verify_defective",
    "vertex_cover_number",
]
