"""Triangles in arrangements of lines and pseudo-lines.

Wiring diagrams, a face sweep that counts triangles, a pruned search for
diagrams with many triangles, certified straight-line constructions, and
the closed-form bounds with a table of known values.
"""

from .bounds import formula_upper, known_values, sequence_value
from .diagram import WiringDiagram, new_diagram, push_column, read_diagram, write_diagram
from .faces import count_triangles, partial_report
from .geometry import (
    count_arrangement,
    duplicate,
    hexagonal7,
    iterate_duplication,
    simmons15,
    to_wiring,
)
from .search import SearchConfig, depth_first_search, verify_witness

__all__ = [
    "SearchConfig", "WiringDiagram", "count_arrangement", "count_triangles",
    "depth_first_search", "duplicate", "formula_upper", "hexagonal7", "iterate_duplication",
    "known_values", "new_diagram", "partial_report", "push_column", "read_diagram",
    "sequence_value", "simmons15", "to_wiring", "verify_witness", "write_diagram",
]
