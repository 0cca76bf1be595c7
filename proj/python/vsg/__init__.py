"""Virtual spatial graphs: Gauss codes, planar realizations, Reidemeister
moves and invariants. Codes, diagrams, links and structures travel as the
same JSON documents the `vsg` command-line tool reads and writes."""

from ._vsg import (  # noqa: F401
    BudgetError,
    PolicyError,
    StructureError,
    ValidationError,
    apply_move,
    bracket,
    canonical,
    count_colorings,
    count_homs,
    dihedral_vqs,
    enumerate_moves,
    extract_code,
    f_poly,
    group,
    linking_halves,
    normalize_forbidden,
    realize,
    render_svg,
    search_equivalent,
    shadow_labels,
    tg,
    validate,
    yamada,
)

__all__ = [
    "BudgetError", "PolicyError", "StructureError", "ValidationError",
    "apply_move", "bracket", "canonical", "count_colorings", "count_homs",
    "dihedral_vqs", "enumerate_moves", "extract_code", "f_poly", "group",
    "linking_halves", "normalize_forbidden", "realize", "render_svg",
    "search_equivalent", "shadow_labels", "tg", "validate", "yamada",
]
