"""Matrix evaluation in braided monoidal supercategories.

Thin wrapper over the C++ core: load category instances, verify superalgebra
axioms, decompose modules into twisted sectors, check the braided G-crossed
axioms, and compare equivariantization simple counts. Every function returns
a dict with a "pass" flag and a "checks" list of residual lines.
"""

from orbcat._core import (
    OrbcatError,
    algebra_check,
    builtin_names,
    decompose,
    emit_instance,
    equivariantize,
    fusion_table,
    paper_suite,
    parse_expr,
    sectors,
    validate,
)

__all__ = [
    "OrbcatError",
    "algebra_check",
    "builtin_names",
    "decompose",
    "emit_instance",
    "equivariantize",
    "fusion_table",
    "paper_suite",
    "parse_expr",
    "sectors",
    "validate",
]
