"""Permutation-type solutions of the n-simplex equations over Z_D."""
from .catalog import (Catalog, CatalogFamily, ValidationReport, default_catalog, instantiate,
                      load_catalog, match_family, validate_family)
from .errors import (BudgetExceeded, DimensionMismatch, DomainViolation, ModulusMismatch,
                     NotAUnit, SimplexionError, Singular)
from .linalg import MatZd, VecZd, det, mat_inv, mat_mul, solve_linear
from .polysys import PolyExpr, PolySystem, eval_poly, gen_system, printed_system, solution_sets_equal
from .search import SearchReport, brute_force_perm, classify, is_reducible, search_affine
from .solution import (AffineSolution, IndexMap, r_matrix, to_index_map, verify_affine,
                       verify_tensor)
from .structure import SimplexSystem, build_system, embed, lhs_rhs_products
from .symmetry import (SymmetryOp, canonical_form, gauge_transform, inverse_transform, orbit,
                       reflect_transform, transpose_transform)
from .zmod import ZModElement, add, inv, mul

__version__ = "0.1.0"

__all__ = [
    "AffineSolution", "BudgetExceeded", "Catalog", "CatalogFamily", "DimensionMismatch",
    "DomainViolation", "IndexMap", "MatZd", "ModulusMismatch", "NotAUnit", "PolyExpr",
    "PolySystem", "SearchReport", "SimplexSystem", "SimplexionError", "Singular", "SymmetryOp",
    "ValidationReport", "VecZd", "ZModElement", "add", "brute_force_perm", "build_system",
    "canonical_form", "classify", "default_catalog", "det", "embed", "eval_poly",
    "gauge_transform", "gen_system", "instantiate", "inv", "inverse_transform", "is_reducible",
    "lhs_rhs_products", "load_catalog", "mat_inv", "mat_mul", "match_family", "mul", "orbit",
    "printed_system", "r_matrix", "reflect_transform", "search_affine", "solution_sets_equal",
    "solve_linear", "to_index_map", "transpose_transform", "validate_family", "verify_affine",
    "verify_tensor",
]
