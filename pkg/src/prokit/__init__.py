"""Composable pseudorandom objects: finite fields, k-independent hash families,
expander walks, and streaming estimators built from them."""

from .bits import BitSource
from .errors import (BitSourceDefective, IterationCapExceeded, MissingBitSource, NonConvergence,
                     NotPrimePower, ProExprSyntaxError, SizeExceedsCap)
from .expander import contract, mgg, power, see_bound, see_std, walk_pro
from .expr import build_pro, parse_pro_expr, render_pro_expr
from .gf import (FieldCtx, FieldElem, Poly, count_irreducible, field_new, find_irreducible_det,
                 parse_poly, rabin_test, render_poly, sample_irreducible)
from .harness import ExactDist, exhaustive_dist
from .hashfam import hash_pro, hash_pro_rand
from .pro import Pro, geom_pro, list_pro, map_pro, nat_pro, prod_pro, sample_pro
from .spectral import cheeger_check, edge_expansion, lambda_2, lambda_a
from .streamalg import (EstimatorParams, F2Sketch, Stream, estimate_basic, estimate_mean,
                        estimate_median_expander, f2_exact, median)

__version__ = "0.1.0"

__all__ = [
    "BitSource", "BitSourceDefective", "ExactDist", "EstimatorParams", "F2Sketch", "FieldCtx",
    "FieldElem", "IterationCapExceeded", "MissingBitSource", "NonConvergence", "NotPrimePower",
    "Poly", "Pro", "ProExprSyntaxError", "SizeExceedsCap", "Stream", "build_pro",
    "cheeger_check", "contract", "count_irreducible", "edge_expansion", "estimate_basic",
    "estimate_mean", "estimate_median_expander", "exhaustive_dist", "f2_exact", "field_new",
    "find_irreducible_det", "geom_pro", "hash_pro", "hash_pro_rand", "lambda_2", "lambda_a",
    "list_pro", "map_pro", "median", "mgg", "nat_pro", "parse_poly", "parse_pro_expr", "power",
    "prod_pro", "rabin_test", "render_poly", "render_pro_expr", "sample_irreducible",
    "sample_pro", "see_bound", "see_std", "walk_pro",
]
