"""Construct and analyse quadratic APN functions on F_{2^m} x F_{2^m}."""

__version__ = "0.1.0"

from .field import BinaryField, FieldError, GF2m, QuadraticExtension, get_extension, get_field  # noqa: E402
from .vbf import (BivariatePair, TruthTable, differential_uniformity, evaluate, is_apn,  # noqa: E402
                  load_table, save_table)
from .poly import cubic_roots, find_good_alphas, phi_has_root  # noqa: E402
from .families import (FamilyParams, InvalidParameters, dillon_terms, f1, f2, golgolu_f1,  # noqa: E402
                       golgolu_f2, known_family, known_instance, lzlq, validate)
from .analysis import (InvariantProfile, count_subspaces, invariant_profile, nb_set,  # noqa: E402
                       symmetry_report, walsh_sheet)

__all__ = [
    "BinaryField", "BivariatePair", "FamilyParams", "FieldError", "GF2m", "InvalidParameters",
    "InvariantProfile", "QuadraticExtension", "TruthTable", "count_subspaces", "cubic_roots",
    "differential_uniformity", "dillon_terms", "evaluate", "f1", "f2", "find_good_alphas",
    "get_extension", "get_field", "golgolu_f1", "golgolu_f2", "invariant_profile", "is_apn",
    "known_family", "known_instance", "load_table", "lzlq", "nb_set", "phi_has_root",
    "save_table", "symmetry_report", "validate", "walsh_sheet", "__version__",
]
