"""Kernelized dictionary learning with non-negative sparse coding."""
from fvclust.fvc_modules.dictionary.fit import fit, keep_better_codes
from fvclust.fvc_modules.dictionary.init import init_atoms
from fvclust.fvc_modules.dictionary.komp import (
    komp,
    nnls_quadratic,
    sparse_code_all,
    sparse_code_one,
)
from fvclust.fvc_modules.dictionary.objective import (
    check_dimensions,
    fiber_residuals,
    objective,
)
from fvclust.fvc_modules.dictionary.update import (
    atom_norms,
    normalize_atoms,
    reseed_dead_atoms,
    update_dictionary,
)

__all__ = [
    "atom_norms",
    "check_dimensions",
    "fiber_residuals",
    "fit",
    "init_atoms",
    "keep_better_codes",
    "komp",
    "nnls_quadratic",
    "normalize_atoms",
    "objective",
    "reseed_dead_atoms",
    "sparse_code_all",
    "sparse_code_one",
    "update_dictionary",
]
