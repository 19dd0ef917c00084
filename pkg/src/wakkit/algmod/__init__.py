"""Algebras, modules, bimodules and homological algebra over F_p."""

from .algebra import (Algebra, Validation, ground, is_nilpotent_ideal, jacobson_radical, path_algebra,
                      polynomial_quotient, validate_algebra)
from .modules import (Bimodule, BimoduleHom, DimensionCapError, HomSpace, Module, ModuleHom, Tensor,
                      as_bimodule, direct_sum, dual, dual_bimodule, dual_hom, find_isomorphism, hom_basis,
                      hom_matrices, hom_space, kernel, cokernel, quotient_module, regular_bimodule,
                      regular_module, submodule, tensor, tensor_map, validate_module, zero_hom, zero_module)
