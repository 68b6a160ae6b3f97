"""Free-module maps over exact rings, Smith normal form, complexes and
split-injectivity tests."""

from .complexes import (ChainComplex, HomologyGroup, resolution_tensor_map, matches_tensor_top,
                        tensor_complexes, two_term)
from .matrices import (FPHom, FPModule, ModuleInvariants, ModuleMap, SmithForm, check_smith,
                       determinant, invariant_factors, is_exact_at, is_unimodular, kernel_basis,
                       kron, smith_normal_form, solve_over_ring)
from .rings import (ZZ, Integers, MultivariatePolys, ProductRing, RingSpec, UnivariatePolys,
                    ring_from_name)
from .split import (NoSplit, Split, SymStage, Verdict, build_f_RS, check_bezout_certificate,
                    check_retraction, coker, has_left_inverse, indivisible_check, sym_truncation,
                    tensor_quotient_check, tensor_quotient_dimension)
