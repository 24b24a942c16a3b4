"""Exact computations for trimmed graded double Ore extensions of the quantum plane.

Build the algebra from its DE-data (or the named family K), certify its
rewriting system, and compute minimal graded free resolutions, Betti tables,
Hilbert and Poincare series, and Koszul spaces.
"""

from .fields import QQ, PrimeField, RationalField, field_from_name
from .koszul import (QuadraticData, koszul_complex, koszul_space, koszulness_check,
                     relation_space)
from .linalg import (ScalarMatrix, Subspace, complement_in, intersect, kernel_basis,
                     rank)
from .presentation import (BaseData, DEData, Presentation, PresentationError,
                           build_base_algebra, build_double_extension, family_K,
                           iterated_ore_check, parse_presentation, sigma_matrix)
from .resolution import (BettiTable, Complex, FreeModule, ModuleMap, compose,
                         cyclic_module_resolution_x, cyclic_module_resolution_y,
                         degreewise_exactness, minimal_resolution, explicit_resolution_K,
                         poincare_series, syzygy_evaluate, verify_complex)
from .rewriting import (NcPolynomial, RewriteRule, RewriteSystem, deglex_compare,
                        make_rewrite_system)

__version__ = "0.1.0"
