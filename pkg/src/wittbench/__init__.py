"""Exact workbench for symplectic Witt groups, Pfaffians and Vaserstein symbols."""

from .altform import (AlternatingMatrix, congruence, empty_form, perp, pfaffian, psi,
                      sigma, stabilize)
from .census import (CensusJob, compare_generator_sets, enumerate_objects,
                     find_equivalence, orbit_bfs)
from .errors import WittBenchError
from .matrix import (Elementary, Matrix, Permutation, Transvection, build_generator,
                     det, inverse, mat_compose)
from .rings import (ZZ, ModularRing, PolynomialRing, QuotientRing, RingElement, Zmod,
                    finite_field, is_unit, normal_form, polynomial_ring, ring_arith,
                    ring_from_descriptor, sphere_ring)
from .vaserstein import (UnimodularRow, kernel_idempotent, sl4_act, suslin_matrix,
                         symbol_transform_check, umrow_make, vaserstein_symbol)
from .witt import (FreeTriple, WitnessWord, WittRep, check_equiv_witness,
                   commutativity_witness, eta, hyperbolic, verify_witness, witt_add,
                   witt_neg, xi_triple)

__version__ = "0.1.0"
