"""Exact computation of derivations of finite group algebras over Q and GF(p)."""
from .algebra import (AlgebraElement, anti_centralizer, augmentation, center_basis, class_sums,
                      commutator, delta_prime_basis, multiply)
from .derivations import (DerivationMatrix, FailureReport, GeneratorAssignment, derivation_space,
                          extend_generator_map, generator_derivation_space, inner_derivation,
                          inner_derivation_space, innerness_witness, leibniz_check,
                          lift_generator_space, word_derivative)
from .errors import *  # noqa: F401,F403
from .families import (FamilySpec, dicyclic_basis, dihedral_basis, family_anticentralizer_basis,
                       family_basis, family_inner_basis, semidihedral_basis)
from .fields import QQ, FieldSpec, make_field, scalar_inverse
from .groups import (ConjugacyClasses, FiniteGroup, GroupWord, conjugacy_classes, cyclic_part,
                     dicyclic, dihedral, evaluate_word, family_group, from_cayley, semidihedral)
from .linalg import SubspaceBasis, nullspace, rank, rref, solve
from .verify import VerificationReport, sweep, verify_family

__version__ = "0.1.0"
