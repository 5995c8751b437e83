"""Exact computations with power operations on Mackey and Green functors.

Finite permutation groups, their subgroup lattices and G-sets; the Burnside,
representation-ring, and class-function Green functors; the transfer ideals
that make the reduced m-th power operation additive and compatible with
induction; and a CLI that reproduces the worked examples.
"""

from .groups import (CapExceeded, Group, Homomorphism, Perm, Subgroup,
                     SubgroupLattice, cyclic_group, dihedral8, direct_product,
                     group_from_table, is_subconjugate, make_group,
                     parse_group, symmetric_group)
from .gsets import (GSet, JGeneratorList, PowerContext, TupleSpace,
                    fiber_power, graph_of_coset_action, graph_subgroup,
                    j_generator_subgroups, j_generator_subgroups_normal,
                    power_context, power_gset, stabilizer_of_tuple,
                    transitive_gset, transitive_stabilizer_survey,
                    wreath_graph, zeta_section)
from .linalg import FieldLattice, IntLattice, smith_normal_form
from .cyclotomic import Cyclo
from .chartab import CharacterTable, MissingTable, TableProvider
from .mackey import (GreenFunctor, MackeyIdeal, PowerOperationInstance,
                     QuotientFunctor, ideal_from_generators, induce_up,
                     itr_ideal, j_ideal, mackey_closure_report, quotient,
                     restrict_down, verify_green_axioms, verify_green_map,
                     verify_mackey_axioms)
from .burnside import (BurnsideSplitting, BurnsideTheory,
                       burnside_green_functor, ordinary_itr, power_vector,
                       sigma_fixed_matrix)
from .charfun import (ClTheory, ClassFunction, RUTheory, adams_psi,
                      adams_psi_ru, cl_green_functor, j_ideal_cl,
                      p_split_classes, power_vector_cl, power_vector_ru,
                      ru_green_functor)
from .height2 import (PairClassData, height2_power_fixture, pair_res, pair_tr)
from .reports import PipelineReport

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
