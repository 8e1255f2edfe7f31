"""Finite category theory with fibrations, sites, and monoid algebra.

Everything is exhaustive: categories are finite tables, functors are
finite maps, and every property is decided by enumeration under a
search budget.
"""

from .core import (Adjunction, Budget, Cone, FinCat, Functor, InputError,
                   NatTransf, SearchBudgetExceeded, Subcategory,
                   check_adjunction, check_conjugates, check_mates, check_nat,
                   find_universal, functor_properties, identity_functor,
                   image_operators, is_nat_iso, is_replete_subcategory,
                   iso_search, nat_iso_search, nat_vertical, opposite_functor,
                   pair_id, product_category, validate_category,
                   validate_functor, whisker_left, whisker_right)
from .fib import (FibReport, Fibration, MorFib, bifibration_adjunctions,
                  build_cleavage, build_opcleavage, cartesian_factor,
                  cartesian_lifts, check_bifibration, check_fibration,
                  check_internal_fibration, check_opfibration, cloven,
                  compose_fibrations, direct_image_functor, fibration_over_fibration,
                  fibre, fibre_fibration, inverse_image_functor, is_cartesian,
                  is_cartesian_morphism, is_opcartesian, opcartesian_factor,
                  opcartesian_lifts, product_over_base, pullback_fibration,
                  validate_fibration, vertical_morphisms)
from .indexed import (IndexedCat, OpIndexedCat, extract_indexed,
                      fibre_comparison, grothendieck, grothendieck_op,
                      indexed_of_fibrations, op_of_indexed, roundtrip_iso,
                      strict_indexed, strict_opindexed, two_level_grothendieck,
                      validate_indexed, validate_opindexed)
from .sites import (CoveringFunction, Presheaf, all_coverings, all_sieves,
                    arrows_into, canonical_covering_function,
                    check_site_morphism, coarsest_pretopology,
                    composite_covering, covering_axioms, empty_covering,
                    equivalent, finest_pretopology, generate_sieve,
                    has_refinement, induced_covering, is_coverage, is_sieve,
                    is_subcanonical, maximal_sieve, no_covering,
                    pullback_covering, pullback_sieve, refines, representable,
                    sheaf_check, sheaf_equalizer, sheaf_family, subordinate,
                    transform, validate_covering_function, validate_presheaf)
from .loctriv import (LocSubfunctor, TrivSubfunctor, check_image_theorems,
                      check_loc_theorems, fibred_functor_properties,
                      fibred_images, loc_in_fibred_site, loc_in_site,
                      subfunctor_flags, triv_all, triv_from_terminal_fibre,
                      validate_triv)
from .algebra import (BimoduleObj, LeftModuleObj, ModuleObj, MonCat,
                      MonIndexedCat, MonoidObj, action_coequalizer_pair,
                      adjunction_check, cartesian_moncat, cartesian_monoids,
                      check_monoidal_functor, coequalizer_preserved_by,
                      comm_category, extend_scalars, extension_functor,
                      extension_opcartesian, induced_module, induced_monoid,
                      is_module_morphism, is_monoid_morphism, mod_category,
                      mod_fibration, mod_id, mod_of_functor, mod_over_mon,
                      modules, mon_category, mon_fibration, mon_id,
                      mon_of_functor, monoids, reflexive_section,
                      restriction_functor, scalars_bimodule,
                      tensor_over_monoid, validate_bimodule,
                      validate_left_module, validate_mon_indexed,
                      validate_module, validate_monoid, validate_monoidal)
from .workspace import (ParseError, TrivDecl, Workspace, add_with_deps,
                        emit_workspace, parse_file, parse_workspace)
from . import fixtures

__version__ = "0.1.0"
