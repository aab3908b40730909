"""Exact computations with finite groupoids: actions, double cosets,
linear representations and the identities that count double cosets."""

from .action import (GSet, action_groupoid, cauchy_frobenius_check, cf_count,
                     cf_count_componentwise, fix, orbits, stabilizer, terminal_gset)
from .coset import (comma_category, double_cosets, double_coset_size_corrected,
                    double_coset_size_formula, left_cosets, x_hk_action)
from .fnspace import invariant_function_space, s_map, t_map, theta_iso_check, y_rep
from .groupoid import (FiniteGroupoid, Subgroupoid, closure, connected_components, coproduct,
                       cyclic_group, discrete, index, iso_subgroupoid, pair_groupoid, product,
                       structure_decomposition, symmetric_group, validate, whole)
from .linrep import (Representation, char_inner_product, char_inner_product_componentwise,
                     character, induce_gset, induce_rep, nat_space_dim, permutation_rep,
                     restrict, trivial_rep)
from .scalars import GaussianRational

__version__ = "0.1.0"
