from .permutation import Permutation, PermutationError
from .group import PermGroup, Subgroup, StabChain, build_group, schreier_sims, set_default_seed, default_seed
