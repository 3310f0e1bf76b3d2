"""Subgroup structure of free groups and free products of finite groups,
computed through wreath-product embeddings."""

from .action import CosetSpace, Problem, build_coset_space, in_core, in_subgroup, load_problem, problem_from_dict, rho_of_word
from .kurosh import (
    KuroshDecomposition,
    KuroshSystem,
    build_kurosh_system,
    build_psi,
    check_kurosh_axioms,
    decompose,
    kurosh_rewrite,
    syllable_metrics,
    verify_kurosh_universal,
    yz_elements,
)
from .schreier import build_transversal, schreier_basis, schreier_rewrite, verify_ns_universal
from .words import FreeGroup, FreeProduct, FreeWord, ProductWord
from .wreath import WreathElement, standard_embed, w_invert, w_multiply

__all__ = [
    "CosetSpace", "Problem", "build_coset_space", "in_core", "in_subgroup", "load_problem",
    "problem_from_dict", "rho_of_word",
    "KuroshDecomposition", "KuroshSystem", "build_kurosh_system", "build_psi", "check_kurosh_axioms",
    "decompose", "kurosh_rewrite", "syllable_metrics", "verify_kurosh_universal", "yz_elements",
    "build_transversal", "schreier_basis", "schreier_rewrite", "verify_ns_universal",
    "FreeGroup", "FreeProduct", "FreeWord", "ProductWord",
    "WreathElement", "standard_embed", "w_invert", "w_multiply",
]

__version__ = "0.1.0"
