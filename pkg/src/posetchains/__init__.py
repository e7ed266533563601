"""Forbidden-subposet tools for interval chains: graded-poset analysis, the
triple graph and its independence number, the improved double-chain bound
with a constructive injection, and exact La(C_k, P) at small scale."""

from .auxgraph import AuxGraph, TripleVertex, alpha_bruteforce, alpha_dp, build_aux_graph, enumerate_triples
from .bounds import bound_report, burcsi_nagy, chenli_coeff, equality_check, grosz_ck, grosz_coeff, theorem_main
from .chains import boolean_lattice, build_interval_chain, double_chain, level_window, parse_host
from .embedding import e_estimate, embeds, is_isomorphic, is_p_free, la_chain_sequence, la_exact, verify_embedding
from .errors import PosetError
from .gallery import gallery, lambda_extension, random_graded_poset, vee_extension, witness_family
from .injection import construct_embedding, theorem_check
from .poset import GradedPoset, Poset, dual, from_covers, is_graded, oplus, otimes, parse_poset

__version__ = "0.1.0"

__all__ = [
    "AuxGraph",
    "GradedPoset",
    "Poset",
    "PosetError",
    "TripleVertex",
    "alpha_bruteforce",
    "alpha_dp",
    "boolean_lattice",
    "bound_report",
    "build_aux_graph",
    "build_interval_chain",
    "burcsi_nagy",
    "chenli_coeff",
    "construct_embedding",
    "double_chain",
    "dual",
    "e_estimate",
    "embeds",
    "enumerate_triples",
    "equality_check",
    "from_covers",
    "gallery",
    "grosz_ck",
    "grosz_coeff",
    "is_graded",
    "is_isomorphic",
    "is_p_free",
    "la_chain_sequence",
    "la_exact",
    "lambda_extension",
    "level_window",
    "oplus",
    "otimes",
    "parse_host",
    "parse_poset",
    "random_graded_poset",
    "theorem_check",
    "theorem_main",
    "vee_extension",
    "verify_embedding",
    "witness_family",
]
