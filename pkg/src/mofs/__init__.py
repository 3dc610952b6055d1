"""Exact-search toolkit for binary mutually orthogonal frequency squares.

Verification of mixed-type orthogonality, relation and block-structure
certificates, modular extension obstructions, exhaustive enumeration,
isomorph rejection, and maximum-clique extension of sets of mates.
"""

from .core import (FrequencySquare, MofsSet, TypeSignature, complement,
                   decode_decimal, encode_decimal, square_from_row_masks,
                   validate_square)
from .enumeration import EnumSpec, count_squares, enumerate_squares
from .isomorphism import CanonicalForm, GroupOps, canonical_form, dedupe_catalogue, transform_set
from .orthogonality import (BoundReport, PairCountTable, VerificationReport,
                            bound_for_set, cardinality_bound, epa_from_mofs,
                            is_orthogonal_pair, pair_counts, verify_mofs)
from .relations import (BlockStructure, ObstructionReport, Relation, ZwSum,
                        check_parity_theorems, complement_pair,
                        detect_any_relation, detect_block_structure,
                        detect_full_relation, even_frequency_obstruction,
                        extension_obstruction, verify_relation, zw_sum)
from .search import (CliqueResult, ExtensionResult, FValueResult, MateGraph,
                     Table1Row, build_mate_graph, count_mates,
                     extend_to_maximum, f_value, generate_mates, has_mate,
                     is_maximal, is_type_maximal, max_clique, seed_catalogue,
                     single_square_classes, table1_row)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
