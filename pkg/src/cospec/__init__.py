"""Cospectral mates of cographs: exact enumeration, spectra and asymptotics."""

from .asymptotics import growth_constant, half_threshold, mate_fraction_asymptote, radius
from .cotree import (Cotree, Node, QuasiCotree, canonical_form, decompose, find_labeled_subtree,
                     find_subhierarchy, parse_tree, realize, realize_quasi, substitute_star)
from .enumeration import (containment_fraction, count_avoiding, count_cographs, count_hierarchies,
                          enumerate_cographs, enumerate_hierarchies)
from .errors import CospecError
from .graph import (Graph, are_isomorphic, canonical_label, complement, disjoint_union, emit_graph6,
                    induced_p4_exists, join, parse_graph6, read_graph6_file)
from .mates import (BasePair, construct_mate, discover_base_pair, dgs_survey, find_collision_classes,
                    verify_union_join)
from .spectral import SpectrumKind, charpoly, gen_spectrum, is_generalized_cospectral
from .threshold import check_lazzarin, enumerate_threshold, is_threshold, q_mate_fraction, realize_threshold

__version__ = "0.1.0"
