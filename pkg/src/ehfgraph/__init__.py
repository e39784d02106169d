"""Executable structural graph theory for even-hole-free graphs.

Recognition (even holes, bisimplicial vertices, quasi-line graphs), exact
chromatic invariants, clique-minor search, chromatic splitting, and a
harness that checks the related theorems over small-graph corpora.
"""

from .chromatics import (
    Coloring,
    chromatic_lower_bound_at_least,
    chromatic_number,
    clique_number,
    color_by_elimination,
    independence_number,
)
from .errors import (
    CertificateError,
    Graph6Error,
    GraphError,
    InvariantViolation,
    ModelError,
    ResourceError,
    SizeError,
)
from .graph import (
    Graph,
    closed_neighborhood,
    complement,
    connected_components,
    contract,
    degree_stats,
    delete,
    encode_graph6,
    induced_subgraph,
    is_connected,
    neighborhood,
    parse_graph6,
    read_graph6_lines,
)
from .minors import MinorModel, has_clique_minor, has_disjoint_clique_minors, mader_sufficient
from .recognition import (
    BisimplicialWitness,
    EliminationOrder,
    HoleCertificate,
    bisimplicial_elimination_order,
    bisimplicial_witness,
    find_even_hole,
    is_even_hole_free,
    is_quasi_line,
)
from .splitting import (
    LemmaSplitInput,
    SplitCertificate,
    clique_forces_st,
    find_st_split,
    is_st_graph,
    lemma_split,
    min_degree_split,
)

__version__ = "0.1.0"
