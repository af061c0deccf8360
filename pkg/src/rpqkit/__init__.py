"""Regular path queries over edge-labeled graphs: evaluation, enumeration,
expression classification and brute-force oracles."""

from .bench import BenchSession, DelayReport, bench_delay, bench_stream, layered_graph
from .cli import cli_main
from .colorcoding import ColorCodingParams, color_coding_bounded_match, color_coding_exact_k
from .engine import enumerate_answers, evaluate, plan
from .fptenum import enumerate_fpt
from .gadgets import (
    GadgetInstance,
    clique_gadget_edge_disjoint,
    clique_gadget_monochrome,
    clique_gadget_two_color,
)
from .graph import (
    Edge,
    Graph,
    Path,
    PointedGraph,
    concat,
    format_path,
    is_simple,
    is_trail,
    path_word,
    shortest_path,
    subpath,
)
from .lang import QuerySyntaxError, UnsupportedConstructError, parse, size
from .nfa import (
    Nfa,
    derivative_nfa,
    is_downward_closed,
    is_empty_language,
    is_finite_language,
    states_after,
    to_nfa,
)
from .oracle import OracleConfig, OracleSizeError, oracle_enumerate, oracle_two_disjoint
from .product import (
    edge_alphabet_nfa,
    enumerate_paths,
    enumerate_shortest_paths,
    smallest_word_of_length,
)
from .repfam import RepPathFamily, rep_paths_dp, rep_reduce
from .solvers import (
    akwa_solver,
    cuttable_ste,
    flps_long_path,
    simple_path_at_most_k,
    trail_ste,
    zero_bordered_ste,
)
from .ste import (
    BorderReport,
    SteProfile,
    bordered_value,
    classify,
    conflict_positions,
    cut_borders,
    recognize_ste,
)
from .transforms import line, split, trail_to_simple_instances
from .yen import (
    enumerate_trails,
    yen_all_simple,
    yen_downward_closed,
    yen_simple_framework,
)

from types import ModuleType as _ModuleType

__all__ = sorted(
    name for name, value in globals().items()
    if not name.startswith("_") and not isinstance(value, _ModuleType)
)
