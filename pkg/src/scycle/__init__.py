"""Packing and covering of long terminal cycles.

Given a graph, a terminal set S, and integers k and ell, `solve` returns
either k vertex-disjoint cycles of length >= ell each meeting S, or a
hitting set of bounded size whose removal destroys all such cycles. The
supporting modules are usable on their own: exact long-cycle search,
cycle packing in subcubic multigraphs, and a brute-force oracle for
cross-checking small instances.
"""

from .cubic import (InsufficientBranchVertices, Multigraph, PackingShortfall,
                    pack_cycles, random_cubic_multigraph, s_threshold)
from .frame import (AugmentPreconditionViolated, Frame, FrameEdge,
                    HittingCandidate, ImproveStep, IterationLimitExceeded,
                    MalformedFrame, NoImprovingCase, Pendant, Score,
                    SolveOutcome, TraceRecord, augment_with_path,
                    build_hitting_candidate, extract_packing, hitting_bound,
                    improve, interior_pieces, is_wide, score_of, solve)
from .graphs import (Cycle, Graph, GraphError, ball, components,
                     induced_subgraph, is_h_path, is_long_s_cycle,
                     shortest_path)
from .longcycle import find_long_s_cycle, long_cycle_through, search_budget
from .oracle import (InstanceTooLarge, Verdict, enumerate_cycles,
                     long_s_cycles, max_packing, max_packing_witness,
                     min_hitting_set, verify_outcome)
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "AugmentPreconditionViolated",
    "Cycle",
    "Frame",
    "FrameEdge",
    "Graph",
    "GraphError",
    "HittingCandidate",
    "ImproveStep",
    "InstanceTooLarge",
    "InsufficientBranchVertices",
    "IterationLimitExceeded",
    "MalformedFrame",
    "Multigraph",
    "NoImprovingCase",
    "PackingShortfall",
    "Pendant",
    "Score",
    "SolveOutcome",
    "SplitMix64",
    "TraceRecord",
    "Verdict",
    "augment_with_path",
    "ball",
    "build_hitting_candidate",
    "components",
    "enumerate_cycles",
    "extract_packing",
    "find_long_s_cycle",
    "hitting_bound",
    "improve",
    "induced_subgraph",
    "interior_pieces",
    "is_h_path",
    "is_long_s_cycle",
    "is_wide",
    "long_cycle_through",
    "long_s_cycles",
    "max_packing",
    "max_packing_witness",
    "min_hitting_set",
    "pack_cycles",
    "random_cubic_multigraph",
    "s_threshold",
    "score_of",
    "search_budget",
    "shortest_path",
    "solve",
    "verify_outcome",
    "__version__",
]
