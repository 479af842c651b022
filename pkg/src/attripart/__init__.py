"""Local community search on attributed graphs.

Find a dense, attribute-coherent community around a seed node by
combining structural edges with attribute-similarity weights, forecast
how that community will evolve via link prediction, and benchmark
against the classic PageRank-Nibble baseline.
"""

from .graphs import (AttributeStore, CombinedGraph, StructureGraph,
                     build_attribute_weight, build_combined_graph, jaccard,
                     volume, weighted_degree)
from .proximity import Subgraph, WalkCounts, local_proximity, random_walk_counts, relevance_threshold
from .ppr import NibbleParams, RankVector, lazy_transition_apply, nibble_params, truncated_pagerank
from .partition import (AlgorithmError, PartitionResult, attripart,
                        attripart_from_subgraph, pagerank_nibble, parallel_conductance,
                        parallel_cut, sweep, traditional_conductance)
from .forecast import expanded_neighborhood, local_forecasting
from .bench import (ExperimentReport, ForecastDelta, compare_partitioners, density,
                    forecast_experiment, remove_edges, synth_attributed_graph,
                    triangle_count)
from .dataio import DatasetBundle, GraphDataError, load_dataset, save_partition

__version__ = "0.1.0"

__all__ = [
    "AttributeStore", "CombinedGraph", "StructureGraph",
    "build_attribute_weight", "build_combined_graph", "jaccard",
    "volume", "weighted_degree",
    "Subgraph", "WalkCounts", "local_proximity", "random_walk_counts",
    "relevance_threshold",
    "NibbleParams", "RankVector", "lazy_transition_apply", "nibble_params",
    "truncated_pagerank",
    "AlgorithmError", "PartitionResult", "attripart", "attripart_from_subgraph",
    "pagerank_nibble", "parallel_conductance", "parallel_cut", "sweep",
    "traditional_conductance",
    "expanded_neighborhood", "local_forecasting",
    "ExperimentReport", "ForecastDelta", "compare_partitioners", "density",
    "forecast_experiment", "remove_edges", "synth_attributed_graph",
    "triangle_count",
    "DatasetBundle", "GraphDataError", "load_dataset", "save_partition",
    "__version__",
]
