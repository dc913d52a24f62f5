"""Community detection by multislice modularity maximization.

Core objects: Graph (sparse undirected, cached strengths),
MultisliceNetwork (one graph copied across coupled slices), Partition
(assignment with incremental-update caches), and a greedy multilevel
optimizer with an exhaustive oracle for small instances.  Image support
converts rasters to pixel-affinity graphs with a self-tuning local scale.
"""

from .affinity import (AffinityConfig, TAU_FLOOR, build_affinity_graph,
                       extract_patch, local_scale, patch_distance)
from .diagnostics import (PALETTE, SliceDiagnostics, adjacent_persistence,
                          community_counts, community_sizes,
                          compute_diagnostics, diagnostics_csv, persistence,
                          render_label_map)
from .errors import (EdgeListParseError, OracleSizeError,
                     UndefinedDiagnosticError, UndefinedQualityError,
                     ValidationError)
from .graph import (Graph, aggregate_by_partition, load_edge_list,
                    serialize_edge_list)
from .images import (ImageBuffer, read_csv_matrix, read_image, read_netpbm,
                     write_ppm)
from .multislice import (GammaSchedule, MultisliceNetwork,
                         build_uniform_multislice, linear_gamma_schedule)
from .optimize import (BRUTE_FORCE_MAX_NODES, OptimizeResult,
                       OptimizerParams, brute_force_optimum, optimize)
from .quality import (Partition, QualityNorm, delta_move,
                      modularity_multislice, modularity_single)
from .synthetic import four_region_image

__version__ = "0.1.0"

__all__ = [
    "AffinityConfig", "TAU_FLOOR", "build_affinity_graph", "extract_patch",
    "local_scale", "patch_distance",
    "PALETTE", "SliceDiagnostics", "adjacent_persistence",
    "community_counts", "community_sizes", "compute_diagnostics",
    "diagnostics_csv", "persistence", "render_label_map",
    "EdgeListParseError", "OracleSizeError", "UndefinedDiagnosticError",
    "UndefinedQualityError", "ValidationError",
    "Graph", "aggregate_by_partition", "load_edge_list",
    "serialize_edge_list",
    "ImageBuffer", "read_csv_matrix", "read_image", "read_netpbm",
    "write_ppm",
    "GammaSchedule", "MultisliceNetwork", "build_uniform_multislice",
    "linear_gamma_schedule",
    "BRUTE_FORCE_MAX_NODES", "OptimizeResult", "OptimizerParams",
    "brute_force_optimum", "optimize",
    "Partition", "QualityNorm", "delta_move", "modularity_multislice",
    "modularity_single",
    "four_region_image",
    "__version__",
]
