"""Geometry-aware dataset diversity from H0 persistence landscapes."""
from .baselines import DiversityValue, MagnitudeCurve, dcscore, magarea, magnitude_at, vendi_score
from .diversity import MetricOptions, compute_metrics, pldiv
from .errors import (ConvergenceError, InputError, MetricError, NumericError, ParameterError,
                     ParseError, PLDivError, StructuralError, UsageError, ValidationError)
from .geometry import (DistanceMatrix, PointCloud, SimilarityMatrix, kernel_matrix, pairwise_distances,
                       validate_distance_matrix)
from .landscape import (PersistenceLandscape, PiecewiseLinearFn, build_landscape, integrate_landscape,
                        pldiv_closed_form, sample_landscape, tent)
from .persistence import PersistenceDiagram, PersistencePair, SparseGraph, h0_dense, h0_sparse
from .sparse_rips import GreedyPermutation, SparseRipsParams, greedy_permutation, pldiv_sparse, sparse_rips_graph
from .report import tool_version

__version__ = tool_version()
