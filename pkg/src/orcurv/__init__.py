"""Exact Ollivier-Ricci curvature, clustering bounds and Bakry-Emery CD inequalities on graphs."""
from .bakry_emery import (
    CDQuadraticForms,
    CDResult,
    FunctionOnBall,
    cd_bound_max_degree,
    cd_bound_positive_kappa,
    cd_bound_triangles,
    cd_bound_weighted_triangles,
    cd_forms,
    cd_optimal_K,
    cd_verify,
    cd_verify_many,
    gamma,
    gamma2,
    gamma2_iterated,
    h_form,
    laplacian,
)
from .curvature import (
    CaseTag,
    EdgeCurvatureReport,
    ScalarCurvatureReport,
    edge_report,
    graph_report,
    lower_bound_linyau,
    lower_bound_triangle,
    min_triangles_for_positive,
    ricci,
    scalar_report,
    upper_bound_triangle,
)
from .families import generate_family
from .graph import (
    Graph,
    ball,
    clustering_coefficient,
    connected_components,
    degree_summary,
    hop_distance,
    load_edge_list,
    serialize_edge_list,
    triangle_count,
)
from .measure import VertexMeasure, intersection_mass, random_walk_measure, total_variation_overlap_check
from .transport import TransportResult, dual_enumeration_oracle, verify_plan, wasserstein1

__version__ = "0.1.0"
