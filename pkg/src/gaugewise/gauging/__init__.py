"""规范化测量：辅助图合成、形变码构造与测量执行."""

from gaugewise.gauging.cycles import (
    BoundaryMaps,
    boundary_maps,
    cycle_basis,
    cycle_space_dim,
    drop_implied_cycles,
    edges_for_vertex_cycle,
    fundamental_cycles,
    redundant_cycle_dim,
    relation_cycles,
    select_flux_checks,
    short_cycles,
)
from gaugewise.gauging.deform import (
    DeformedCode,
    counting_identity,
    cycle_space_rank,
    deform,
    hypergraph_deform,
    hypergraph_plan,
)
from gaugewise.gauging.export import (
    deformed_matrices,
    plan_from_json,
    plan_to_dot,
    plan_to_json,
    read_plan,
    write_deformed_matrices,
    write_plan,
)
from gaugewise.gauging.graph import GaugingGraph
from gaugewise.gauging.measure import (
    GaugeResult,
    MeasureMode,
    byproduct_vertices,
    gauge_measure,
    gauge_measure_all,
)
from gaugewise.gauging.plan import (
    BasisChange,
    GaugingPlan,
    PlanDocument,
    PlanSet,
    VertexDocument,
    basis_change_to_x,
    parallel_compose,
    restricted_z_support,
)
from gaugewise.gauging.recipes import (
    Recipe,
    ckbb,
    css_init,
    direct_sum,
    ladder,
    recipe_plan,
    shor,
)
from gaugewise.gauging.synthesis import (
    Matching,
    RandomExpansion,
    RoutingMode,
    add_expander_edges,
    initial_plan,
    matching_edges,
    route_paths,
    sample_edges,
)

__all__ = [
    "BasisChange",
    "BoundaryMaps",
    "DeformedCode",
    "GaugeResult",
    "GaugingGraph",
    "GaugingPlan",
    "Matching",
    "MeasureMode",
    "PlanDocument",
    "PlanSet",
    "RandomExpansion",
    "Recipe",
    "RoutingMode",
    "VertexDocument",
    "add_expander_edges",
    "basis_change_to_x",
    "boundary_maps",
    "byproduct_vertices",
    "ckbb",
    "counting_identity",
    "css_init",
    "cycle_basis",
    "cycle_space_dim",
    "cycle_space_rank",
    "deform",
    "deformed_matrices",
    "drop_implied_cycles",
    "direct_sum",
    "edges_for_vertex_cycle",
    "fundamental_cycles",
    "gauge_measure",
    "gauge_measure_all",
    "hypergraph_deform",
    "hypergraph_plan",
    "initial_plan",
    "ladder",
    "matching_edges",
    "parallel_compose",
    "plan_from_json",
    "plan_to_dot",
    "plan_to_json",
    "read_plan",
    "recipe_plan",
    "redundant_cycle_dim",
    "relation_cycles",
    "restricted_z_support",
    "route_paths",
    "sample_edges",
    "select_flux_checks",
    "shor",
    "short_cycles",
    "write_deformed_matrices",
    "write_plan",
]
