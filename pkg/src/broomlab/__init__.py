"""Graph laboratory for multibroom containment, multipartite cores,
template arrays, daisy structures, and exact bound audits."""

__version__ = "0.1.0"

from .graphs import (
    Digraph,
    Graph,
    induced,
    is_clique,
    is_stable,
    neighborhood_closed,
    neighborhood_exact,
)
from .solvers import (
    Coloring,
    InstanceTooLarge,
    chi_local,
    chromatic_number,
    clique_number,
    validate_coloring,
)
from .structures import (
    CoreWitness,
    Params,
    ThetaTable,
    check_conditions,
    find_core,
    is_dense_to,
    is_eta_mixed,
    is_matching_covered,
    max_matching_covered_chi,
)
from .trees import (
    Embedding,
    PatternTree,
    assemble_T_delta,
    build_T,
    build_broom,
    build_multibroom,
    contains_induced,
    find_rooted_broom,
    is_T_delta_free,
    verify_embedding,
)
from .constants import ConstantsLedger, compose_phi, ledger, phi_step, reevaluate
from .templates import (
    AuditReport,
    Template,
    TemplateArray,
    bound_audit,
    clean1,
    clean2,
    clean3,
    color_bounded_outdegree,
    extract_T_delta_witness,
    extract_template_array,
    gallai_roy_color,
    is_1_cleaned,
    is_2_cleaned,
    is_3_cleaned,
    is_partially_1_cleaned,
    is_partially_2_cleaned,
    validate_template_array,
)
from .shadows import (
    Daisy,
    Privatization,
    Shadowing,
    build_shadowing,
    find_bunch,
    find_daisy,
    private_cover,
    privatize,
    shadowing_degree,
    strong_triple_audit,
)
from .generators import GenSpec, generate, plant_core
from .pipeline import PipelineTrace, run_pipeline
