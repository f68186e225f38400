"""Euler characteristic transform and SELECT distances for embedded simplicial complexes."""

from .complexes import (
    AbstractComplex,
    Embedding,
    GeometricComplex,
    Simplex,
    build_complex,
    displacement,
    euler_characteristic,
    max_vertex_cofaces,
)
from .ecc import StepFunction, ecc_from_diagram, ecc_from_filtration, l1_distance
from .ect import (
    DEFAULT_DIRECTION_COUNTS,
    THREADS_ENV_VAR,
    DirectionScheme,
    DistanceEstimate,
    default_scheme,
    direction_matrix,
    ect_distance,
    ect_stability_bound,
    ect_value,
    sample_directions,
    sphere_area,
    sphere_cosine_integral,
)
from .filtration import (
    Direction,
    SimplexFiltration,
    VertexFunction,
    directional_filtration,
    height,
    min_extension,
    superlevel_complex,
)
from .io import (
    ComplexBundle,
    complex_to_jsonable,
    diagram_from_jsonable,
    diagram_to_jsonable,
    load_complex_file,
    load_complex_json,
    load_diagram,
    load_directions_csv,
    load_off,
    parse_step_function_csv,
    save_complex_file,
    save_diagram,
    step_function_csv,
)
from .persistence import (
    PersistenceDiagram,
    PersistencePoint,
    betti_numbers,
    persistence_diagram,
)
from .select import SelectField, select_distance, select_stability_bound, select_value
from .stability import (
    EXACT_TOL,
    QUADRATURE_ABS_TOL,
    QUADRATURE_REL_TOL,
    VERIFICATION_CHECKS,
    BoundReport,
    InstanceParams,
    perturb,
    random_complex,
    random_diagram_pair,
    random_embedding,
    random_vertex_function,
    run_verification,
    verify_ecc_vs_wasserstein,
    verify_ect_stability,
    verify_integrated_wasserstein,
    verify_select_stability,
    verify_turner_sandwich,
)
from .wasserstein import (
    brute_force_wasserstein,
    diagonal_cost,
    point_cost,
    total_wasserstein_distance,
    wasserstein_distance,
)

__version__ = "0.1.0"

__all__ = [
    "AbstractComplex",
    "BoundReport",
    "ComplexBundle",
    "DEFAULT_DIRECTION_COUNTS",
    "Direction",
    "DirectionScheme",
    "DistanceEstimate",
    "EXACT_TOL",
    "Embedding",
    "GeometricComplex",
    "InstanceParams",
    "PersistenceDiagram",
    "PersistencePoint",
    "QUADRATURE_ABS_TOL",
    "QUADRATURE_REL_TOL",
    "SelectField",
    "Simplex",
    "SimplexFiltration",
    "StepFunction",
    "THREADS_ENV_VAR",
    "VERIFICATION_CHECKS",
    "VertexFunction",
    "betti_numbers",
    "brute_force_wasserstein",
    "build_complex",
    "complex_to_jsonable",
    "default_scheme",
    "diagonal_cost",
    "diagram_from_jsonable",
    "diagram_to_jsonable",
    "direction_matrix",
    "directional_filtration",
    "displacement",
    "ecc_from_diagram",
    "ecc_from_filtration",
    "ect_distance",
    "ect_stability_bound",
    "ect_value",
    "euler_characteristic",
    "height",
    "l1_distance",
    "load_complex_file",
    "load_complex_json",
    "load_diagram",
    "load_directions_csv",
    "load_off",
    "max_vertex_cofaces",
    "min_extension",
    "parse_step_function_csv",
    "persistence_diagram",
    "perturb",
    "point_cost",
    "random_complex",
    "random_diagram_pair",
    "random_embedding",
    "random_vertex_function",
    "run_verification",
    "sample_directions",
    "save_complex_file",
    "save_diagram",
    "select_distance",
    "select_stability_bound",
    "select_value",
    "sphere_area",
    "sphere_cosine_integral",
    "step_function_csv",
    "superlevel_complex",
    "total_wasserstein_distance",
    "verify_ecc_vs_wasserstein",
    "verify_ect_stability",
    "verify_integrated_wasserstein",
    "verify_select_stability",
    "verify_turner_sandwich",
    "wasserstein_distance",
    "__version__",
]
