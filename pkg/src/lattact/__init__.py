"""lattact: exact arithmetic for finite group actions on integral lattices.

Core layers:
- lattice: integral lattices, signatures, discriminant forms, vector enumeration
- root_systems: root systems, cameras, Weyl words, folding
- group_actions: lattice actions with signs, fundamental data, eigenlattices
- walls: wall and component counting in the positive cone, segment enumeration
- degeneration: saturation and degeneration of actions at root systems
- catalog: built-in fixtures and explicit classifications
- cli: command-line front end over action files
"""

from .catalog import (
    ClassifyReport,
    Fixture,
    Order3Hit,
    PipelineReport,
    SurveyEntry,
    SurveyReport,
    classify_order3_on_2U,
    d3_full_pipeline,
    fixture,
    torus_symplectic_survey,
)
from .degeneration import (
    DegenerationReport,
    DegenerationResult,
    SaturatedSystem,
    camera_adjacent,
    degenerate,
    degenerate_at_wall,
    tau_saturation,
    verify_degeneration,
)
from .errors import InputError, LattactError, ScopeError, VerificationError
from .group_actions import (
    DilatedComplexStructure,
    EigenData,
    FundamentalData,
    GroupElements,
    LatticeAction,
    conjugation_obstruction,
    dilated_complex_structure,
    eigen_lattices,
    enumerate_group,
    extend_equivariantly,
    fixed_lattice,
    fundamental_data,
    is_geometric,
    leftover_lattice,
    rho_lattice,
    wedge_square,
)
from .lattice import (
    DiscriminantForm,
    Isometry,
    Lattice,
    Signature,
    Sublattice,
    Subspace,
    direct_sum,
    discriminant_form,
    enumerate_vectors,
    is_isometry,
    make_lattice,
    orthogonal_complement,
    primitive_hull,
    rank2_isomorphism_class,
    signature,
    standard_lattice,
    sublattice_sum,
)
from .walls import (
    CandidateReport,
    Wall,
    WallReport,
    candidate_roots,
    component_count,
    project_to_eigenspaces,
    segment_vectors,
    wall_in_H_plus,
    wall_report,
)
from .root_systems import (
    Camera,
    FoldResult,
    RootSystem,
    WeylWord,
    ade_decompose,
    camera_decompose,
    classify_admissible_b_transitive,
    fold_reflection,
    fundamental_camera,
    is_admissible,
    reflection,
    roots_of,
    to_fundamental_chamber,
)

__version__ = "0.1.0"

__all__ = [
    "Camera",
    "CandidateReport",
    "ClassifyReport",
    "DegenerationReport",
    "DegenerationResult",
    "DilatedComplexStructure",
    "DiscriminantForm",
    "EigenData",
    "Fixture",
    "FoldResult",
    "FundamentalData",
    "GroupElements",
    "InputError",
    "Isometry",
    "LattactError",
    "Lattice",
    "LatticeAction",
    "Order3Hit",
    "PipelineReport",
    "RootSystem",
    "SaturatedSystem",
    "ScopeError",
    "Signature",
    "Sublattice",
    "Subspace",
    "SurveyEntry",
    "SurveyReport",
    "VerificationError",
    "Wall",
    "WallReport",
    "WeylWord",
    "ade_decompose",
    "camera_adjacent",
    "camera_decompose",
    "candidate_roots",
    "classify_admissible_b_transitive",
    "classify_order3_on_2U",
    "component_count",
    "conjugation_obstruction",
    "d3_full_pipeline",
    "degenerate",
    "degenerate_at_wall",
    "dilated_complex_structure",
    "direct_sum",
    "discriminant_form",
    "eigen_lattices",
    "enumerate_group",
    "enumerate_vectors",
    "extend_equivariantly",
    "fixed_lattice",
    "fixture",
    "fold_reflection",
    "fundamental_camera",
    "fundamental_data",
    "is_admissible",
    "is_geometric",
    "is_isometry",
    "leftover_lattice",
    "make_lattice",
    "orthogonal_complement",
    "primitive_hull",
    "project_to_eigenspaces",
    "rank2_isomorphism_class",
    "reflection",
    "rho_lattice",
    "roots_of",
    "segment_vectors",
    "signature",
    "standard_lattice",
    "sublattice_sum",
    "tau_saturation",
    "to_fundamental_chamber",
    "torus_symplectic_survey",
    "verify_degeneration",
    "wall_in_H_plus",
    "wall_report",
    "wedge_square",
    "__version__",
]
