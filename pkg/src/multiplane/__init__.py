"""Irregularity of cyclic multiple planes ``z^n = f(x, y)``.

Submodules:

``enriques``      gridded trees, proximity matrices, clusters and unloading
``multiplier``    jumping numbers and multiplier clusters of ``x^{dp} = y^{dq}``
``covering``      building data of cyclic coverings and their normalization
``linsys``        clusters at plane points, condition matrices, ``h^0``/``h^1``
``irregularity``  the sum of superabundances over admissible jumping numbers
``benchmarks``    explicit rational curves with known irregularity
"""
from .covering import (CoveringData, DivisorClass, Epimorphism, character_bundle,
                       epsilon_factor, multiple_plane_data, normalize, resolved_plane_bundle)
from .enriques import (Cluster, ClusterError, GriddedTree, ProximityMatrix, build_tpq_tree,
                       cluster_colength, minimal_cluster, proximity_matrix, satisfies_star,
                       unload)
from .irregularity import IrregularityReport, irregularity, profile, triple_point_bound
from .linsys import (BranchCurve, LocalFrame, ProjectivePoint, SingularPoint, cohomology,
                     conditions_matrix, line_arrangement, oka_curve, realize_cluster,
                     transversality_check)
from .multiplier import (JumpingNumber, SingularityType, jumping_numbers, jumping_numbers_oracle,
                         jumping_set, multiplier_cluster, singularity_params, tilde_pair)

__version__ = "0.1.0"
