"""Clusters realized in the plane and the linear systems they cut out."""
from .conditions import (Chart, Cohomology, ConditionMatrix, RealizedCluster, cohomology,
                         conditions_matrix, model_charts, monomials, realize_cluster)
from .curves import (Arrangement, ConstructionError, forms_through, interpolating_curve,
                     intersect, kernel_basis, line_arrangement, oka_curve, transversality_check)
from .geometry import (BranchCurve, JetMismatch, LocalFrame, ProjectivePoint, SingularPoint,
                       jet_check)
from .polys import PolynomialError, parse_polynomial
from .series import FrameError
