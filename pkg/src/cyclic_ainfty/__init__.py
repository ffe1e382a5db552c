"""Exact Hodge decompositions and cyclic A-infinity minimal models.

Everything is computed over the rationals with exact arithmetic, so every
axiom check in the package is an equality, never a tolerance.
"""

from .rationals import Scalar, parse_scalar, format_scalar
from .graded import (
    BilinearForm,
    DgSpace,
    GradedError,
    GradedMap,
    GradedSpace,
    Subspace,
    compose,
    homology,
    radical,
    slot_apply,
)
from .hodge import (
    AlmostHodgeData,
    AxiomReport,
    Decomposition,
    HodgeData,
    HodgeError,
    NoDgComplementError,
    build_harmonious,
    decompose,
    from_decomposition,
    green_correct,
    verify,
)
from .ainfinity import (
    AInfinityStructure,
    CyclicTensor,
    SparseOp,
    check_cyclic,
    check_form,
    check_stasheff,
    cyclic_tensor,
    dga_structure,
    shifted_form_matrix,
)
from .trees import PlanarTree, enumerate_trees, tree_plan
from .transfer import TransferredStructure, evaluate_tree, minimal_model, transfer

__all__ = [name for name in dir() if not name.startswith("_")]
