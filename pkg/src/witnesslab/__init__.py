"""Universal nonlinear entanglement witnesses for distinguishable and identical particles.

The witness for a system is built from the Casimir operator of its local
symmetry algebra.  It vanishes exactly on two copies of nonentangled pure
states and yields a generalized concurrence, plus lower and upper estimates
of its convex roof for mixed states.
"""

from .canonical import CanonicalCoeffs, canonical_coefficients, is_nonentangled, schmidt, slater, takagi_coeffs
from .concurrence import (
    BoundReport,
    TauSet,
    concurrence_direct,
    concurrence_pure,
    convex_roof_upper,
    optimize_y,
    tau_matrices,
    uhlmann_bound,
)
from .errors import (
    BadDecompositionSize,
    BadDimension,
    BadWeights,
    DegenerateTop,
    DimensionCap,
    DimensionMismatch,
    IndexOutOfRange,
    NonHermitian,
    NotAntisymmetric,
    NotSymmetric,
    SpecMismatch,
    UnsupportedSpec,
    WitnessLabError,
)
from .lie import RepresentedAlgebra, SuBasis, SystemSpec, represent, su_basis, verify_highest_weight
from .states import MixedState, PureState, product_state
from .tensor import antisym_block_diagonalize, kron, partial_trace, takagi
from .witness import (
    PROJECTOR,
    SPECTRAL_GAP,
    Witness,
    build_witness,
    casimir,
    jamiolkowski_apply,
    kraus_apply,
    kraus_operator,
    lichtenstein,
    lichtenstein_prime_action,
    projector_appendix,
    witness_for,
)

__version__ = "0.1.0"
