"""Normal quasiprobability representations of finite-dimensional quantum mechanics.

Frames built from SICs and Wootters phase-point operators, their state,
unitary and channel negativities, and brute-force checks of the extremal
bounds.
"""
__version__ = "0.1.0"

from .channels import Channel, TransferMatrix, apply, is_unital, make_channel, saturating_channel, transfer_matrix
from .config import TOL, FiducialParseError, NotASicError, ValidationError
from .frames import (
    NqprFrame,
    QuasiProbVector,
    born_check,
    dual_of_minimal,
    mu,
    nu,
    random_nqpr,
    sic_frame,
    validate_nqpr,
    wootters_frame,
)
from .hw import displacement, parity, weyl_pair
from .kernels import BACKEND
from .linalg import HermitianOperator, Spectrum, herm_eig, hs_inner, tensor
from .negativity import (
    NegativityReport,
    analyze,
    channel_negativity,
    closed_forms,
    count_max_negativity_states,
    frame_channel_negativity,
    frame_negativity,
    frame_unitary_negativity,
    spectrum_class,
    state_negativity,
    unitary_negativity,
)
from .sic import FiducialRecord, SicSet, d3_family, load_fiducial, save_fiducial, sic_from_fiducial, validate_sic
from .symmetry import classify, hw_covariant, is_symmetry, saturating_unitary, unitary_transfer
