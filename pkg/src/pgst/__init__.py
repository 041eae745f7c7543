"""Exact decision, certification and simulation of pretty good state transfer
between corners of cartesian products of paths."""

from .classify import Classification, LaplacianVerdict, classify_corners, laplacian_corner_verdict
from .cospectral import CornerPair, CospectralReport, phi_minus, relative_sign, strong_cospectrality
from .cyclo import CycloReal, from_rational, lift, make_cos, verify_alternating_identity
from .dynamics import (
    FidelityTrace,
    corner_fidelity,
    find_time_reaching,
    path_propagator,
    path_propagator_entry,
    scan_fidelity,
)
from .engine import Certificate, Decision, RelationLattice, Verdict, decide_pgst, relation_lattice, verify_certificate
from .errors import DomainError, NotStronglyCospectralError, ResourceLimitError
from .lattice import integer_kernel
from .spectra import (
    EigenIndex,
    FactorClass,
    Hamiltonian,
    PathFactor,
    ProductGraph,
    path_eigenvalue,
    path_eigenvector_end_values,
    product_eigenvalue,
    spectrum_table,
)
from .witness import WitnessFamily, build_witness

__version__ = "0.1.0"
