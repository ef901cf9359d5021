"""Exact stabilizer-reduction magic state distillation and bound-state witnesses."""
from .codes import StabilizerCode, canonical_form, get_code, is_trivial, make_code
from .engine import DistillationOutcome, dense_oracle, distill, iterate
from .pauli import PauliString
from .states import AXIS_H, AXIS_T, BlochState, octahedron_test, surface_fidelity
from .witness import build_witness, epsilon_bisect

__version__ = "0.1.0"
