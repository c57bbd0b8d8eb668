from .fields import FqElement, legendre, sqrt_mod_p, frobenius, golden_root, omega_root, require_admissible
from .matrices import Mat3, ProjElement, canonicalize, theorem_elements, theorem_matrices
from .groups import GroupSet, generate, double_coset, antisymmetry_check
from .digraph import CosetDigraph, LocalPatch, build_coset_digraph, local_patch
from .certificate import Certificate, CheckRecord, emit_certificate, read_certificate
from .verifier import verify_theorem, field_diagnostics
from .oracle import OracleReport, run_oracle_suite
