"""Unextendible maximally entangled bases and their applications."""
from .channels import (
    asymptotic_eoa,
    channel_apply,
    channel_report,
    complement_state,
    landau_streater_equivalence,
    marginals,
    one_copy_eoa_upper_bound,
)
from .constructions import (
    UmebCandidate,
    clock_shift_basis,
    complete_deficit_one,
    icosahedron_umeb,
    icosahedron_vectors,
    pauli_vector,
    qubit_fourth_member,
    tiles_umeb,
)
from .duality import embed_operator, extract_operator, is_maximally_entangled, max_entangled_reference, schmidt
from .opspace import OperatorSubspace, gram_schmidt_hs, hs_inner, orthogonal_complement, singular_values
from .optimize import OptimizerConfig
from .verifier import (
    complement_of,
    gram_check,
    max_entanglement_in_subspace,
    qubit_extendability_property,
    search_umeb,
    skew_certificate,
    tiles_form_check,
    tiles_identity_probe,
)

__version__ = "0.1.0"
