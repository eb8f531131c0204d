"""
Twelve unitaries on two qubits
==============================

Five product unitaries taken from a product basis that cannot be extended,
plus the seven Pauli operators with an identity factor.
"""

import numpy as np

from umeb import OptimizerConfig, tiles_form_check, tiles_identity_probe, tiles_umeb
from umeb.verifier import TilesComplementParams, fit_probe_constants, tiles_moment_matrix, verify_unextendibility

basis = tiles_umeb()
print("members:", basis.n, " complement matches the (a, b, c, d) family:", bool(tiles_form_check(basis)))

# multistart search for a maximally entangled state in the complement
report, label = verify_unextendibility(basis, OptimizerConfig(restarts=200, seed=1))
print(f"best sqrt(4) * s_min = {report.best_value:.10f} ({label})")
print("restarts reaching it:", sum(v > report.best_value - 1e-6 for v in report.values))

# a unitary sum_k x_k E_k would need x x^dagger to equal this matrix, but it has full rank
print("moment matrix spectrum:", np.round(np.linalg.eigvalsh(tiles_moment_matrix()), 6))

# quadratic identities of the parametrized family
kappa_aux, kappa_k = fit_probe_constants()
probe = tiles_identity_probe(TilesComplementParams(0.3, -1j, 0.5, 0.2))
print("aux forms:", np.round(probe.aux_values, 6))
print("targets:  ", np.round(kappa_aux * probe.aux_targets, 6))
print("Tr(U U^dag K) =", np.round(probe.k_trace, 6), " vs ", np.round(kappa_k * probe.cross_target, 6))
