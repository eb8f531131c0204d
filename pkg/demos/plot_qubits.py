"""
No unextendible basis for two qubits
====================================

Any three orthogonal maximally entangled two-qubit states leave room for a
fourth one, and the same holds for d^2 - 1 states in any dimension.
"""

import numpy as np

from umeb import UmebCandidate, clock_shift_basis, complete_deficit_one, extract_operator, is_maximally_entangled, qubit_fourth_member
from umeb.duality import random_unitary
from umeb.verifier import qubit_extendability_property, qubit_triple

rng = np.random.default_rng(3)
v, w = random_unitary(2, rng), random_unitary(2, rng)
alpha, beta = np.exp(0.4j) * np.cos(1.1), np.exp(0.4j) * np.sin(1.1)

# complete numerically and compare with the closed form
psi = complete_deficit_one(qubit_triple(alpha, beta, v, w))
numeric = extract_operator(psi)
analytic = v @ qubit_fourth_member(alpha, beta) @ w
print("|Tr(analytic^dag numeric)| =", abs(np.vdot(analytic, numeric)))
print("1000 random triples extend:", qubit_extendability_property(1000, seed=7))

# remove one generalized Bell state in d = 3 and get it back
bell = clock_shift_basis(3)
rest = UmebCandidate(3, bell.members[:4] + bell.members[5:])
psi = complete_deficit_one(rest)
print("overlap with removed member:", abs(np.vdot(psi, bell.states()[4])))
print("maximally entangled:", bool(is_maximally_entangled(psi)))
