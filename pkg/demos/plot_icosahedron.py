"""
An unextendible basis in three dimensions
=========================================

Six unitaries built from the diagonals of an icosahedron are orthogonal, and
everything orthogonal to them is a skew-symmetric matrix.
"""

import numpy as np

from umeb import complement_of, gram_check, icosahedron_umeb, icosahedron_vectors, max_entanglement_in_subspace

# the six real unit vectors have equal pairwise overlaps
v = icosahedron_vectors()
print("overlaps |<psi_j|psi_k>|^2:\n", np.round(np.abs(v @ v.T) ** 2, 6))

# each member is a reflection-like unitary I - (1 - e^{i theta}) |psi><psi|
basis = icosahedron_umeb()
print("Gram residuals:", gram_check(basis))

# the complement is three dimensional and every element is skew-symmetric
comp = complement_of(basis)
for b in comp:
    print("|B + B^T| =", np.linalg.norm(b + b.T))

# a 3x3 skew matrix has singular values (s, s, 0): never unitary
rep = max_entanglement_in_subspace(comp, {"restarts": 20})
print("best sqrt(3) * s_min over the complement:", rep.best_value)
print("entropy of the most entangled complement state:", rep.best_entropy_bits)
