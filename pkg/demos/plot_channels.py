"""
Unital channels that are not mixtures of unitaries
==================================================

The normalized projector onto the complement of a basis is a Choi matrix with
maximally mixed marginals but no maximally entangled state in its range.
"""

import numpy as np

from umeb import icosahedron_umeb, tiles_umeb
from umeb.channels import (
    asymptotic_eoa,
    channel_apply,
    channel_report,
    complement_state,
    landau_streater_equivalence,
    one_copy_eoa_upper_bound,
    werner_holevo,
)

cfg = {"restarts": 50}
for basis in (icosahedron_umeb(), tiles_umeb()):
    rho = complement_state(basis)
    rep = channel_report(rho, cfg)
    print(basis.label, rep)

    bound = one_copy_eoa_upper_bound(basis, cfg)
    print(f"  one-copy EoA <= {bound.bits:.4f} ({bound.tag}), asymptotic EoA = {asymptotic_eoa(rho):.6f}")

# in d = 3 the channel is the Werner-Holevo map
rho = complement_state(icosahedron_umeb())
x = np.arange(9.0).reshape(3, 3) + 1j
print("matches (Tr X I - X^T)/2:", np.allclose(channel_apply(rho, x), werner_holevo(x)))
print("range is the antisymmetric subspace:", landau_streater_equivalence())
