"""
Hamiltonian evolution from a local walk
=======================================

Build the isometry T for a Z-local H on a triangle, check T^dag S T,
then run the walk and compare with exp(-iHt).
"""

import numpy as np

from walklocal import Graph, simulate_correspondence
from walklocal.correspondence import build_isometry, build_psi_states, full_swap
from walklocal.ensembles import random_state, random_z_local_hermitian
from walklocal.spectral import abs_operator, matrix_exponential, operator_norm, principal_eigvec

rng = np.random.default_rng(2)
g = Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
H = random_z_local_hermitian(g, rng, nonneg_diagonal=True, radius=1.5)
print(np.round(H, 3))

perron = principal_eigvec(abs_operator(H), g)
print("||H|| = %.4f, ||abs H|| = %.4f" % (operator_norm(H), perron.norm_abs))

T = build_isometry(build_psi_states(H, perron, g), None, 1.0)
S = full_swap(T.space)
gap = np.abs(T.matrix.conj().T @ S @ T.matrix - H / perron.norm_abs).max()
print("max |T^dag S T - H/||abs H||| =", gap)

# now the lazy, graph-local version with automatic (tau, eps)
phi = random_state(3, rng)
t = 1.0
for delta in (0.1, 0.01, 0.001):
    r = simulate_correspondence(H, t, g, phi, delta=delta)
    print(f"delta={delta:<6} tau={r.tau:<4} eps={r.eps:.4f} "
          f"error={r.error:.2e} success={r.success_prob:.4f}")

# sanity: the target state itself
print(np.round(matrix_exponential(H, t) @ phi, 4))
