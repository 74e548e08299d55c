"""
How many steps does a target error cost?
========================================

Sweep delta for the Hadamard-type generator on the complete graph and fit
log tau against log delta. The ratio ||abs H|| / ||H|| reaches sqrt(N) here.
"""

import numpy as np

from walklocal.ensembles import complete_graph, hadamard_hamiltonian
from walklocal.spectral import abs_operator, operator_norm
from walklocal.sweep import sweep_scaling

N = 4
g = complete_graph(N)
H = hadamard_hamiltonian(N)
print("||abs H|| / ||H|| =", operator_norm(abs_operator(H)) / operator_norm(H))

deltas = np.logspace(-1, -4, 7)
res = sweep_scaling(g, H, 1.0, deltas, seeds=[0, 1])
print(res.to_csv())
print("fitted slope of log tau vs log delta: %.3f" % res.slope)
