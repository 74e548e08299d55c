"""
Three ways an operator can respect a graph
==========================================

Z-local, C-local and H-local checks on a few small unitaries.
"""

import numpy as np

from walklocal import Graph, check_h_local, check_z_local, find_c_local_partition
from walklocal.correspondence import WalkSpace, full_swap
from walklocal.locality import sample_c_local

# a 3-vertex path: 1 - 2 - 3
g = Graph.from_edges(3, [(1, 2), (2, 3)])
print(g.to_text())

# the identity is trivially local in all three senses
for check in (check_z_local, find_c_local_partition, check_h_local):
    print(check(np.eye(3), g).summary())

# the full swap |j,k> -> |k,j> moves amplitude from |1,3> to |3,1>,
# and vertices 1 and 3 are not adjacent
s = full_swap(WalkSpace(3))
print(check_z_local(s, g).summary())
print(find_c_local_partition(s, g).summary())

# a random C-local unitary with 2 internal states per vertex
u, partition = sample_c_local(g, 2, seed=11)
print("blocks:", partition)
v = find_c_local_partition(u, g)
print(v.summary(), "finest blocks on vertices", v.witness["block_vertices"])

# its principal log is Z-local too, so it is H-local (at t = 1)
h = check_h_local(u, g)
print(h.summary(), "radius %.4f" % h.witness["spectral_radius"])
