"""
Compiling to certified C-local factors
======================================
"""

import json

import numpy as np

from walklocal import Graph, certify_plan, compile_plan, execute_plan
from walklocal.compiler import check_appendix_lemmas

g = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
H = np.array([
    [0.2, 0.5, 0, 0.3j],
    [0.5, 0.0, 0.4, 0],
    [0, 0.4, -0.1, 0.6],
    [-0.3j, 0, 0.6, 0.1],
])

plan = compile_plan(H, 2.0, g, 0.02)
print("tau =", plan.tau, " eps = %.4f" % plan.eps, " factors =", len(plan.factors))
print("sequence:", "".join(f.label for f in plan.factors))

for v in certify_plan(plan, g):
    print(" ", v.summary())

phi = np.zeros(4, dtype=complex)
phi[0] = 1
r = execute_plan(plan, phi)
print("error %.3e (claimed <= %.3e), success %.4f" % (r.error, plan.claimed_error, r.success_prob))

doc = plan.to_json()
print("plan JSON size: %d bytes" % len(json.dumps(doc)))

# the S-walk and the graph-local Q-walk agree after an even number of steps
rep = check_appendix_lemmas(H, g, [1, 2, 3])
print("||V^2 - W^2|| =", rep.v2_minus_w2)
print("||V^tau - W^tau||:", rep.unsquared)

# a path has no cycle, so the lazy construction is unavailable
path = Graph.from_edges(3, [(1, 2), (2, 3)])
p = compile_plan(np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]), 1.0, path, 0.02)
print(p.warnings, "eps =", p.eps)
