"""
Splitting a set of numbers into two equal halves
=================================================

Build the partitioning QUBO for {1, 5, 5, 11}, then solve it three ways.
"""

import numpy as np

from qubo_forge import AnnealConfig, QaoaConfig, decode_partition, number_partitioning, optimize, solve_exact, solve_sa
from qubo_forge.qaoa import probabilities, run_circuit

values = [1, 5, 5, 11]
q = number_partitioning(values)
print("variables:", q.n, " constant:", q.constant)
print("linear:", dict(q.linear))
print("quadratic:", dict(q.quadratic))

# exhaustive search; the two best rows are complements of each other
for s in solve_exact(q, top_k=2):
    print("exact   ", s.bitstring, s.energy, decode_partition(values, s.assignment))

# simulated annealing with the default schedule
best = solve_sa(q, AnnealConfig(seed=0)).first
print("anneal  ", best.bitstring, best.energy, decode_partition(values, best.assignment))

# two-layer QAOA on the statevector simulator
result = optimize(q, QaoaConfig(layers=2, restarts=3, seed=0))
print("qaoa    ", result.best.bitstring, result.best.energy)
print("gammas", np.round(result.gammas, 3), "betas", np.round(result.betas, 3))

# probability mass on the two perfect splits (variable 0 is the low bit of the index)
p = probabilities(run_circuit(q, result.gammas, result.betas))
print("P(0001) + P(1110) =", round(p[0b1000] + p[0b0111], 3), "vs uniform", 2 / 16)
