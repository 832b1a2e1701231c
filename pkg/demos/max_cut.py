"""
Max-Cut on a small bipartite graph
==================================

The six-node fixture is bipartite, so every one of its eight edges can be cut.
"""

from pathlib import Path

from qubo_forge import AnnealConfig, decode_cut, max_cut, solve_exact, solve_sa
from qubo_forge.io import read_graph

g = read_graph(Path(__file__).resolve().parent.parent / "data" / "maxcut_six.txt")
q = max_cut(g)
print(g.n, "nodes,", len(g.edges), "edges")

exact = solve_exact(q).first
print("exact cut:", decode_cut(g, exact.assignment), "energy", exact.energy)

# energy is minus the cut size, so the annealer should land on -8 as well
for seed in range(3):
    s = solve_sa(q, AnnealConfig(seed=seed)).first
    print("seed", seed, s.bitstring, s.energy)
