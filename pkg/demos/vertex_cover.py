"""
Minimum vertex cover and the penalty weight
===========================================

A weak penalty lets the solver drop edges; P > 1 keeps every edge covered.
"""

from qubo_forge import Graph, min_vertex_cover, solve_exact, verify_cover

triangle = Graph(3, ((0, 1), (1, 2), (0, 2)))
star_pair = Graph(6, ((0, 1), (0, 2), (0, 3), (1, 4), (3, 4), (4, 5)))

for g, penalty in ((triangle, 0.5), (triangle, 2.0), (star_pair, 2.0)):
    best = solve_exact(min_vertex_cover(g, penalty=penalty)).first
    valid, uncovered = verify_cover(g, best.assignment)
    cover = [i for i, bit in enumerate(best.assignment) if bit]
    print(f"n={g.n} P={penalty}: cover={cover} energy={best.energy} valid={valid} uncovered={uncovered}")
