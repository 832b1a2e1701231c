"""
Driver pathways from a mutation table
=====================================

Genes mutated in many patients are rewarded, genes mutated together in one
patient are penalized. The toy table is read, turned into count matrices and
solved for one and for two pathways.
"""

from pathlib import Path

from qubo_forge import cancer_multi, cancer_single, decode_pathways, solve_exact
from qubo_forge.genomics import adjacency_matrix, build_pathway_instance, degree_matrix, parse_mutations

data = Path(__file__).resolve().parent.parent / "data"
table = parse_mutations(data / "mutations_3patients.tsv")
print("genes:", table.genes)
print("D =\n", degree_matrix(table))
print("A =\n", adjacency_matrix(table))

# the coverage weight decides whether the co-mutated pair g1, g2 is kept
for alpha in (1.0, 3.0):
    inst = build_pathway_instance(table, alpha=alpha)
    best = solve_exact(cancer_single(inst)).first
    print(f"alpha={alpha}: {decode_pathways(inst, best.assignment)} energy {best.energy}")

# two pathways on the toy table; a large orthogonality weight keeps them disjoint
toy = parse_mutations(data / "mutations_toy.tsv")
inst = build_pathway_instance(toy, alpha=1.0, k=2, alpha_orth=20.0)
best = solve_exact(cancer_multi(inst)).first
print("two pathways:", decode_pathways(inst, best.assignment), "energy", best.energy)
