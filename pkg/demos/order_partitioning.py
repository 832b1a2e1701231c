"""
Balancing a basket of orders
============================

Split four stock orders into two sides with equal money and equal exposure
to one risk factor.
"""

from pathlib import Path

import numpy as np

from qubo_forge import OrderPartitionInstance, decode_order_partition, order_partitioning, solve_exact
from qubo_forge.io import read_order_partition

data = Path(__file__).resolve().parent.parent / "data"
inst = read_order_partition(data / "stocks.csv", data / "risks.csv")
best = solve_exact(order_partitioning(inst)).first
print(best.bitstring, best.energy)
print(decode_order_partition(inst, best.assignment))

# with random risk loadings the two goals compete; b trades one against the other
rng = np.random.default_rng(1)
values = tuple(float(v) for v in rng.integers(1, 10, size=8))
risks = rng.uniform(-1, 1, size=(2, 8))
for b in (0.0, 1.0, 10.0):
    inst = OrderPartitionInstance(values, risks, a=1.0, b=b)
    best = solve_exact(order_partitioning(inst)).first
    _, _, money_gap, factor_gaps = decode_order_partition(inst, best.assignment)
    print(f"b={b}:", best.bitstring, "money gap", money_gap, "factor gaps", np.round(factor_gaps, 3))
