"""QUBO models for five starter problems, solved exactly, by simulated
annealing, or with a QAOA statevector simulator."""

from .anneal import AnnealConfig, auto_temperature, solve_sa
from .errors import (
    BoundsError,
    CapacityError,
    ConfigError,
    DimensionError,
    EmptyError,
    InstanceError,
    ParseError,
    QuboError,
)
from .exact import solve_exact, spectrum
from .model import (
    IsingModel,
    QuboModel,
    Sample,
    SampleSet,
    evaluate,
    from_ising,
    lowest,
    normalize,
    to_ising,
)
from .problems import (
    Graph,
    OrderPartitionInstance,
    PartitionInstance,
    PathwayInstance,
    cancer_multi,
    cancer_single,
    decode_cut,
    decode_order_partition,
    decode_partition,
    decode_pathways,
    max_cut,
    min_vertex_cover,
    number_partitioning,
    order_partitioning,
    verify_cover,
)
from .qaoa import QaoaConfig, QaoaResult, optimize

__version__ = "0.1.0"
