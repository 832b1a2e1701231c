"""QUBO generators for the five starter problems and their decoders.

Every generator returns a normalized :class:`~qubo_forge.model.QuboModel`
whose energy equals the problem objective exactly; symmetric pair weights
are folded into the upper triangle by doubling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, InstanceError
from .model import QuboModel, as_assignment, normalize

__all__ = [
    "Graph",
    "PartitionInstance",
    "OrderPartitionInstance",
    "PathwayInstance",
    "number_partitioning",
    "decode_partition",
    "max_cut",
    "decode_cut",
    "min_vertex_cover",
    "verify_cover",
    "cancer_single",
    "cancer_multi",
    "pathway_matrix",
    "decode_pathways",
    "order_partitioning",
    "order_partition_objective",
    "decode_order_partition",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0 .. n-1``; edges stored as ``(u, v)`` with ``u < v``."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InstanceError(f"graph needs at least one node, got {self.n}")
        seen = set()
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InstanceError(f"self-loop on node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceError(f"edge ({u}, {v}) references a node outside 0..{self.n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"duplicate edge {key}")
            seen.add(key)
            canon.append(key)
        object.__setattr__(self, "edges", tuple(canon))

    def degree(self, i: int) -> int:
        return sum(i in e for e in self.edges)


@dataclass(frozen=True)
class PartitionInstance:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        if not vals:
            raise InstanceError("cannot partition an empty set")
        for s in vals:
            if int(s) != s or s < 1:
                raise InstanceError(f"values must be positive integers, got {s!r}")
        object.__setattr__(self, "values", tuple(int(s) for s in vals))

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class OrderPartitionInstance:
    """Stock dollar amounts ``q`` and an ``m x n`` risk-exposure matrix ``p``."""

    values: tuple[float, ...]
    risks: np.ndarray
    a: float = 1.0
    b: float = 1.0
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise InstanceError("need at least one stock")
        if any(v <= 0 for v in vals):
            raise InstanceError("stock values must be positive")
        risks = np.atleast_2d(np.asarray(self.risks, dtype=np.float64))
        if risks.shape[0] < 1 or risks.shape[1] != len(vals):
            raise InstanceError(
                f"risk matrix shape {risks.shape} does not match {len(vals)} stocks"
            )
        if self.a < 0 or self.b < 0:
            raise ConfigError("weights a and b must be non-negative")
        if self.names is not None and len(self.names) != len(vals):
            raise InstanceError("stock names do not match stock values")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "risks", risks)

    @property
    def total(self) -> float:
        return float(sum(self.values))


@dataclass(frozen=True)
class PathwayInstance:
    """Coverage (``degree``) and exclusivity (``adjacency``) counts over a gene list.

    ``alpha`` weights coverage in the single-pathway model; ``alpha_orth``
    weights the one-pathway-per-gene term of the multi-pathway model and
    defaults to ``alpha``.
    """

    degree: np.ndarray
    adjacency: np.ndarray
    labels: tuple[str, ...]
    alpha: float = 1.0
    k: int = 1
    alpha_orth: float | None = None

    def __post_init__(self):
        d = np.asarray(self.degree, dtype=np.float64)
        a = np.asarray(self.adjacency, dtype=np.float64)
        n = len(self.labels)
        if n == 0:
            raise InstanceError("pathway instance has no genes")
        if d.shape != (n, n) or a.shape != (n, n):
            raise InstanceError(f"matrix shapes {d.shape}, {a.shape} do not match {n} labels")
        if np.any(d != np.diag(np.diag(d))):
            raise InstanceError("degree matrix must be diagonal")
        if np.any(a != a.T) or np.any(np.diag(a) != 0):
            raise InstanceError("adjacency matrix must be symmetric with zero diagonal")
        if self.k < 1:
            raise ConfigError(f"pathway count must be >= 1, got {self.k}")
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "adjacency", a)
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.alpha_orth is None:
            object.__setattr__(self, "alpha_orth", float(self.alpha))

    @property
    def n(self) -> int:
        return len(self.labels)


# -- number partitioning ----------------------------------------------------


def number_partitioning(inst: PartitionInstance | Sequence[int]) -> QuboModel:
    """Scaled model whose energy is ``d**2 = (c - 2 sum s_i x_i)**2``.

    With ``q_ii = s_i (s_i - c)`` and ``q_ij = s_i s_j`` we have
    ``d**2 = c**2 + 4 x^T q x``; the symmetric off-diagonal pair is folded
    into one upper-triangle coefficient ``8 s_i s_j``.
    """
    if not isinstance(inst, PartitionInstance):
        inst = PartitionInstance(tuple(inst))
    s = inst.values
    c = inst.total
    n = len(s)
    linear = {i: 4.0 * s[i] * (s[i] - c) for i in range(n)}
    quadratic = {(i, j): 8.0 * s[i] * s[j] for i in range(n) for j in range(i + 1, n)}
    return normalize(QuboModel(n, linear, quadratic, float(c * c)))


def decode_partition(inst: PartitionInstance | Sequence[int], a) -> tuple[list[int], list[int], int]:
    """``(set_a, set_b, difference)``; ``x_i = 1`` puts ``s_i`` in ``set_a``."""
    if not isinstance(inst, PartitionInstance):
        inst = PartitionInstance(tuple(inst))
    x = as_assignment(a, len(inst.values))
    set_a = [s for s, b in zip(inst.values, x) if b]
    set_b = [s for s, b in zip(inst.values, x) if not b]
    return set_a, set_b, abs(sum(set_a) - sum(set_b))


# -- max-cut ----------------------------------------------------------------


def max_cut(g: Graph) -> QuboModel:
    """``sum_(i,j) 2 x_i x_j - x_i - x_j``, i.e. minus the cut size."""
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    for i, j in g.edges:
        quadratic[(i, j)] = quadratic.get((i, j), 0.0) + 2.0
        linear[i] = linear.get(i, 0.0) - 1.0
        linear[j] = linear.get(j, 0.0) - 1.0
    return normalize(QuboModel(g.n, linear, quadratic, 0.0))


def decode_cut(g: Graph, a) -> tuple[set[int], set[int], int]:
    x = as_assignment(a, g.n)
    side_a = {i for i in range(g.n) if x[i]}
    side_b = set(range(g.n)) - side_a
    cut = sum(1 for i, j in g.edges if x[i] != x[j])
    return side_a, side_b, cut


# -- minimum vertex cover ---------------------------------------------------


def min_vertex_cover(g: Graph, penalty: float = 2.0) -> QuboModel:
    """``sum_i x_i + P sum_(i,j) (1 - x_i - x_j + x_i x_j)``.

    The energy equals the number of selected nodes plus ``P`` times the
    number of uncovered edges.
    """
    if not penalty > 0:
        raise ConfigError(f"penalty must be positive, got {penalty}")
    P = float(penalty)
    linear = {i: 1.0 for i in range(g.n)}
    quadratic: dict[tuple[int, int], float] = {}
    for i, j in g.edges:
        linear[i] -= P
        linear[j] -= P
        quadratic[(i, j)] = P
    return normalize(QuboModel(g.n, linear, quadratic, P * len(g.edges)))


def verify_cover(g: Graph, a) -> tuple[bool, list[tuple[int, int]]]:
    x = as_assignment(a, g.n)
    uncovered = [(i, j) for i, j in g.edges if not (x[i] or x[j])]
    return not uncovered, uncovered


# -- cancer pathways --------------------------------------------------------


def cancer_single(inst: PathwayInstance) -> QuboModel:
    """``x^T A x - alpha x^T D x`` for one pathway."""
    if inst.k != 1:
        raise ConfigError(f"cancer_single needs k == 1, got k={inst.k}; use cancer_multi")
    n = inst.n
    A, D = inst.adjacency, inst.degree
    linear = {i: -float(inst.alpha) * D[i, i] for i in range(n)}
    quadratic = {(i, j): 2.0 * A[i, j] for i in range(n) for j in range(i + 1, n)}
    return normalize(QuboModel(n, linear, quadratic, 0.0))


def pathway_matrix(inst: PathwayInstance) -> np.ndarray:
    """Dense ``Q_main + alpha_orth * Q_orth`` of size ``k*n``.

    ``Q_main = -I_k (x) (A + D)`` and ``Q_orth = (J_k - I_k) (x) I_n``.
    Variable ``(pathway p, gene i)`` sits at index ``p * n + i``.
    """
    k, n = inst.k, inst.n
    L = inst.adjacency + inst.degree
    q_main = -np.kron(np.eye(k), L)
    q_orth = np.kron(np.ones((k, k)) - np.eye(k), np.eye(n))
    return q_main + float(inst.alpha_orth) * q_orth


def cancer_multi(inst: PathwayInstance) -> QuboModel:
    """``X^T (Q_main + alpha Q_orth) X`` over ``k`` stacked pathways.

    Note that ``Q_main`` carries ``-A``, so co-mutated gene pairs lower the
    energy here while they raise it in :func:`cancer_single`.
    """
    if inst.k < 2:
        raise ConfigError(f"cancer_multi needs k >= 2, got k={inst.k}; use cancer_single")
    return QuboModel.from_matrix(pathway_matrix(inst))


def decode_pathways(inst: PathwayInstance, a) -> list[list[str]]:
    """Slice a ``k*n`` bitstring into ``k`` gene lists in stable index order."""
    x = as_assignment(a, inst.k * inst.n)
    n = inst.n
    return [
        [inst.labels[i] for i in range(n) if x[p * n + i]]
        for p in range(inst.k)
    ]


# -- order partitioning -----------------------------------------------------


def _add_affine_square(linear, quadratic, const, coeffs, weight):
    """Accumulate ``weight * (const + sum c_j x_j)**2`` into the term dicts.

    Returns the constant contribution.
    """
    n = len(coeffs)
    for j in range(n):
        cj = coeffs[j]
        if cj == 0:
            continue
        linear[j] = linear.get(j, 0.0) + weight * (cj * cj + 2.0 * const * cj)
        for k in range(j + 1, n):
            ck = coeffs[k]
            if ck:
                quadratic[(j, k)] = quadratic.get((j, k), 0.0) + weight * 2.0 * cj * ck
    return weight * const * const


def order_partitioning(inst: OrderPartitionInstance) -> QuboModel:
    """``a (T - 2 sum q_j x_j)**2 + b sum_i (sum_j p_ij (2 x_j - 1))**2``."""
    n = len(inst.values)
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    q = np.asarray(inst.values)
    constant = _add_affine_square(linear, quadratic, inst.total, -2.0 * q, float(inst.a))
    if inst.b:
        for row in inst.risks:
            constant += _add_affine_square(
                linear, quadratic, -float(row.sum()), 2.0 * row, float(inst.b)
            )
    return normalize(QuboModel(n, linear, quadratic, constant))


def order_partition_objective(inst: OrderPartitionInstance, a) -> float:
    """The unexpanded order-partitioning objective, evaluated directly."""
    x = np.asarray(as_assignment(a, len(inst.values)), dtype=np.float64)
    money = inst.total - 2.0 * float(np.dot(inst.values, x))
    spins = 2.0 * x - 1.0
    factors = inst.risks @ spins
    return inst.a * money**2 + inst.b * float(np.sum(factors**2))


def decode_order_partition(inst: OrderPartitionInstance, a):
    """``(set_a, set_b, money_gap, factor_gaps)``.

    Sets hold stock names when the instance has them, else indices.
    """
    x = as_assignment(a, len(inst.values))
    labels = inst.names if inst.names is not None else tuple(range(len(x)))
    set_a = [labels[j] for j in range(len(x)) if x[j]]
    set_b = [labels[j] for j in range(len(x)) if not x[j]]
    sel = np.asarray(x, dtype=bool)
    q = np.asarray(inst.values)
    money_gap = abs(float(q[sel].sum() - q[~sel].sum()))
    factor_gaps = [abs(float(row[sel].sum() - row[~sel].sum())) for row in inst.risks]
    return set_a, set_b, money_gap, factor_gaps
