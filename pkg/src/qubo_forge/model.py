"""QUBO and Ising model containers, evaluation and exact conversion.

A :class:`QuboModel` stores

    E(x) = sum_{i<j} Q_ij x_i x_j + sum_i Q_ii x_i + c

with the quadratic part kept strictly upper triangular.  The Ising twin uses
the positive-sign convention

    E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i + offset,   s_i = 2 x_i - 1

so that converting in either direction never flips signs.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BoundsError, DimensionError, EmptyError, InstanceError

__all__ = [
    "QuboModel",
    "IsingModel",
    "Sample",
    "SampleSet",
    "normalize",
    "evaluate",
    "to_ising",
    "from_ising",
    "to_spins",
    "to_bits",
    "as_assignment",
    "bitstring",
    "basis_energies",
    "lowest",
]


def _check_finite(value: float, what: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InstanceError(f"{what} is not finite: {value!r}")
    return value


@dataclass(frozen=True)
class QuboModel:
    """Binary quadratic model over ``n`` variables.

    ``linear`` maps ``i -> Q_ii`` and ``quadratic`` maps ``(i, j) -> Q_ij``.
    Instances built directly may hold lower-triangle, diagonal or zero
    entries; :func:`normalize` produces the canonical form (``i < j``,
    diagonal folded into ``linear``, zeros dropped).  Treat the dicts as
    read-only.
    """

    n: int
    linear: Mapping[int, float] = field(default_factory=dict)
    quadratic: Mapping[tuple[int, int], float] = field(default_factory=dict)
    constant: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DimensionError(f"model needs at least one variable, got n={self.n!r}")
        for i, v in self.linear.items():
            if not 0 <= i < self.n:
                raise BoundsError(f"linear index {i} out of range for n={self.n}")
            _check_finite(v, f"linear[{i}]")
        for (i, j), v in self.quadratic.items():
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise BoundsError(f"quadratic index ({i}, {j}) out of range for n={self.n}")
            _check_finite(v, f"quadratic[{i}, {j}]")
        _check_finite(self.constant, "constant")

    @classmethod
    def from_terms(
        cls, n: int, terms: Iterable[tuple[int, int, float]], constant: float = 0.0
    ) -> "QuboModel":
        """Build a normalized model from ``(i, j, coeff)`` triples.

        ``i == j`` triples are linear terms; repeated pairs are added.
        """
        linear: dict[int, float] = {}
        quadratic: dict[tuple[int, int], float] = {}
        for i, j, coeff in terms:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise BoundsError(f"term index ({i}, {j}) out of range for n={n}")
            if i == j:
                linear[i] = linear.get(i, 0.0) + float(coeff)
            else:
                key = (min(i, j), max(i, j))
                quadratic[key] = quadratic.get(key, 0.0) + float(coeff)
        return normalize(cls(n, linear, quadratic, float(constant)))

    @classmethod
    def from_matrix(cls, matrix, constant: float = 0.0) -> "QuboModel":
        """Fold a dense square matrix ``M`` so that ``E(x) = x^T M x + c``."""
        m = np.asarray(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {m.shape}")
        n = m.shape[0]
        linear = {i: float(m[i, i]) for i in range(n)}
        quadratic = {
            (i, j): float(m[i, j] + m[j, i]) for i in range(n) for j in range(i + 1, n)
        }
        return normalize(cls(n, linear, quadratic, float(constant)))

    def evaluate(self, assignment) -> float:
        return evaluate(self, assignment)

    def shifted(self, k: float) -> "QuboModel":
        """Same model with ``k`` added to the constant."""
        return QuboModel(self.n, dict(self.linear), dict(self.quadratic), self.constant + k)

    @property
    def is_normalized(self) -> bool:
        return all(v != 0.0 for v in self.linear.values()) and all(
            i < j and v != 0.0 for (i, j), v in self.quadratic.items()
        )

    @cached_property
    def linear_vector(self) -> np.ndarray:
        vec = np.zeros(self.n)
        for i, v in self.linear.items():
            vec[i] += v
        for (i, j), v in self.quadratic.items():
            if i == j:
                vec[i] += v
        return vec

    @cached_property
    def coupling_matrix(self) -> np.ndarray:
        """Symmetric, zero-diagonal matrix ``W`` with ``W_ij = W_ji = Q_ij``."""
        w = np.zeros((self.n, self.n))
        for (i, j), v in self.quadratic.items():
            if i != j:
                w[i, j] += v
                w[j, i] += v
        return w

    def energies(self, assignments) -> np.ndarray:
        """Vectorized energies for a ``(m, n)`` array of 0/1 rows."""
        x = np.asarray(assignments, dtype=np.float64)
        if x.ndim == 1:
            x = x[None, :]
        if x.shape[1] != self.n:
            raise DimensionError(f"assignments have {x.shape[1]} columns, model has n={self.n}")
        pair = 0.5 * np.einsum("ki,ij,kj->k", x, self.coupling_matrix, x)
        return pair + x @ self.linear_vector + self.constant

    def to_dict(self) -> dict:
        """Canonical JSON-ready mapping: ``{"n", "constant", "terms"}``."""
        q = normalize(self)
        terms = [[i, i, v] for i, v in sorted(q.linear.items())]
        terms += [[i, j, v] for (i, j), v in sorted(q.quadratic.items())]
        terms.sort(key=lambda t: (t[0], t[1]))
        return {"n": q.n, "constant": q.constant, "terms": terms}

    @cached_property
    def fingerprint(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


def normalize(model: QuboModel) -> QuboModel:
    """Canonical form: ``i < j`` keys, diagonal folded to linear, zeros dropped.

    Evaluation is unchanged for every assignment.
    """
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    for i, v in model.linear.items():
        linear[i] = linear.get(i, 0.0) + v
    for (i, j), v in model.quadratic.items():
        if i == j:
            linear[i] = linear.get(i, 0.0) + v
        else:
            key = (i, j) if i < j else (j, i)
            quadratic[key] = quadratic.get(key, 0.0) + v
    linear = {i: v for i, v in sorted(linear.items()) if v != 0.0}
    quadratic = {k: v for k, v in sorted(quadratic.items()) if v != 0.0}
    return QuboModel(model.n, linear, quadratic, float(model.constant))


def as_assignment(a, n: int | None = None) -> tuple[int, ...]:
    """Coerce bits (sequence, array or ``"0101"`` string) to a tuple of ints."""
    if isinstance(a, str):
        bits = tuple(int(ch) for ch in a)
    else:
        bits = tuple(int(b) for b in np.asarray(a).ravel())
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"assignment must be binary, got {a!r}")
    if n is not None and len(bits) != n:
        raise DimensionError(f"assignment has length {len(bits)}, model has n={n}")
    return bits


def bitstring(a) -> str:
    """Render an assignment with variable 0 leftmost."""
    return "".join(str(b) for b in as_assignment(a))


def evaluate(model: QuboModel, a) -> float:
    """Energy of a single assignment, summed quadratic-then-linear in index order."""
    x = as_assignment(a, model.n)
    total = 0.0
    for (i, j), v in sorted(model.quadratic.items()):
        if x[i] and x[j]:
            total += v
    for i, v in sorted(model.linear.items()):
        if x[i]:
            total += v
    return total + model.constant


def to_spins(a) -> np.ndarray:
    return 2 * np.asarray(as_assignment(a), dtype=np.int64) - 1


def to_bits(spins) -> tuple[int, ...]:
    s = np.asarray(spins).ravel()
    if not np.all(np.isin(s, (-1, 1))):
        raise ValueError("spins must be +/-1")
    return tuple(int(v) for v in (s + 1) // 2)


@dataclass(frozen=True)
class IsingModel:
    """Spin model ``E(s) = sum J_ij s_i s_j + sum h_i s_i + offset``."""

    n: int
    h: Mapping[int, float] = field(default_factory=dict)
    J: Mapping[tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DimensionError(f"model needs at least one spin, got n={self.n!r}")
        for i, v in self.h.items():
            if not 0 <= i < self.n:
                raise BoundsError(f"field index {i} out of range for n={self.n}")
            _check_finite(v, f"h[{i}]")
        for (i, j), v in self.J.items():
            if not 0 <= i < j < self.n:
                raise BoundsError(f"coupling index ({i}, {j}) must satisfy 0 <= i < j < n")
            _check_finite(v, f"J[{i}, {j}]")
        _check_finite(self.offset, "offset")

    @classmethod
    def from_paper_convention(cls, n, h, J, offset=0.0) -> "IsingModel":
        """Import ``H = -sum J s s - sum h s`` by negating fields and couplings."""
        return cls(
            n,
            {i: -float(v) for i, v in h.items()},
            {k: -float(v) for k, v in J.items()},
            float(offset),
        )

    def energy(self, spins) -> float:
        s = np.asarray(spins).ravel()
        if len(s) != self.n:
            raise DimensionError(f"spin vector has length {len(s)}, model has n={self.n}")
        total = 0.0
        for (i, j), v in sorted(self.J.items()):
            total += v * s[i] * s[j]
        for i, v in sorted(self.h.items()):
            total += v * s[i]
        return float(total + self.offset)


def to_ising(q: QuboModel) -> IsingModel:
    """Substitute ``x = (s + 1) / 2`` term by term."""
    q = normalize(q)
    h: dict[int, float] = {}
    J: dict[tuple[int, int], float] = {}
    offset = q.constant
    for (i, j), v in q.quadratic.items():
        quarter = v / 4.0
        J[(i, j)] = quarter
        h[i] = h.get(i, 0.0) + quarter
        h[j] = h.get(j, 0.0) + quarter
        offset += quarter
    for i, v in q.linear.items():
        h[i] = h.get(i, 0.0) + v / 2.0
        offset += v / 2.0
    h = {i: v for i, v in sorted(h.items()) if v != 0.0}
    return IsingModel(q.n, h, J, offset)


def from_ising(m: IsingModel) -> QuboModel:
    """Substitute ``s = 2x - 1`` term by term; inverse of :func:`to_ising`."""
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    constant = m.offset
    for (i, j), v in m.J.items():
        quadratic[(i, j)] = 4.0 * v
        linear[i] = linear.get(i, 0.0) - 2.0 * v
        linear[j] = linear.get(j, 0.0) - 2.0 * v
        constant += v
    for i, v in m.h.items():
        linear[i] = linear.get(i, 0.0) + 2.0 * v
        constant -= v
    return normalize(QuboModel(m.n, linear, quadratic, constant))


def basis_energies(model: QuboModel) -> np.ndarray:
    """Energy of every basis index ``z`` in ``0 .. 2**n - 1``.

    Bit ``i`` of ``z`` is variable ``i`` (variable 0 is the least significant
    bit), the same ordering the statevector simulator uses.
    """
    n = model.n
    z = np.arange(1 << n, dtype=np.int64)
    bits = [((z >> i) & 1).astype(np.float64) for i in range(n)]
    out = np.full(1 << n, float(model.constant))
    for i, v in model.linear.items():
        out += v * bits[i]
    for (i, j), v in model.quadratic.items():
        out += v * (bits[i] * bits[j]) if i != j else v * bits[i]
    return out


@dataclass(frozen=True)
class Sample:
    assignment: tuple[int, ...]
    energy: float
    multiplicity: int = 1
    source: str = ""

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.assignment))

    def to_dict(self) -> dict:
        return {
            "bitstring": self.bitstring,
            "energy": self.energy,
            "multiplicity": self.multiplicity,
            "source": self.source,
        }


@dataclass(frozen=True)
class SampleSet:
    """Energy-sorted, de-duplicated solver output.

    Ties are broken by the lexicographically smallest bitstring, so
    ``samples[0]`` is always the deterministic "lowest" answer.
    """

    samples: tuple[Sample, ...]
    fingerprint: str = ""
    metadata: Mapping = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        model: QuboModel,
        assignments: Iterable,
        source: str = "",
        metadata: Mapping | None = None,
        multiplicities: Sequence[int] | None = None,
    ) -> "SampleSet":
        """Merge duplicate assignments and recompute energies with :func:`evaluate`."""
        counts: dict[tuple[int, ...], int] = {}
        assignments = list(assignments)
        if multiplicities is None:
            multiplicities = [1] * len(assignments)
        for a, m in zip(assignments, multiplicities, strict=True):
            bits = as_assignment(a, model.n)
            counts[bits] = counts.get(bits, 0) + int(m)
        samples = [Sample(bits, evaluate(model, bits), m, source) for bits, m in counts.items()]
        samples.sort(key=lambda s: (s.energy, s.bitstring))
        return cls(tuple(samples), model.fingerprint, dict(metadata or {}))

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __getitem__(self, k):
        return self.samples[k]

    @property
    def first(self) -> Sample:
        return lowest(self)

    def to_dict(self) -> dict:
        return {
            "fingerprint": self.fingerprint,
            "metadata": dict(self.metadata),
            "samples": [s.to_dict() for s in self.samples],
        }


def lowest(s: SampleSet) -> Sample:
    """The lowest-energy sample (first after the deterministic sort)."""
    if not len(s):
        raise EmptyError("sample set is empty")
    return s.samples[0]
