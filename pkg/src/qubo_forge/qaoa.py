"""Statevector simulation of vanilla QAOA.

Circuit: Hadamard on every qubit, then ``p`` rounds of a cost layer
``exp(-i gamma H_C)`` and a mixer layer ``RX(2 beta)`` on every qubit.

Basis index ``z`` encodes variable ``i`` in bit ``i`` (variable 0 is the least
significant bit); measurement counts are keyed by bitstrings written with
variable 0 leftmost, matching :attr:`~qubo_forge.model.Sample.bitstring`.

The cost layer multiplies each amplitude by ``exp(-i gamma E(z))`` with
``E`` the Ising energy of the basis state, which equals the RZ/ZZ gate
network up to a global phase.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import CapacityError, ConfigError, DimensionError
from .model import IsingModel, QuboModel, Sample, basis_energies, evaluate, from_ising, to_ising

__all__ = [
    "MAX_QUBITS",
    "QaoaConfig",
    "QaoaResult",
    "zero_state",
    "hadamard_layer",
    "cost_layer",
    "mixer_layer",
    "run_circuit",
    "probabilities",
    "expectation_exact",
    "expectation_sampled",
    "sample",
    "optimize",
]

MAX_QUBITS = 20


def _num_qubits(state: np.ndarray) -> int:
    n = int(state.size).bit_length() - 1
    if state.ndim != 1 or (1 << n) != state.size:
        raise DimensionError(f"statevector length {state.size} is not a power of two")
    return n


def zero_state(n: int) -> np.ndarray:
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


def _apply_1q(state: np.ndarray, gate: np.ndarray, qubit: int) -> np.ndarray:
    n = _num_qubits(state)
    # axis 1 of the view is bit `qubit` of the basis index
    view = state.reshape(1 << (n - qubit - 1), 2, 1 << qubit)
    return np.einsum("ab,xbz->xaz", gate, view).reshape(-1)


_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


def hadamard_layer(state: np.ndarray) -> np.ndarray:
    out = np.asarray(state, dtype=np.complex128)
    for q in range(_num_qubits(out)):
        out = _apply_1q(out, _H, q)
    return out


def _cost_diagonal(model: IsingModel | QuboModel) -> np.ndarray:
    """Energy of every basis state; identical for a QUBO and its Ising twin."""
    if isinstance(model, IsingModel):
        model = from_ising(model)
    return basis_energies(model)


def cost_layer(state: np.ndarray, model: IsingModel, gamma: float, diagonal: np.ndarray | None = None) -> np.ndarray:
    """``amp(z) *= exp(-i gamma E(z))``.  Probabilities are untouched.

    ``diagonal`` may carry precomputed basis energies to skip the rebuild.
    """
    n = _num_qubits(state)
    if model.n != n:
        raise DimensionError(f"model has {model.n} variables, state has {n} qubits")
    if diagonal is None:
        diagonal = _cost_diagonal(model)
    return state * np.exp(-1j * gamma * diagonal)


def mixer_layer(state: np.ndarray, beta: float) -> np.ndarray:
    """``RX(2 beta) = exp(-i beta X)`` on every qubit."""
    c, s = np.cos(beta), np.sin(beta)
    rx = np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    out = np.asarray(state, dtype=np.complex128)
    for q in range(_num_qubits(out)):
        out = _apply_1q(out, rx, q)
    return out


def run_circuit(model: QuboModel, gammas, betas, diagonal: np.ndarray | None = None) -> np.ndarray:
    gammas = np.atleast_1d(np.asarray(gammas, dtype=np.float64))
    betas = np.atleast_1d(np.asarray(betas, dtype=np.float64))
    if len(gammas) != len(betas) or len(gammas) < 1:
        raise ConfigError("need one gamma and one beta per layer")
    if model.n > MAX_QUBITS:
        raise CapacityError(f"statevector simulation is capped at {MAX_QUBITS} qubits (got {model.n})")
    ising = to_ising(model)
    if diagonal is None:
        diagonal = _cost_diagonal(ising)
    state = hadamard_layer(zero_state(model.n))
    for gamma, beta in zip(gammas, betas):
        state = cost_layer(state, ising, gamma, diagonal)
        state = mixer_layer(state, beta)
    return state


def probabilities(state: np.ndarray) -> np.ndarray:
    return np.abs(state) ** 2


def expectation_exact(model: QuboModel, state: np.ndarray, diagonal: np.ndarray | None = None) -> float:
    """Infinite-shot limit: ``sum_z |amp(z)|**2 E(z)``."""
    if diagonal is None:
        diagonal = basis_energies(model)
    return float(probabilities(state) @ diagonal)


def _index_to_bitstring(z: int, n: int) -> str:
    return "".join(str((z >> i) & 1) for i in range(n))


def sample(state: np.ndarray, shots: int, seed=None) -> dict[str, int]:
    """Multinomial measurement counts, keyed by bitstring (variable 0 leftmost)."""
    if shots < 1:
        raise ConfigError(f"shots must be >= 1, got {shots}")
    n = _num_qubits(state)
    p = probabilities(state)
    p = p / p.sum()
    counts = np.random.default_rng(seed).multinomial(shots, p)
    hits = np.flatnonzero(counts)
    return dict(sorted((_index_to_bitstring(int(z), n), int(counts[z])) for z in hits))


def expectation_sampled(model: QuboModel, state: np.ndarray, shots: int = 1000, seed=None) -> float:
    """Shot average of the model energy over measured bitstrings."""
    counts = sample(state, shots, seed)
    return sum(evaluate(model, b) * c for b, c in counts.items()) / shots


@dataclass(frozen=True)
class QaoaConfig:
    layers: int = 1
    init_gamma: float = 0.5
    init_beta: float = 0.5
    shots: int = 1000
    maxiter: int = 200
    restarts: int = 3
    expectation: str = "exact"
    seed: int = 0

    def __post_init__(self):
        if self.layers < 1:
            raise ConfigError(f"layers must be >= 1, got {self.layers}")
        if self.shots < 1:
            raise ConfigError(f"shots must be >= 1, got {self.shots}")
        if self.maxiter < 1 or self.restarts < 1:
            raise ConfigError("maxiter and restarts must be >= 1")
        if self.expectation not in ("exact", "sampled"):
            raise ConfigError(f"expectation must be 'exact' or 'sampled', got {self.expectation!r}")


@dataclass(frozen=True)
class RestartResult:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    expectation: float
    counts: dict[str, int]
    best: Sample


@dataclass(frozen=True)
class QaoaResult:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    expectation: float
    counts: dict[str, int]
    best: Sample
    trace: tuple[float, ...]
    restarts: tuple[RestartResult, ...] = field(default=())
    config: QaoaConfig = field(default_factory=QaoaConfig)

    def to_dict(self) -> dict:
        return {
            "parameters": {"gammas": list(self.gammas), "betas": list(self.betas)},
            "expectation": self.expectation,
            "counts": dict(self.counts),
            "trace": list(self.trace),
            "best": self.best.to_dict(),
            "config": asdict(self.config),
        }


def _best_sampled(model: QuboModel, counts: dict[str, int]) -> Sample:
    scored = sorted((evaluate(model, b), b) for b in counts)
    energy, bits = scored[0]
    return Sample(tuple(int(ch) for ch in bits), energy, counts[bits], "qaoa")


def optimize(model: QuboModel, cfg: QaoaConfig | None = None) -> QaoaResult:
    """Tune ``(gammas, betas)`` with Nelder-Mead from the 0.5 start.

    Restart 0 starts at ``(init_gamma, init_beta)`` in every layer; later
    restarts add a uniform ``[-0.5, 0.5)`` offset drawn from
    ``SeedSequence([seed, r])``.  Each restart ends with one sampled run of
    the tuned circuit; the returned ``best`` is the lowest-energy bitstring
    measured by the restart with the lowest expectation.  The trace lists
    every objective value the optimizer requested, restarts concatenated.
    """
    cfg = cfg or QaoaConfig()
    if model.n > MAX_QUBITS:
        raise CapacityError(f"statevector simulation is capped at {MAX_QUBITS} qubits (got {model.n})")
    p = cfg.layers
    diagonal = basis_energies(model)
    trace: list[float] = []
    runs: list[RestartResult] = []

    for r in range(cfg.restarts):
        stream = np.random.default_rng(np.random.SeedSequence([cfg.seed, r]))
        x0 = np.concatenate([np.full(p, cfg.init_gamma), np.full(p, cfg.init_beta)])
        if r > 0:
            x0 = x0 + stream.uniform(-0.5, 0.5, 2 * p)
        calls = [0]

        def objective(params):
            state = run_circuit(model, params[:p], params[p:], diagonal)
            if cfg.expectation == "exact":
                value = expectation_exact(model, state, diagonal)
            else:
                shot_seed = np.random.SeedSequence([cfg.seed, r, calls[0]])
                value = expectation_sampled(model, state, cfg.shots, shot_seed)
            calls[0] += 1
            trace.append(value)
            return value

        res = minimize(objective, x0, method="Nelder-Mead", options={"maxiter": cfg.maxiter})
        params = res.x
        state = run_circuit(model, params[:p], params[p:], diagonal)
        counts = sample(state, cfg.shots, np.random.SeedSequence([cfg.seed, r, 1 << 30]))
        runs.append(
            RestartResult(
                tuple(float(g) for g in params[:p]),
                tuple(float(b) for b in params[p:]),
                float(res.fun),
                counts,
                _best_sampled(model, counts),
            )
        )

    chosen = min(runs, key=lambda run: run.expectation)
    return QaoaResult(
        chosen.gammas, chosen.betas, chosen.expectation, chosen.counts, chosen.best,
        tuple(trace), tuple(runs), cfg,
    )
