"""Metropolis simulated annealing over binary assignments.

Random numbers come from numpy's PCG64 bit generator.  Restart ``r`` of a run
with master seed ``s`` draws from ``PCG64(SeedSequence([s, r]))``: first
``n`` uniforms for the initial assignment (bit = uniform < 0.5), then ``n``
uniforms per sweep for the acceptance tests.  PCG64 and SeedSequence are
specified bit-for-bit, so the stream is the same on every platform.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError
from .model import QuboModel, SampleSet, lowest, normalize

__all__ = ["AnnealConfig", "solve_sa", "auto_temperature", "flip_delta", "lowest"]

# sweeps of random draws generated at once per restart
_CHUNK = 64


@dataclass(frozen=True)
class AnnealConfig:
    """Annealing schedule.  ``t_initial=None`` selects :func:`auto_temperature`."""

    sweeps: int = 1000
    restarts: int = 10
    t_initial: float | None = None
    t_final: float = 0.1
    schedule: str = "geometric"
    seed: int = 0

    def __post_init__(self):
        if self.sweeps < 1:
            raise ConfigError(f"sweeps must be >= 1, got {self.sweeps}")
        if self.restarts < 1:
            raise ConfigError(f"restarts must be >= 1, got {self.restarts}")
        if not self.t_final > 0:
            raise ConfigError(f"t_final must be positive, got {self.t_final}")
        if self.t_initial is not None and not self.t_initial >= self.t_final:
            raise ConfigError(
                f"t_initial ({self.t_initial}) must be >= t_final ({self.t_final})"
            )
        if self.schedule != "geometric":
            raise ConfigError(f"unknown schedule {self.schedule!r}; only 'geometric' is supported")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")


def auto_temperature(model: QuboModel) -> float:
    """Largest possible single-flip ``|dE|``: ``max_i |h_i| + sum_j |W_ij|``.

    An all-zero model has no scale and gets 1.0.
    """
    q = normalize(model)
    bound = np.abs(q.linear_vector) + np.abs(q.coupling_matrix).sum(axis=1)
    t0 = float(bound.max())
    return t0 if t0 > 0 else 1.0


def flip_delta(model: QuboModel, x, i: int) -> float:
    """Energy change from flipping bit ``i`` of ``x``, via the local field."""
    q = normalize(model)
    x = np.asarray(x, dtype=np.float64)
    field = q.linear_vector[i] + q.coupling_matrix[i] @ x
    return float((1.0 - 2.0 * x[i]) * field)


def solve_sa(model: QuboModel, cfg: AnnealConfig | None = None) -> SampleSet:
    """Best assignment of each restart, merged into a sorted :class:`SampleSet`.

    Every sweep visits variables ``0 .. n-1`` in order and accepts a flip with
    probability ``min(1, exp(-dE / T))``; ``T`` is multiplied by
    ``(t_final / t_initial) ** (1 / sweeps)`` after each sweep.  Restarts are
    advanced together as rows of one array, each with its own stream.
    """
    cfg = cfg or AnnealConfig()
    q = normalize(model)
    n, R = q.n, cfg.restarts
    t0 = cfg.t_initial if cfg.t_initial is not None else max(auto_temperature(q), cfg.t_final)
    cooling = (cfg.t_final / t0) ** (1.0 / cfg.sweeps)

    lin = q.linear_vector
    W = q.coupling_matrix
    rngs = [np.random.Generator(np.random.PCG64(np.random.SeedSequence([cfg.seed, r]))) for r in range(R)]

    x = np.array([rng.random(n) < 0.5 for rng in rngs], dtype=np.float64)
    energy = q.energies(x)
    # field[r, i] = lin_i + sum_j W_ij x_rj; flipping i changes E by (1 - 2 x_ri) * field[r, i]
    field = lin + x @ W
    best_x = x.copy()
    best_e = energy.copy()

    temp = t0
    done = 0
    while done < cfg.sweeps:
        block = min(_CHUNK, cfg.sweeps - done)
        draws = np.stack([rng.random((block, n)) for rng in rngs], axis=1)
        for s in range(block):
            u = draws[s]
            for i in range(n):
                delta = (1.0 - 2.0 * x[:, i]) * field[:, i]
                accept = (delta <= 0) | (u[:, i] < np.exp(-np.maximum(delta, 0.0) / temp))
                if accept.any():
                    step = np.where(accept, 1.0 - 2.0 * x[:, i], 0.0)
                    x[:, i] += step
                    energy += np.where(accept, delta, 0.0)
                    field += step[:, None] * W[i]
                    improved = energy < best_e
                    if improved.any():
                        best_e[improved] = energy[improved]
                        best_x[improved] = x[improved]
            temp *= cooling
        done += block

    meta = {"solver": "sa", "config": asdict(cfg), "t_initial_used": t0}
    return SampleSet.build(q, best_x.astype(np.int8), source="sa", metadata=meta)
