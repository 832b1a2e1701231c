"""Exhaustive enumeration: the ground-truth oracle for small models."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import CapacityError, ConfigError
from .model import QuboModel, SampleSet, basis_energies, normalize

__all__ = ["MAX_EXACT_VARIABLES", "MAX_SPECTRUM_VARIABLES", "solve_exact", "spectrum", "gray_energies"]

MAX_EXACT_VARIABLES = 26
MAX_SPECTRUM_VARIABLES = 16

# lanes per batch keeps the (steps x lanes) energy block near 64 MB at n = 26
_LANES_PER_BATCH = 512


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("QUBO_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def _split(n: int) -> tuple[int, int]:
    """Number of Gray-walked bits and of lane bits."""
    walk = min(n, (n + 1) // 2 + 1)
    return walk, n - walk


def gray_energies(model: QuboModel, lanes: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Energies along the Gray-code walk of the low bits, one column per lane.

    Variables ``0 .. w-1`` are walked in reflected Gray order; each remaining
    variable is a fixed lane bit.  Row ``t`` of the result is Gray state
    ``t ^ (t >> 1)``.  Each step flips one variable ``b`` and costs
    ``O(lanes)`` after an ``O(deg b)`` update of the walked-bit fields.

    Returns ``(energies, lanes)`` where ``lanes`` are the lane indices used.
    """
    q = normalize(model)
    n = q.n
    w, h = _split(n)
    if lanes is None:
        lanes = np.arange(1 << h, dtype=np.int64)
    lin = q.linear_vector
    W = q.coupling_matrix
    lane_bits = ((lanes[:, None] >> np.arange(h)) & 1).astype(np.float64)

    full = np.zeros((len(lanes), n))
    full[:, w:] = lane_bits
    start = q.energies(full)
    # field on each walked variable from the fixed lane bits
    lane_field = lane_bits @ W[w:, :w]

    nbrs = [np.flatnonzero(W[:w, b]) for b in range(w)]
    walk_field = np.zeros(w)
    x = np.zeros(w, dtype=np.int8)
    steps = 1 << w
    out = np.empty((steps, len(lanes)))
    out[0] = start
    cur = start.copy()
    for t in range(1, steps):
        b = (t & -t).bit_length() - 1
        sign = 1.0 - 2.0 * x[b]
        cur += sign * (lin[b] + walk_field[b] + lane_field[:, b])
        out[t] = cur
        x[b] ^= 1
        nb = nbrs[b]
        walk_field[nb] += sign * W[nb, b]
    return out, lanes


def _assignments(rows: np.ndarray, lanes: np.ndarray, n: int) -> np.ndarray:
    w, h = _split(n)
    gray = rows ^ (rows >> 1)
    bits = np.empty((len(rows), n), dtype=np.int8)
    bits[:, :w] = (gray[:, None] >> np.arange(w)) & 1
    bits[:, w:] = (lanes[:, None] >> np.arange(h)) & 1
    return bits


def _lex_key(bits: np.ndarray) -> np.ndarray:
    """Integer whose order matches the bitstring order (variable 0 most significant)."""
    n = bits.shape[1]
    weights = np.left_shift(np.int64(1), np.arange(n - 1, -1, -1, dtype=np.int64))
    return bits.astype(np.int64) @ weights


def _batch_candidates(q: QuboModel, lanes: np.ndarray, top_k: int) -> np.ndarray:
    energies, lanes = gray_energies(q, lanes)
    flat = energies.ravel()
    k = min(top_k, flat.size)
    kth = np.partition(flat, k - 1)[k - 1]
    tol = 1e-9 * max(1.0, abs(kth))
    idx = np.flatnonzero(flat <= kth + tol)
    rows, cols = np.divmod(idx, energies.shape[1])
    bits = _assignments(rows, lanes[cols], q.n)
    if len(idx) > k:
        order = np.lexsort((_lex_key(bits), flat[idx]))[: max(k, 4 * top_k)]
        bits = bits[order]
    return bits


def solve_exact(model: QuboModel, top_k: int = 1, workers: int | None = None) -> SampleSet:
    """The ``top_k`` lowest-energy assignments over all ``2**n``.

    Ties are ordered by bitstring.  The lane space may be split over
    ``workers`` threads (default: ``QUBO_FORGE_THREADS`` or 1); the merge is
    order-independent, so the result does not depend on the thread count.
    """
    if top_k < 1:
        raise ConfigError(f"top_k must be >= 1, got {top_k}")
    if model.n > MAX_EXACT_VARIABLES:
        raise CapacityError(
            f"exhaustive search is capped at n={MAX_EXACT_VARIABLES} (got n={model.n}); "
            "use simulated annealing instead"
        )
    q = normalize(model)
    top_k = min(top_k, 1 << q.n)
    _, h = _split(q.n)
    all_lanes = np.arange(1 << h, dtype=np.int64)
    batches = [all_lanes[i : i + _LANES_PER_BATCH] for i in range(0, len(all_lanes), _LANES_PER_BATCH)]
    workers = workers or thread_count()
    if workers > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda lanes: _batch_candidates(q, lanes, top_k), batches))
    else:
        parts = [_batch_candidates(q, lanes, top_k) for lanes in batches]
    candidates = np.concatenate(parts)
    result = SampleSet.build(
        q, candidates, source="exact", metadata={"solver": "exact", "top_k": top_k}
    )
    return SampleSet(result.samples[:top_k], result.fingerprint, result.metadata)


def spectrum(model: QuboModel) -> np.ndarray:
    """All ``2**n`` energies by assignment index (variable 0 = least significant bit)."""
    if model.n > MAX_SPECTRUM_VARIABLES:
        raise CapacityError(f"spectrum is capped at n={MAX_SPECTRUM_VARIABLES} (got n={model.n})")
    return basis_energies(normalize(model))
