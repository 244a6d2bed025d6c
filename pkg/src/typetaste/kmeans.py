"""Lloyd's k-means with three initialization regimes.

``kmeans++`` seeds by distance-squared-weighted sampling, ``random`` picks k
distinct rows, and the reduced regime projects the data with PCA first and
clusters in that space.  Fits restart from several seeds and keep the lowest
inertia.  All randomness flows through one u64 seed, so identical inputs give
identical results.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import pca
from .errors import DimensionMismatch, Error, TooFewPoints

INIT_KMEANSPP = "kmeans++"
INIT_RANDOM = "random"
METHOD_PCA = "pca-based"

DEFAULT_MAX_ITERS = 300
DEFAULT_TOL = 1e-6
DEFAULT_RESTARTS = 10


@dataclass(frozen=True)
class KmeansConfig:
    """Fit parameters.  ``reduce_first`` switches on the PCA regime with that
    many dimensions; ``init`` then seeds inside the reduced space."""

    k: int
    init: str = INIT_KMEANSPP
    reduce_first: int | None = None
    max_iters: int = DEFAULT_MAX_ITERS
    tol: float = DEFAULT_TOL
    seed: int = 0
    restarts: int = DEFAULT_RESTARTS

    def __post_init__(self) -> None:
        if self.k < 1:
            raise Error(f"k must be at least 1, got {self.k}")
        if self.init not in (INIT_KMEANSPP, INIT_RANDOM):
            raise Error(
                f"init must be {INIT_KMEANSPP!r} or {INIT_RANDOM!r}, got {self.init!r}"
            )
        if self.reduce_first is not None and self.reduce_first < 1:
            raise Error(f"reduce_first must be at least 1, got {self.reduce_first}")
        if self.max_iters < 1:
            raise Error(f"max_iters must be at least 1, got {self.max_iters}")
        if not self.tol >= 0:
            raise Error(f"tol must be non-negative, got {self.tol}")
        if not 0 <= int(self.seed) <= 2**64 - 1:
            raise Error(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.restarts < 1:
            raise Error(f"restarts must be at least 1, got {self.restarts}")


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    """One fitted clustering: per-row assignments, the centroids they are
    nearest to, total within-cluster squared distance, and bookkeeping."""

    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    iterations: int
    elapsed: float
    method: str

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def _as_matrix(data: np.ndarray) -> np.ndarray:
    X = np.asarray(data, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatch(f"data must be 2-D, got shape {X.shape}")
    return X


def _sq_distances(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """(n, k) squared Euclidean distances, clipped at zero."""
    d2 = (
        (X * X).sum(axis=1)[:, None]
        - 2.0 * (X @ centroids.T)
        + (centroids * centroids).sum(axis=1)[None, :]
    )
    return np.clip(d2, 0.0, None)


def init_kmeanspp(data: np.ndarray, k: int, seed: int) -> np.ndarray:
    """Distance-squared-weighted seeding: the first centroid is a uniform row,
    each later one is drawn with probability proportional to the squared
    distance to the nearest centroid chosen so far.

    When every remaining distance is zero (duplicated points), falls back to a
    uniform draw among not-yet-chosen rows, so k distinct indices always come
    back while distinct rows exist.
    """
    X = _as_matrix(data)
    n = X.shape[0]
    if k > n:
        raise TooFewPoints(f"cannot seed {k} centroids from {n} points")
    rng = np.random.default_rng(seed)
    chosen = [int(rng.integers(n))]
    d2 = ((X - X[chosen[0]]) ** 2).sum(axis=1)
    while len(chosen) < k:
        total = float(d2.sum())
        if total > 0.0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            remaining = np.setdiff1d(np.arange(n), np.asarray(chosen))
            idx = int(rng.choice(remaining))
        chosen.append(idx)
        d2 = np.minimum(d2, ((X - X[idx]) ** 2).sum(axis=1))
    return X[np.asarray(chosen)].copy()


def init_random(data: np.ndarray, k: int, seed: int) -> np.ndarray:
    """k distinct data rows drawn uniformly without replacement."""
    X = _as_matrix(data)
    n = X.shape[0]
    if k > n:
        raise TooFewPoints(f"cannot seed {k} centroids from {n} points")
    rng = np.random.default_rng(seed)
    idx = rng.choice(n, size=k, replace=False)
    return X[idx].copy()


def _repair_empty(
    X: np.ndarray, centroids: np.ndarray, labels: np.ndarray, d2min: np.ndarray
) -> None:
    """Give every empty cluster the point currently farthest from its centroid.

    The seized point becomes the new centroid (in place).  Repeats until no
    repairable empties remain; a cluster can stay empty only when the data has
    fewer distinct points than clusters.
    """
    k = centroids.shape[0]
    counts = np.bincount(labels, minlength=k)
    seizable = d2min.copy()
    while True:
        empties = np.flatnonzero(counts == 0)
        if empties.size == 0:
            return
        j = int(empties[0])
        far = int(np.argmax(seizable))
        if not seizable[far] > 0.0:
            return  # all points coincide with centroids; nothing to split off
        donor = labels[far]
        counts[donor] -= 1
        labels[far] = j
        counts[j] = 1
        centroids[j] = X[far]
        d2min[far] = 0.0
        seizable[far] = -np.inf


def _mean_update(
    X: np.ndarray, labels: np.ndarray, k: int, fallback: np.ndarray
) -> np.ndarray:
    sums = np.zeros((k, X.shape[1]), dtype=np.float64)
    np.add.at(sums, labels, X)
    counts = np.bincount(labels, minlength=k)
    out = fallback.copy()
    filled = counts > 0
    out[filled] = sums[filled] / counts[filled, None]
    return out


def lloyd(data: np.ndarray, init_centroids: np.ndarray, config: KmeansConfig) -> ClusteringResult:
    """Alternate assignment and mean updates from the given starting centroids.

    Stops when the largest centroid movement drops below ``config.tol`` or
    after ``config.max_iters`` rounds.  The returned assignments are computed
    against the returned centroids, so every point is labeled with its true
    nearest centroid, and the within-cluster squared-distance total never
    increases across iterations.
    """
    X = _as_matrix(data)
    start = time.perf_counter()
    centroids = np.array(init_centroids, dtype=np.float64, copy=True)
    if centroids.ndim != 2 or centroids.shape[1] != X.shape[1]:
        raise DimensionMismatch(
            f"centroids of shape {centroids.shape} do not match data {X.shape}"
        )
    k = centroids.shape[0]
    previous_inertia = np.inf
    iterations = 0
    for _ in range(config.max_iters):
        d2 = _sq_distances(X, centroids)
        labels = np.argmin(d2, axis=1)
        d2min = np.take_along_axis(d2, labels[:, None], axis=1).ravel()
        _repair_empty(X, centroids, labels, d2min)
        inertia = float(d2min.sum())
        assert inertia <= previous_inertia * (1 + 1e-12) + 1e-9
        previous_inertia = inertia
        updated = _mean_update(X, labels, k, fallback=centroids)
        movement = float(np.sqrt(((updated - centroids) ** 2).sum(axis=1)).max())
        centroids = updated
        iterations += 1
        if movement < config.tol:
            break
    # Final pass: label against the final centroids so the result is coherent.
    d2 = _sq_distances(X, centroids)
    labels = np.argmin(d2, axis=1)
    inertia = float(np.take_along_axis(d2, labels[:, None], axis=1).sum())
    return ClusteringResult(
        assignments=labels,
        centroids=centroids,
        inertia=inertia,
        iterations=iterations,
        elapsed=time.perf_counter() - start,
        method=config.init,
    )


def _seed_centroids(X: np.ndarray, config: KmeansConfig, seed: int) -> np.ndarray:
    if config.init == INIT_RANDOM:
        return init_random(X, config.k, seed)
    return init_kmeanspp(X, config.k, seed)


def fit(data: np.ndarray, config: KmeansConfig) -> ClusteringResult:
    """Cluster ``data`` per ``config``: optional PCA reduction, seeded restarts,
    keep the lowest-inertia run.

    Restart seeds are spawned from ``config.seed``, so the whole fit is a pure
    function of (data, config).  The result's method tag is the init name, or
    ``pca-based`` when the fit ran in a reduced space; centroids and inertia
    then live in that reduced space.
    """
    X = _as_matrix(data)
    start = time.perf_counter()
    method = config.init
    work = X
    if config.reduce_first is not None:
        model = pca.fit_pca(X, config.reduce_first)
        work = pca.project(model, X)
        method = METHOD_PCA
    if config.k > work.shape[0]:
        raise TooFewPoints(f"cannot fit {config.k} clusters to {work.shape[0]} points")
    seeds = np.random.SeedSequence(config.seed).generate_state(config.restarts, np.uint64)
    best: ClusteringResult | None = None
    for restart_seed in seeds:
        centroids = _seed_centroids(work, config, int(restart_seed))
        result = lloyd(work, centroids, config)
        if best is None or result.inertia < best.inertia:
            best = result
    return ClusteringResult(
        assignments=best.assignments,
        centroids=best.centroids,
        inertia=best.inertia,
        iterations=best.iterations,
        elapsed=time.perf_counter() - start,
        method=method,
    )


def result_to_json(result: ClusteringResult) -> str:
    """JSON document with method, k, inertia, iterations, elapsed seconds, and
    the per-row assignment list."""
    doc = {
        "method": result.method,
        "k": result.k,
        "inertia": result.inertia,
        "iterations": result.iterations,
        "elapsed_seconds": result.elapsed,
        "assignments": [int(a) for a in result.assignments],
    }
    return json.dumps(doc, indent=2) + "\n"


def assignments_to_csv(result: ClusteringResult, respondent_ids: Sequence[str]) -> str:
    """CSV text pairing each respondent id with its cluster index."""
    if len(respondent_ids) != len(result.assignments):
        raise DimensionMismatch(
            f"{len(respondent_ids)} ids for {len(result.assignments)} assignments"
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["respondent_id", "cluster"])
    for rid, label in zip(respondent_ids, result.assignments):
        writer.writerow([rid, int(label)])
    return buf.getvalue()


def write_assignments_csv(
    path: str | Path, result: ClusteringResult, respondent_ids: Sequence[str]
) -> None:
    Path(path).write_text(assignments_to_csv(result, respondent_ids), encoding="utf-8")
