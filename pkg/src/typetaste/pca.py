"""Principal component analysis over mean-centered rating matrices.

Components come from an eigendecomposition of the sample covariance matrix
(``n - 1`` denominator).  Rows of ``components`` are orthonormal, ordered by
descending explained variance, and sign-fixed so the entry of largest
magnitude in each component is positive, which makes fits reproducible across
platforms.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DegenerateInput, DimensionMismatch


@dataclass(frozen=True, eq=False)
class PcaModel:
    """A fitted projection: feature means, component rows, and per-component
    explained variance."""

    mean: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray

    @property
    def n_components(self) -> int:
        return self.components.shape[0]

    @property
    def n_features(self) -> int:
        return self.components.shape[1]


def fit_pca(data: np.ndarray, n_components: int) -> PcaModel:
    """Fit a PCA with ``n_components`` directions on ``data`` (rows are samples).

    Requires at least two samples and ``1 <= n_components <= min(n_samples,
    n_features)``.  Covariance eigenvalues are clipped at zero, so collinear
    data reports exactly zero variance for the flat directions.
    """
    X = np.asarray(data, dtype=np.float64)
    if X.ndim != 2:
        raise DegenerateInput(f"data must be 2-D, got shape {X.shape}")
    n, d = X.shape
    if n < 2:
        raise DegenerateInput(f"need at least 2 samples to fit, got {n}")
    k = int(n_components)
    if not 1 <= k <= min(n, d):
        raise DegenerateInput(
            f"n_components must be in 1..min(n_samples, n_features)="
            f"{min(n, d)}, got {k}"
        )
    mean = X.mean(axis=0)
    centered = X - mean
    cov = (centered.T @ centered) / (n - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    order = np.argsort(eigenvalues)[::-1][:k]
    variance = np.clip(eigenvalues[order], 0.0, None)
    components = eigenvectors[:, order].T.copy()
    # Fix each component's sign so its largest-magnitude entry is positive.
    for row in components:
        pivot = np.argmax(np.abs(row))
        if row[pivot] < 0:
            row *= -1.0
    return PcaModel(mean=mean, components=components, explained_variance=variance)


def project(model: PcaModel, data: np.ndarray) -> np.ndarray:
    """Map rows of ``data`` into the fitted component space.

    A single 1-D sample comes back as a 1-D coordinate vector.
    """
    X = np.asarray(data, dtype=np.float64)
    single = X.ndim == 1
    if single:
        X = X[np.newaxis, :]
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise DimensionMismatch(
            f"expected (..., {model.n_features}) data, got shape {np.shape(data)}"
        )
    out = (X - model.mean) @ model.components.T
    return out[0] if single else out


def reconstruct(model: PcaModel, projected: np.ndarray) -> np.ndarray:
    """Map component-space coordinates back into feature space.

    Lossless exactly when the model retains all nonzero-variance directions.
    """
    Z = np.asarray(projected, dtype=np.float64)
    single = Z.ndim == 1
    if single:
        Z = Z[np.newaxis, :]
    if Z.ndim != 2 or Z.shape[1] != model.n_components:
        raise DimensionMismatch(
            f"expected (..., {model.n_components}) coordinates, got shape "
            f"{np.shape(projected)}"
        )
    out = Z @ model.components + model.mean
    return out[0] if single else out


def projection_to_csv(
    ids: Sequence[str], labels: Sequence[str], coords: np.ndarray
) -> str:
    """CSV text with ``respondent_id,mbti,pc1..pcK`` rows for fitted coordinates."""
    Z = np.asarray(coords, dtype=np.float64)
    if Z.ndim != 2 or len(ids) != len(Z) or len(labels) != len(Z):
        raise DimensionMismatch("ids, labels, and coordinate rows must align")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["respondent_id", "mbti", *(f"pc{i + 1}" for i in range(Z.shape[1]))])
    for rid, label, row in zip(ids, labels, Z):
        writer.writerow([rid, str(label), *(repr(float(v)) for v in row)])
    return buf.getvalue()


def write_projection_csv(
    path: str | Path, ids: Sequence[str], labels: Sequence[str], coords: np.ndarray
) -> None:
    Path(path).write_text(projection_to_csv(ids, labels, coords), encoding="utf-8")
