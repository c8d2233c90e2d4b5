"""Linear readout: pseudoinverse training, prediction, scoring, voting."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "WeightMatrix",
    "one_hot_targets",
    "train",
    "predict",
    "vote",
    "squared_correlation",
    "save_weights",
    "load_weights",
]

_SV_CUTOFF = 1e-12  # relative singular-value cutoff for the pseudoinverse


@dataclass
class WeightMatrix:
    """Trained readout weights with the metadata needed to reproduce them."""

    W: np.ndarray
    ridge: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def shape(self):
        return self.W.shape


def one_hot_targets(labels, n_classes: int = 10) -> np.ndarray:
    """Stack one-hot columns (1 at the class index, 0 elsewhere)."""
    labels = np.asarray(labels, dtype=int)
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise ValueError("label outside [0, n_classes)")
    out = np.zeros((n_classes, labels.size))
    out[labels, np.arange(labels.size)] = 1.0
    return out


def train(V: np.ndarray, Y: np.ndarray, ridge: float = 0.0,
          meta: dict | None = None) -> WeightMatrix:
    """Fit W so that W @ V approximates Y in least squares.

    ``V`` is features x samples, ``Y`` outputs x samples.  With ``ridge == 0``
    this is the Moore-Penrose solution W = Y V^+ (SVD, singular values below
    1e-12 of the largest dropped); with ``ridge > 0`` it is
    W = Y V^T (V V^T + ridge I)^-1.
    """
    V = np.atleast_2d(np.asarray(V, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if V.shape[1] != Y.shape[1]:
        raise ValueError(
            f"V has {V.shape[1]} sample columns but Y has {Y.shape[1]}"
        )
    if ridge < 0:
        raise ValueError("ridge must be nonnegative")
    if V.shape[1] < V.shape[0]:
        warnings.warn(
            f"fewer training samples ({V.shape[1]}) than features "
            f"({V.shape[0]}); the fit is underdetermined",
            stacklevel=2,
        )
    if not np.any(V):
        warnings.warn("all-zero feature matrix; returning zero weights",
                      stacklevel=2)
        W = np.zeros((Y.shape[0], V.shape[0]))
    elif ridge == 0.0:
        W = Y @ np.linalg.pinv(V, rcond=_SV_CUTOFF)
    else:
        gram = V @ V.T
        gram[np.diag_indices_from(gram)] += ridge
        W = np.linalg.solve(gram, V @ Y.T).T
    return WeightMatrix(W=W, ridge=ridge, meta=dict(meta or {}))


def predict(weights: WeightMatrix | np.ndarray, V: np.ndarray) -> np.ndarray:
    """Apply the readout: plain matrix product W @ V."""
    W = weights.W if isinstance(weights, WeightMatrix) else np.asarray(weights)
    return W @ np.atleast_2d(np.asarray(V, dtype=float))


def vote(Y: np.ndarray) -> int:
    """Winner digit of a block of per-unit prediction columns.

    Averages across unit columns and takes the argmax; exact ties resolve to
    the lower digit.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if Y.shape[1] == 0:
        raise ValueError("vote needs at least one unit column")
    return int(np.argmax(Y.mean(axis=1)))


def squared_correlation(y_pred, y_true) -> float:
    """Squared Pearson correlation in [0, 1]; 0 if either side is constant."""
    y_pred = np.asarray(y_pred, dtype=float).ravel()
    y_true = np.asarray(y_true, dtype=float).ravel()
    if y_pred.size != y_true.size:
        raise ValueError("length mismatch")
    if y_pred.size < 2:
        raise ValueError("need at least two points")
    dp = y_pred - y_pred.mean()
    dt = y_true - y_true.mean()
    denom = np.sqrt((dp @ dp) * (dt @ dt))
    if denom == 0.0 or not np.isfinite(denom):
        return 0.0
    r = float(dp @ dt / denom)
    return min(r * r, 1.0)


def save_weights(path, weights: WeightMatrix):
    """Persist weights as .npz: array 'W' plus a JSON metadata string."""
    meta = dict(weights.meta)
    meta["ridge"] = weights.ridge
    meta["shape"] = list(weights.W.shape)
    np.savez(path, W=weights.W, meta=json.dumps(meta, sort_keys=True))


def load_weights(path) -> WeightMatrix:
    with np.load(path, allow_pickle=False) as f:
        meta = json.loads(str(f["meta"]))
        W = f["W"]
    ridge = float(meta.pop("ridge", 0.0))
    meta.pop("shape", None)
    return WeightMatrix(W=W, ridge=ridge, meta=meta)
