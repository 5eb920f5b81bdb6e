"""Ranking metrics: ROC-AUC and precision at k.

Both metrics depend on scores only through their ordering, so they are
invariant under any strictly increasing transform of the scores.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import rankdata

from .errors import DegenerateLabelsError, ShapeError


def _check_scored(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.ndim != 1 or scores.shape != labels.shape:
        raise ShapeError("scores and labels must be equal-length 1-D arrays")
    if scores.size == 0:
        raise ValueError("empty score array")
    if np.isnan(scores).any():
        raise ValueError("scores contain NaN")
    if not np.isin(labels, (0, 1)).all():
        raise ValueError("labels must be binary (0/1)")
    return scores, labels.astype(np.int64)


def roc_auc(scores, labels) -> float:
    """Area under the ROC curve, Mann-Whitney formulation.

    The probability that a uniformly random positive outranks a uniformly
    random negative, with ties counting one half.  Computed via average
    ranks in O(n log n).

    Raises
    ------
    DegenerateLabelsError
        If only one class is present.
    """
    scores, labels = _check_scored(scores, labels)
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError("ROC-AUC needs both classes present")
    ranks = rankdata(scores)
    rank_sum = ranks[labels == 1].sum()
    return float((rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def precision_at_k(scores, labels, k: int) -> float:
    """Fraction of positives among the top ``min(k, n)`` scored items.

    Items are ranked by descending score; ties are broken by ascending
    position in the input arrays, which makes the result deterministic.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    scores, labels = _check_scored(scores, labels)
    order = np.argsort(-scores, kind="stable")
    top = order[:min(k, order.size)]
    return float(labels[top].sum() / top.size)
