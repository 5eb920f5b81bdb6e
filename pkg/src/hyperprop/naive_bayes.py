"""Multinomial Naive Bayes over hyperedge incidence features.

Each hyperedge is treated as one feature; a node's feature vector is the
one-hot row of the incidence matrix, so every (node, edge) incidence
counts as a single feature occurrence.  Likelihoods are estimated from a
labeled training set with additive (Laplace) smoothing, and nodes are
scored by the log-posterior-odds of the positive class.  Log-odds rather
than probabilities keeps the score stable for nodes with hundreds of
incident edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MissingClassError, ShapeError
from .hypergraph import Hypergraph


@dataclass(frozen=True, eq=False)
class NaiveBayesModel:
    """Fitted binary multinomial model.

    ``class_log_prior`` has shape (2,) and ``feature_log_likelihood``
    shape (2, n_edges); row ``c`` exponentiates to a distribution over
    hyperedge features given class ``c``.  Immutable once fitted.
    """

    class_log_prior: np.ndarray
    feature_log_likelihood: np.ndarray
    smoothing: float

    def __post_init__(self):
        for name in ("class_log_prior", "feature_log_likelihood"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_features(self) -> int:
        return self.feature_log_likelihood.shape[1]


def fit_naive_bayes(h: Hypergraph, train_nodes, train_labels,
                    smoothing: float = 1.0) -> NaiveBayesModel:
    """Fit the binary model on a training subset of nodes.

    Parameters
    ----------
    h : Hypergraph
    train_nodes : int array
        Node indices of the training set.
    train_labels : array of 0/1
        Binary label per training node, aligned with ``train_nodes``.
    smoothing : float, >= 0
        Additive smoothing constant applied per feature (default 1.0).

    Raises
    ------
    MissingClassError
        If either class has no training node.
    """
    train_nodes = np.asarray(train_nodes, dtype=np.int64)
    train_labels = np.asarray(train_labels, dtype=np.int64)
    if train_nodes.ndim != 1 or train_nodes.shape != train_labels.shape:
        raise ShapeError("train_nodes and train_labels must be equal-length 1-D")
    if train_nodes.size == 0:
        raise MissingClassError("training set is empty")
    if not np.isin(train_labels, (0, 1)).all():
        raise ValueError("train_labels must be binary (0/1)")
    if smoothing < 0:
        raise ValueError("smoothing must be >= 0")

    counts = np.empty((2, h.n_edges))
    class_sizes = np.empty(2)
    for c in (0, 1):
        members = train_nodes[train_labels == c]
        class_sizes[c] = members.size
        if members.size == 0:
            raise MissingClassError(f"no training nodes with label {c}")
        counts[c] = np.asarray(
            h.node_edge_matrix[members].sum(axis=0)).ravel()

    with np.errstate(divide="ignore"):
        fll = np.log(counts + smoothing)
        fll -= np.log(counts.sum(axis=1) + smoothing * h.n_edges)[:, None]
        prior = np.log(class_sizes / train_nodes.size)
    return NaiveBayesModel(class_log_prior=prior,
                           feature_log_likelihood=fll,
                           smoothing=float(smoothing))


def naive_bayes_log_odds(model: NaiveBayesModel, h: Hypergraph,
                         nodes=None) -> np.ndarray:
    """Log-posterior-odds of the positive class for the given nodes.

    The score of a node is the prior log-odds plus the summed
    log-likelihood ratio of its incident edges; an isolated node scores
    exactly the prior log-odds.  Features with zero probability under
    *both* classes (possible only with ``smoothing == 0``) contribute
    nothing.

    Parameters
    ----------
    nodes : int array, optional
        Node indices to score; all nodes when omitted.

    Raises
    ------
    ShapeError
        If the model was fitted on a different edge universe.
    """
    if model.n_features != h.n_edges:
        raise ShapeError(
            f"model has {model.n_features} features, hypergraph has "
            f"{h.n_edges} edges")
    fll = model.feature_log_likelihood
    impossible = np.isneginf(fll[0]) & np.isneginf(fll[1])
    with np.errstate(invalid="ignore"):
        ratio = fll[1] - fll[0]
    ratio[impossible] = 0.0
    prior = model.class_log_prior[1] - model.class_log_prior[0]
    incidence = h.node_edge_matrix
    if nodes is not None:
        incidence = incidence[np.asarray(nodes, dtype=np.int64)]
    return prior + incidence @ ratio
