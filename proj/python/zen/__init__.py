"""Parameter-free linear hypergraph node classification."""

import json as _json

from ._zen import (
    ComputationError,
    ConfigError,
    GuardError,
    Hypergraph,
    IoError,
    ParseError,
    dense_diag_oracle,
    exact_weights,
    hutchinson_diag,
    matrix,
    normalize_cols,
    normalize_rows,
    p_star,
    parse_hypergraph,
    predict,
    random_walk_return_prob,
    read_hypergraph,
    rsi_diag_1,
    rsi_diag_2,
    rsi_diag_2_per_edge,
    simplex_grid,
    tcs_error_bound,
    tcs_weights,
)
from ._zen import run as _run


def run(edges, features, labels, **kwargs):
    """Grid search over the propagation simplex; returns the result as a dict."""
    return _json.loads(_run(str(edges), str(features), str(labels), **kwargs))


__all__ = [
    "ComputationError",
    "ConfigError",
    "GuardError",
    "Hypergraph",
    "IoError",
    "ParseError",
    "dense_diag_oracle",
    "exact_weights",
    "hutchinson_diag",
    "matrix",
    "normalize_cols",
    "normalize_rows",
    "p_star",
    "parse_hypergraph",
    "predict",
    "random_walk_return_prob",
    "read_hypergraph",
    "rsi_diag_1",
    "rsi_diag_2",
    "rsi_diag_2_per_edge",
    "run",
    "simplex_grid",
    "tcs_error_bound",
    "tcs_weights",
]
