"""Proximal and gradient boosting with decision-tree weak learners."""

from ._core import (
    DataError,
    Ensemble,
    Loss,
    NumericError,
    UsageError,
    __version__,
    closed_form_weights,
    fit,
    generate,
    load_model,
    loss_by_name,
    nesterov_sequence,
    rate_demo,
    recursive_weights,
    split,
)

__all__ = [
    "DataError",
    "Ensemble",
    "Loss",
    "NumericError",
    "UsageError",
    "__version__",
    "closed_form_weights",
    "fit",
    "generate",
    "load_model",
    "loss_by_name",
    "nesterov_sequence",
    "rate_demo",
    "recursive_weights",
    "split",
]
