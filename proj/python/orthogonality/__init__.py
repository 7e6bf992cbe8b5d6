"""Orthogonality relations on finite sets, the integers and graph balls."""

from ._orthogonality import (
    BudgetExceeded,
    FiniteRelation,
    LineSet,
    PreconditionError,
    delta_estimate,
    end_count,
    line_orth,
    metric_oracle,
)

__all__ = [
    "BudgetExceeded",
    "FiniteRelation",
    "LineSet",
    "PreconditionError",
    "delta_estimate",
    "end_count",
    "line_orth",
    "metric_oracle",
]
