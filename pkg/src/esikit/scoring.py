"""Weighted normalized efficiency scoring.

The score of a suite with composed metrics (P, T, R) against the space maxima is

    score = w_p * (1 - P / P_max) + w_t * (T / T_max) + w_r * (1 - R / R_max)

so lower power and resource and higher throughput raise it, each term lies in
[0, 1] over the composing space, and the weights express user priority.  The
cut-off applied to the same space is the score of the (P_avg, T_avg, R_avg)
point, which equals the mean score of all cells because the formula is affine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

# Weight vectors are accepted when they sum to 1 within this tolerance. It is
# loose enough to admit three-decimal weight tables (0.333 + 0.333 + 0.333).
WEIGHT_SUM_TOL = 2e-3

EQUAL_PRIORITY = "equal"
SINGLE_PRIORITY = "single"
MULTIPLE_PRIORITY = "multiple"


@dataclass(frozen=True)
class WeightVector:
    """Priority weights for power, throughput and resource."""

    w_p: float
    w_t: float
    w_r: float

    def __post_init__(self) -> None:
        for label, value in (("w_p", self.w_p), ("w_t", self.w_t), ("w_r", self.w_r)):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{label} must be a nonnegative real, got {value}")
        total = self.w_p + self.w_t + self.w_r
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 (got {total:.6g})")

    @property
    def priority(self) -> str:
        """Priority class: 'equal', 'single' (one nonzero) or 'multiple'."""
        if self.w_p == self.w_t == self.w_r:
            return EQUAL_PRIORITY
        if sum(1 for w in (self.w_p, self.w_t, self.w_r) if w > 0) == 1:
            return SINGLE_PRIORITY
        return MULTIPLE_PRIORITY

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w_p, self.w_t, self.w_r)

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """Parse 'w_p,w_t,w_r' (e.g. '0.333,0.333,0.333')."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated weights, got {text!r}")
        try:
            values = tuple(float(p) for p in parts)
        except ValueError:
            raise ValueError(f"weights must be numbers, got {text!r}") from None
        return cls(*values)


def weighted_scores(power, throughput, resource, p_max, t_max, r_max, weights: WeightVector):
    """Apply the weighted normalized score; works on scalars or arrays."""
    return (
        weights.w_p * (1.0 - np.asarray(power, dtype=float) / p_max)
        + weights.w_t * (np.asarray(throughput, dtype=float) / t_max)
        + weights.w_r * (1.0 - np.asarray(resource, dtype=float) / r_max)
    )


def cutoff_score(p_avg, t_avg, r_avg, p_max, t_max, r_max, weights: WeightVector) -> float:
    """Eligibility cut-off: the score of the space's average metric point."""
    return float(weighted_scores(p_avg, t_avg, r_avg, p_max, t_max, r_max, weights))


class EsiScorer(TransformerMixin, BaseEstimator):
    """Eligibility scorer over composed (power, throughput, resource) rows.

    Fitting learns the per-column maxima and averages of the composition
    space, from which the eligibility threshold is derived.  The estimator
    then scores arbitrary metric rows against that space, min-max style.

    Parameters
    ----------
    w_p, w_t, w_r : float, default=1/3 each
        Nonnegative priority weights; must sum to 1 (within a small
        tolerance that admits three-decimal weight tables).

    Attributes
    ----------
    maxima_ : ndarray of shape (3,)
        Column maxima (power, throughput, resource) of the fitted space.
    averages_ : ndarray of shape (3,)
        Column means of the fitted space.
    threshold_ : float
        Eligibility cut-off; equals the mean score of the fitted rows.

    Examples
    --------
    >>> scorer = EsiScorer(w_p=1.0, w_t=0.0, w_r=0.0)
    >>> X = [[100.0, 1.0, 500], [400.0, 2.0, 800]]
    >>> scorer.fit(X).predict(X)
    array([ True, False])
    """

    def __init__(self, w_p: float = 1 / 3, w_t: float = 1 / 3, w_r: float = 1 / 3):
        self.w_p = w_p
        self.w_t = w_t
        self.w_r = w_r

    def _weights(self) -> WeightVector:
        return WeightVector(self.w_p, self.w_t, self.w_r)

    def _check_X(self, X, positive: bool):
        X = check_array(X, dtype=float, ensure_2d=True)
        if X.shape[1] != 3:
            raise ValueError(
                f"expected 3 columns (power, throughput, resource), got {X.shape[1]}"
            )
        if positive and not (X > 0).all():
            raise ValueError("metric values must be strictly positive")
        return X

    def fit(self, X, y=None):
        """Learn maxima, averages and the eligibility threshold from X."""
        weights = self._weights()
        X = self._check_X(X, positive=True)
        self.maxima_ = X.max(axis=0)
        self.averages_ = X.mean(axis=0)
        self.threshold_ = cutoff_score(*self.averages_, *self.maxima_, weights)
        self.n_features_in_ = 3
        return self

    def score_samples(self, X) -> np.ndarray:
        """Score rows against the fitted space; shape (n_samples,)."""
        check_is_fitted(self, "maxima_")
        X = self._check_X(X, positive=False)
        return np.asarray(
            weighted_scores(X[:, 0], X[:, 1], X[:, 2], *self.maxima_, self._weights())
        )

    def transform(self, X) -> np.ndarray:
        """Scores as a (n_samples, 1) column, for pipeline composition."""
        return self.score_samples(X).reshape(-1, 1)

    def predict(self, X) -> np.ndarray:
        """Boolean eligibility: score >= threshold (inclusive)."""
        return self.score_samples(X) >= self.threshold_
