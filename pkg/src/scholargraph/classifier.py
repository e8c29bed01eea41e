"""Logistic-regression classifier trained by plain gradient descent.

Small, deterministic, and dependency-light on purpose: the advisor miner
needs a classifier whose every output can be recomputed by hand.  Training
is full-batch gradient descent on log-loss from zero-initialized
parameters, so a fixed (learning rate, iterations) pair always reproduces
the same weights.
"""

from __future__ import annotations

import numpy as np


def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


class LogisticModel:
    """Binary logistic regression: p(y=1|x) = sigmoid(w.x + b)."""

    def __init__(self, learning_rate: float = 0.1, iterations: int = 500, seed: int = 42):
        self.learning_rate = learning_rate
        self.iterations = iterations
        self.seed = seed  # kept for interface stability; full-batch GD is seed-free
        self.weights: np.ndarray | None = None
        self.bias: float = 0.0

    def get_params(self) -> dict:
        return {
            "learning_rate": self.learning_rate,
            "iterations": self.iterations,
            "seed": self.seed,
        }

    def fit(self, X, y) -> "LogisticModel":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        if X.ndim != 2 or X.shape[0] != y.shape[0]:
            raise ValueError("X must be (n, d) with matching y of length n")
        classes = set(np.unique(y).tolist())
        if not classes <= {0.0, 1.0}:
            raise ValueError("labels must be 0/1")
        if len(classes) < 2:
            raise ValueError("degenerate training set: needs both a positive and a negative label")
        if np.all(X == X[0]):
            raise ValueError(
                "degenerate training set: identical feature vectors with conflicting labels"
            )

        n, d = X.shape
        w = np.zeros(d)
        b = 0.0
        for _ in range(self.iterations):
            p = sigmoid(X @ w + b)
            err = p - y
            w -= self.learning_rate * (X.T @ err) / n
            b -= self.learning_rate * float(err.mean())
        self.weights = w
        self.bias = b
        return self

    def decision_function(self, X) -> np.ndarray:
        if self.weights is None:
            raise ValueError("model is not fitted")
        return np.asarray(X, dtype=float) @ self.weights + self.bias

    def predict_proba(self, X) -> np.ndarray:
        return sigmoid(self.decision_function(X))

    def predict(self, X, threshold: float = 0.5) -> np.ndarray:
        return (self.predict_proba(X) >= threshold).astype(int)
