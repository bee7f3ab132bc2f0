"""Shared random-instance generators for the test suite."""

import numpy as np

from privguess import BiboParams, Channel, JointDistribution

FIG3_MATRIX = np.array([[0.32, 0.08], [0.12, 0.48]])


def fig3_joint() -> JointDistribution:
    """Bernoulli(0.6) source through a symmetric 0.2-crossover channel."""
    return JointDistribution(FIG3_MATRIX)


def random_joint(rng: np.random.Generator, m: int, n: int) -> JointDistribution:
    w = rng.random((m, n))
    return JointDistribution(w / w.sum())


def random_channel(rng: np.random.Generator, r: int, c: int) -> Channel:
    w = rng.random((r, c))
    return Channel(w / w.sum(axis=1, keepdims=True))


def random_bibo(rng: np.random.Generator) -> BiboParams:
    """Rejection-sample parameters with a genuine guessing advantage from Y."""
    while True:
        p = rng.uniform(0.5, 1.0)
        alpha = rng.uniform(0.0, 0.5)
        beta = rng.uniform(0.0, 0.5)
        if (1.0 - alpha) * (1.0 - p) > beta * p:
            return BiboParams(p=p, alpha=alpha, beta=beta)
