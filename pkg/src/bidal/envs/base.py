"""Shared environment machinery: observation bundles and the sparse reward."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..nn.tensor import ContractViolation

__all__ = ["ObservationBundle", "sparse_reward"]


@dataclass
class ObservationBundle:
    """One step's sensory record."""

    visual: np.ndarray        # [42, 42, 1] grayscale in [0, 1]
    proprio: np.ndarray       # env-specific vector
    achieved_goal: np.ndarray  # 2-D position actually attained
    desired_goal: np.ndarray   # 2-D commanded goal


def sparse_reward(achieved, goal, epsilon: float) -> float:
    """0 when |goal - achieved| <= epsilon (Euclidean), else -1."""
    if epsilon <= 0:
        raise ContractViolation("epsilon must be > 0")
    d = float(np.linalg.norm(np.asarray(goal, dtype=np.float64) -
                             np.asarray(achieved, dtype=np.float64)))
    return -1.0 if d > epsilon else 0.0
