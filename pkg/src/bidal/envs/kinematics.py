"""Planar two-link arm kinematics."""

from __future__ import annotations

import numpy as np

__all__ = ["wrap_angle", "forward_kinematics"]


def wrap_angle(q: np.ndarray) -> np.ndarray:
    """Wrap angles into [-pi, pi)."""
    return np.mod(np.asarray(q) + np.pi, 2.0 * np.pi) - np.pi


def forward_kinematics(q, link_lengths) -> np.ndarray:
    """End-effector position of a 2-revolute-joint chain."""
    q1, q2 = float(q[0]), float(q[1])
    l1, l2 = float(link_lengths[0]), float(link_lengths[1])
    return np.array(
        [l1 * np.cos(q1) + l2 * np.cos(q1 + q2),
         l1 * np.sin(q1) + l2 * np.sin(q1 + q2)],
        dtype=np.float64,
    )


def elbow_position(q, link_lengths) -> np.ndarray:
    q1 = float(q[0])
    l1 = float(link_lengths[0])
    return np.array([l1 * np.cos(q1), l1 * np.sin(q1)], dtype=np.float64)


def inverse_kinematics(target, link_lengths) -> np.ndarray:
    """One elbow-down solution reaching ``target``; target must be reachable."""
    x, y = float(target[0]), float(target[1])
    l1, l2 = float(link_lengths[0]), float(link_lengths[1])
    r2 = x * x + y * y
    c2 = np.clip((r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2), -1.0, 1.0)
    q2 = np.arccos(c2)
    q1 = np.arctan2(y, x) - np.arctan2(l2 * np.sin(q2), l1 + l2 * np.cos(q2))
    return wrap_angle(np.array([q1, q2]))
