"""Object sliding: push a puck to a goal with the arm's end-effector.

Contact is kinematic: when the end-effector penetrates the contact radius,
the puck is projected out along the center-to-center direction and inherits
the push as velocity, which then decays every step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import elbow_position, forward_kinematics, wrap_angle
from .reach import ArmState, ReachEnv
from .rendering import render_scene

WORKSPACE_BOUND = 1.2  # box half-width for the puck, beyond full arm reach


@dataclass
class PuckState:
    position: np.ndarray
    velocity: np.ndarray
    radius: float = 0.05


class SlideEnv(ReachEnv):
    """Sparse reward on puck position; proprio carries arm and puck signals."""

    name = "slide"
    proprio_dim = 10
    # end-effector pose, object position, and their derived offset
    noisy_dims = (0, 1, 4, 5, 8, 9)
    masked_dims: tuple[int, ...] = ()

    def __init__(self, horizon: int = 50, v_max: float = 1.0, dt: float = 0.1,
                 link_lengths=(0.5, 0.5), success_threshold: float = 0.1,
                 goal_hidden: bool = True, noise=None,
                 contact_radius: float = 0.08, damping: float = 0.9):
        super().__init__(horizon, v_max, dt, link_lengths, success_threshold,
                         goal_hidden, noise)
        self.contact_radius = float(contact_radius)
        self.damping = float(damping)
        self.puck: PuckState | None = None

    def reset(self, rng: np.random.Generator):
        q = rng.uniform(-np.pi, np.pi, size=2)
        self.arm = ArmState(q=wrap_angle(q), qdot=np.zeros(2),
                            link_lengths=self.link_lengths)
        r = rng.uniform(0.35, 0.65)
        theta = rng.uniform(-np.pi, np.pi)
        start = np.array([r * np.cos(theta), r * np.sin(theta)])
        self.puck = PuckState(position=start, velocity=np.zeros(2))
        self.goal = self._sample_puck_goal(rng, start)
        self.t = 0
        return self.observe()

    def _sample_puck_goal(self, rng, start) -> np.ndarray:
        # displacement target kept inside the comfortably reachable disc
        while True:
            d = rng.uniform(0.15, 0.35)
            phi = rng.uniform(-np.pi, np.pi)
            goal = start + np.array([d * np.cos(phi), d * np.sin(phi)])
            if 0.15 <= np.linalg.norm(goal) <= 0.85:
                return goal

    def _after_arm_step(self) -> None:
        puck = self.puck
        puck.position = puck.position + puck.velocity * self.dt
        puck.velocity = puck.velocity * self.damping
        np.clip(puck.position, -WORKSPACE_BOUND, WORKSPACE_BOUND,
                out=puck.position)
        ee = forward_kinematics(self.arm.q, self.link_lengths)
        delta = puck.position - ee
        dist = float(np.linalg.norm(delta))
        if dist < self.contact_radius:
            direction = delta / dist if dist > 1e-9 else np.array([1.0, 0.0])
            new_pos = ee + direction * self.contact_radius
            puck.velocity = (new_pos - puck.position) / self.dt
            puck.position = new_pos

    def achieved(self) -> np.ndarray:
        return self.puck.position.copy()

    def raw_proprio(self) -> np.ndarray:
        ee = forward_kinematics(self.arm.q, self.link_lengths)
        vec = np.concatenate([
            ee,
            self.arm.q,
            self.puck.position,
            self.puck.velocity,
            self.puck.position - ee,
        ])
        if self.masked_dims:
            vec = vec.copy()
            vec[list(self.masked_dims)] = 0.0
        return vec

    def render(self) -> np.ndarray:
        base = np.zeros(2)
        elbow = elbow_position(self.arm.q, self.link_lengths)
        ee = forward_kinematics(self.arm.q, self.link_lengths)
        return render_scene(
            joint_positions=[base, elbow, ee],
            ee=ee,
            puck=self.puck.position,
            goal=None if self.goal_hidden else self.goal,
        )


class SlideHardEnv(SlideEnv):
    """Reduced-observation sliding: puck velocity and offset signals removed.

    The proprio vector keeps its shape (fields zero-masked) so representations
    pretrained on the full task transfer without reshaping.
    """

    name = "slide-hard"
    masked_dims = (6, 7, 8, 9)
    noisy_dims = (0, 1, 4, 5)
