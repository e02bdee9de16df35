"""Planar reaching: drive a 2-link arm's end-effector to a goal position."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..nn.tensor import ContractViolation
from .base import ObservationBundle, sparse_reward
from .kinematics import elbow_position, forward_kinematics, wrap_angle
from .noise import ObservationNoise
from .rendering import render_scene


@dataclass
class ArmState:
    q: np.ndarray                 # joint angles, wrapped to [-pi, pi)
    qdot: np.ndarray              # rad/s, |qdot_i| <= v_max
    link_lengths: np.ndarray = field(
        default_factory=lambda: np.array([0.5, 0.5]))


class ReachEnv:
    """Velocity-commanded 2-joint arm; sparse reward on end-effector position."""

    name = "reach"
    action_dim = 2
    goal_dim = 2
    proprio_dim = 4
    noisy_dims: tuple[int, ...] = ()

    def __init__(self, horizon: int = 50, v_max: float = 1.0, dt: float = 0.1,
                 link_lengths=(0.5, 0.5), success_threshold: float = 0.05,
                 goal_hidden: bool = True,
                 noise: ObservationNoise | None = None):
        self.horizon = int(horizon)
        self.v_max = float(v_max)
        self.dt = float(dt)
        self.link_lengths = np.asarray(link_lengths, dtype=np.float64)
        self.success_threshold = float(success_threshold)
        self.goal_hidden = bool(goal_hidden)
        self.noise = noise
        self.arm: ArmState | None = None
        self.goal: np.ndarray | None = None
        self.t = 0

    def sample_goal(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform over the reachable annulus |l1 - l2| <= |g| <= l1 + l2."""
        l1, l2 = self.link_lengths
        r_lo, r_hi = abs(l1 - l2), l1 + l2
        # area-uniform in the annulus
        r = np.sqrt(rng.uniform(r_lo * r_lo, r_hi * r_hi))
        theta = rng.uniform(-np.pi, np.pi)
        return np.array([r * np.cos(theta), r * np.sin(theta)])

    def reset(self, rng: np.random.Generator) -> ObservationBundle:
        q = rng.uniform(-np.pi, np.pi, size=2)
        self.arm = ArmState(q=wrap_angle(q), qdot=np.zeros(2),
                            link_lengths=self.link_lengths)
        self.goal = self.sample_goal(rng)
        self.t = 0
        return self.observe()

    def step(self, action) -> tuple[ObservationBundle, float, dict]:
        if self.t >= self.horizon:
            raise ContractViolation("episode exceeded horizon")
        a = np.clip(np.asarray(action, dtype=np.float64), -1.0, 1.0)
        arm = self.arm
        arm.qdot = a * self.v_max
        arm.q = wrap_angle(arm.q + arm.qdot * self.dt)
        self._after_arm_step()
        self.t += 1
        obs = self.observe()
        r = sparse_reward(obs.achieved_goal, self.goal, self.success_threshold)
        return obs, r, {"is_success": r == 0.0}

    def _after_arm_step(self) -> None:
        pass

    def achieved(self) -> np.ndarray:
        return forward_kinematics(self.arm.q, self.link_lengths)

    def raw_proprio(self) -> np.ndarray:
        return np.concatenate([self.arm.q, self.arm.qdot])

    def observe(self) -> ObservationBundle:
        proprio = self.raw_proprio().astype(np.float32)
        if self.noise is not None:
            proprio = self.noise.apply(proprio)
        return ObservationBundle(
            visual=self.render(),
            proprio=proprio,
            achieved_goal=self.achieved().astype(np.float32),
            desired_goal=self.goal.astype(np.float32),
        )

    def render(self) -> np.ndarray:
        base = np.zeros(2)
        elbow = elbow_position(self.arm.q, self.link_lengths)
        ee = self.achieved()
        return render_scene(
            joint_positions=[base, elbow, ee],
            ee=ee,
            goal=None if self.goal_hidden else self.goal,
        )
