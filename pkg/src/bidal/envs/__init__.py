"""Analytic planar-robot environments, rasterizer, and noise protocol."""

from .base import ObservationBundle, sparse_reward
from .kinematics import forward_kinematics, inverse_kinematics, wrap_angle
from .noise import ObservationNoise, iqr_sigma, noise_wrap
from .reach import ArmState, ReachEnv
from .rendering import frame_from_uint8, frame_to_uint8, render_scene
from .slide import PuckState, SlideEnv, SlideHardEnv

ENV_CLASSES = {
    "reach": ReachEnv,
    "slide": SlideEnv,
    "slide-hard": SlideHardEnv,
}

# per-env default goal tolerance (metres)
DEFAULT_SUCCESS_THRESHOLD = {
    "reach": 0.05,
    "slide": 0.1,
    "slide-hard": 0.1,
}


def make_env(name: str, **kwargs):
    try:
        cls = ENV_CLASSES[name]
    except KeyError:
        raise ValueError(f"unknown environment {name!r}") from None
    kwargs.setdefault("success_threshold", DEFAULT_SUCCESS_THRESHOLD[name])
    return cls(**kwargs)


__all__ = [
    "ObservationBundle",
    "sparse_reward",
    "forward_kinematics",
    "inverse_kinematics",
    "wrap_angle",
    "ObservationNoise",
    "iqr_sigma",
    "noise_wrap",
    "ArmState",
    "ReachEnv",
    "PuckState",
    "SlideEnv",
    "SlideHardEnv",
    "render_scene",
    "frame_to_uint8",
    "frame_from_uint8",
    "make_env",
    "ENV_CLASSES",
    "DEFAULT_SUCCESS_THRESHOLD",
]
