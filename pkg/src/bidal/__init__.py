"""Goal-conditioned actor-critic with bidirectional action-effect models."""

__version__ = "0.1.0"
