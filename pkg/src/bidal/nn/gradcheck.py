"""Central finite-difference verification of reverse-mode gradients."""

from __future__ import annotations

import numpy as np

from .optim import ParamSet
from .tensor import ContractViolation, Tensor

__all__ = ["grad_check"]


def grad_check(f, params: ParamSet, epsilon: float = 1e-5) -> float:
    """Max relative error between backward() and central differences.

    ``f`` maps the ParamSet to a scalar Tensor. Must run on float64
    parameters; error per element is |analytic - numeric| / max(1, |numeric|).
    """
    if not (1e-7 <= epsilon <= 1e-3):
        raise ContractViolation(f"epsilon {epsilon} outside [1e-7, 1e-3]")
    for name, t in params.items():
        if t.data.dtype != np.float64:
            raise ContractViolation(f"grad_check requires float64 params ({name!r})")

    params.zero_grad()
    loss = f(params)
    if not isinstance(loss, Tensor) or loss.size != 1:
        raise ContractViolation("f must return a scalar Tensor")
    loss.backward()
    analytic = params.gradients()

    worst = 0.0
    for name, t in params.items():
        flat = t.data.reshape(-1)
        numeric = np.zeros_like(flat)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + epsilon
            hi = float(f(params).data)
            flat[i] = orig - epsilon
            lo = float(f(params).data)
            flat[i] = orig
            numeric[i] = (hi - lo) / (2.0 * epsilon)
        a = analytic[name].reshape(-1)
        err = np.abs(a - numeric) / np.maximum(1.0, np.abs(numeric))
        if err.size:
            worst = max(worst, float(err.max()))
    return worst
