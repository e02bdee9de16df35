"""Named parameter collections and the Adam optimizer."""

from __future__ import annotations

import numpy as np

from .tensor import ContractViolation, Tensor

__all__ = ["ParamSet", "adam_step"]


class ParamSet:
    """Ordered map name -> parameter Tensor, with per-parameter Adam state.

    Shapes are fixed at ``add`` time; the Adam moments mirror them.
    """

    def __init__(self):
        self._params: dict[str, Tensor] = {}
        self.adam_m: dict[str, np.ndarray] = {}
        self.adam_v: dict[str, np.ndarray] = {}
        self.adam_t: dict[str, int] = {}

    def add(self, name: str, array: np.ndarray) -> Tensor:
        if name in self._params:
            raise ContractViolation(f"duplicate parameter name {name!r}")
        t = Tensor(array, requires_grad=True)
        self._params[name] = t
        self.adam_m[name] = np.zeros_like(t.data)
        self.adam_v[name] = np.zeros_like(t.data)
        self.adam_t[name] = 0
        return t

    def __getitem__(self, name: str) -> Tensor:
        return self._params[name]

    def __contains__(self, name: str) -> bool:
        return name in self._params

    def __len__(self) -> int:
        return len(self._params)

    def names(self) -> list[str]:
        return list(self._params)

    def items(self):
        return self._params.items()

    def n_values(self) -> int:
        return sum(t.size for t in self._params.values())

    def zero_grad(self) -> None:
        for t in self._params.values():
            t.grad = None

    def gradients(self) -> dict[str, np.ndarray]:
        """dLoss/dParam after a backward pass; zeros off the loss path."""
        return {
            name: (t.grad if t.grad is not None else np.zeros_like(t.data))
            for name, t in self._params.items()
        }

    def copy(self) -> "ParamSet":
        out = ParamSet()
        for name, t in self._params.items():
            out.add(name, t.data.copy())
            out.adam_m[name] = self.adam_m[name].copy()
            out.adam_v[name] = self.adam_v[name].copy()
            out.adam_t[name] = self.adam_t[name]
        return out

    def astype(self, dtype) -> "ParamSet":
        out = ParamSet()
        for name, t in self._params.items():
            out.add(name, t.data.astype(dtype))
        return out

    def load_values(self, arrays: dict[str, np.ndarray]) -> None:
        """Overwrite parameter values in place; shapes must match."""
        for name, arr in arrays.items():
            t = self._params[name]
            if t.data.shape != arr.shape:
                raise ContractViolation(
                    f"shape mismatch loading {name!r}: {t.data.shape} vs {arr.shape}"
                )
            t.data = arr.astype(t.data.dtype, copy=True)


def adam_step(params: ParamSet, grads: dict[str, np.ndarray], lr: float,
              beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8) -> ParamSet:
    """One bias-corrected Adam update, in place; returns ``params``.

    Moments and step counters advance even at lr=0.
    """
    for name, t in params.items():
        g = grads.get(name)
        if g is None:
            continue
        if g.shape != t.data.shape:
            raise ContractViolation(
                f"gradient shape {g.shape} != parameter {name!r} shape {t.data.shape}"
            )
        m = params.adam_m[name]
        v = params.adam_v[name]
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * (g * g)
        params.adam_t[name] += 1
        t_step = params.adam_t[name]
        m_hat = m / (1.0 - beta1 ** t_step)
        v_hat = v / (1.0 - beta2 ** t_step)
        t.data -= (lr * m_hat / (np.sqrt(v_hat) + eps)).astype(t.data.dtype, copy=False)
    return params
