"""Minimal reverse-mode autodiff over numpy arrays.

A Tensor wraps an ndarray and remembers how it was produced; calling
``backward`` on a scalar walks the tape in reverse topological order and
accumulates gradients on every reachable tensor with ``requires_grad``.
Training runs in float32; float64 tensors are supported for
finite-difference verification.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "ContractViolation",
    "Tensor",
    "no_grad",
    "stop_gradient",
    "backward",
    "matmul",
    "add",
    "sub",
    "mul",
    "scale",
    "concat",
    "reshape",
    "sum_all",
    "mean_all",
    "elu",
    "tanh",
]


class ContractViolation(ValueError):
    """An operation was called with inputs that break its contract."""


_grad_enabled = True


class no_grad:
    """Context manager that disables tape construction (pure inference)."""

    def __enter__(self):
        global _grad_enabled
        self._prev = _grad_enabled
        _grad_enabled = False
        return self

    def __exit__(self, *exc):
        global _grad_enabled
        _grad_enabled = self._prev
        return False


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad: bool = False, dtype=None):
        arr = np.asarray(data)
        if dtype is not None:
            arr = arr.astype(dtype, copy=False)
        elif arr.dtype not in (np.float32, np.float64):
            arr = arr.astype(np.float32)
        self.data: np.ndarray = arr
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad
        self._parents: tuple = ()
        self._backward = None

    @property
    def shape(self):
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    @property
    def size(self):
        return self.data.size

    def item(self) -> float:
        return float(self.data)

    def detach(self) -> "Tensor":
        return Tensor(self.data, requires_grad=False)

    def assert_finite(self, what: str = "tensor") -> "Tensor":
        if not np.all(np.isfinite(self.data)):
            raise FloatingPointError(f"non-finite values in {what}")
        return self

    def backward(self) -> None:
        """Accumulate dself/dx into ``x.grad`` for every reachable x.

        Only defined for scalar outputs (loss values).
        """
        if self.size != 1:
            raise ContractViolation(
                f"backward requires a scalar, got shape {self.shape}"
            )
        topo: list[Tensor] = []
        visited: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, processed = stack.pop()
            if processed:
                topo.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in visited:
                    stack.append((p, False))
        self.grad = np.ones_like(self.data)
        for node in reversed(topo):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)

    def __repr__(self):
        return f"Tensor(shape={self.shape}, dtype={self.data.dtype})"


def _accumulate(t: Tensor, g: np.ndarray) -> None:
    if t.grad is None:
        t.grad = g.copy() if g.base is not None or not g.flags.owndata else g
    else:
        t.grad = t.grad + g


def _track(out: Tensor, parents: tuple, backward_fn) -> Tensor:
    if _grad_enabled and any(p.requires_grad or p._parents for p in parents):
        out.requires_grad = True
        out._parents = parents
        out._backward = backward_fn
    return out


def stop_gradient(t: Tensor) -> Tensor:
    """Marker that truncates backpropagation through ``t``."""
    return Tensor(t.data, requires_grad=False)


def backward(loss: Tensor) -> None:
    """Run reverse-mode accumulation from a scalar loss."""
    loss.backward()


def matmul(x: Tensor, w: Tensor) -> Tensor:
    if x.data.ndim != 2 or w.data.ndim != 2 or x.shape[1] != w.shape[0]:
        raise ContractViolation(f"matmul shapes {x.shape} @ {w.shape}")
    out = Tensor(x.data @ w.data)

    def back(g):
        _accumulate(x, g @ w.data.T)
        _accumulate(w, x.data.T @ g)

    return _track(out, (x, w), back)


def add(x: Tensor, b: Tensor) -> Tensor:
    """Elementwise add; also supports a [n] bias against [batch, n]."""
    if x.shape != b.shape:
        if not (x.data.ndim == 2 and b.data.ndim == 1 and x.shape[1] == b.shape[0]):
            raise ContractViolation(f"add shapes {x.shape} + {b.shape}")
    out = Tensor(x.data + b.data)

    def back(g):
        _accumulate(x, g)
        _accumulate(b, g if b.shape == x.shape else g.sum(axis=0))

    return _track(out, (x, b), back)


def sub(x: Tensor, y: Tensor) -> Tensor:
    if x.shape != y.shape:
        raise ContractViolation(f"sub shapes {x.shape} - {y.shape}")
    out = Tensor(x.data - y.data)

    def back(g):
        _accumulate(x, g)
        _accumulate(y, -g)

    return _track(out, (x, y), back)


def mul(x: Tensor, y: Tensor) -> Tensor:
    if x.shape != y.shape:
        raise ContractViolation(f"mul shapes {x.shape} * {y.shape}")
    out = Tensor(x.data * y.data)

    def back(g):
        _accumulate(x, g * y.data)
        _accumulate(y, g * x.data)

    return _track(out, (x, y), back)


def scale(x: Tensor, c: float) -> Tensor:
    out = Tensor(x.data * c)

    def back(g):
        _accumulate(x, g * c)

    return _track(out, (x,), back)


def concat(parts: list[Tensor], axis: int = 1) -> Tensor:
    out = Tensor(np.concatenate([p.data for p in parts], axis=axis))
    sizes = [p.shape[axis] for p in parts]
    offsets = np.cumsum([0] + sizes)

    def back(g):
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            idx = [slice(None)] * g.ndim
            idx[axis] = slice(lo, hi)
            _accumulate(p, g[tuple(idx)])

    return _track(out, tuple(parts), back)


def reshape(x: Tensor, shape) -> Tensor:
    out = Tensor(x.data.reshape(shape))

    def back(g):
        _accumulate(x, g.reshape(x.shape))

    return _track(out, (x,), back)


def sum_all(x: Tensor) -> Tensor:
    out = Tensor(np.asarray(x.data.sum(), dtype=x.data.dtype))

    def back(g):
        _accumulate(x, np.broadcast_to(g, x.shape).astype(x.data.dtype, copy=False))

    return _track(out, (x,), back)


def mean_all(x: Tensor) -> Tensor:
    return scale(sum_all(x), 1.0 / x.size)


def elu(x: Tensor) -> Tensor:
    """Elementwise x for x > 0, else exp(x) - 1."""
    xd = x.data
    out_data = np.where(xd > 0, xd, np.expm1(np.minimum(xd, 0)))
    out = Tensor(out_data)

    def back(g):
        # d/dx exp(x)-1 = exp(x) = out + 1 on the negative branch
        _accumulate(x, g * np.where(xd > 0, xd.dtype.type(1), out_data + 1))

    return _track(out, (x,), back)


def tanh(x: Tensor) -> Tensor:
    out_data = np.tanh(x.data)
    out = Tensor(out_data)

    def back(g):
        _accumulate(x, g * (1 - out_data * out_data))

    return _track(out, (x,), back)
