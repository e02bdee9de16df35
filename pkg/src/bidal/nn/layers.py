"""Layer primitives: dense, 2-D convolution, and weight initialization."""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .tensor import ContractViolation, Tensor, _track, _accumulate, add, matmul

__all__ = ["dense_forward", "conv2d_forward", "conv_output_size", "glorot_uniform"]


def glorot_uniform(shape, fan_in: int, fan_out: int, rng: np.random.Generator,
                   dtype=np.float32) -> np.ndarray:
    """Uniform init in +-sqrt(6 / (fan_in + fan_out))."""
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape).astype(dtype)


def dense_forward(x: Tensor, weights: Tensor, bias: Tensor) -> Tensor:
    """y = x @ W + b for x [batch, in], W [in, out], b [out]."""
    if x.data.ndim != 2 or weights.data.ndim != 2 or bias.data.ndim != 1:
        raise ContractViolation(
            f"dense_forward ranks: x{x.shape} W{weights.shape} b{bias.shape}"
        )
    if x.shape[1] != weights.shape[0] or weights.shape[1] != bias.shape[0]:
        raise ContractViolation(
            f"dense_forward shapes: x{x.shape} W{weights.shape} b{bias.shape}"
        )
    return add(matmul(x, weights), bias)


def conv_output_size(n: int, k: int, stride: int, padding: int) -> int:
    return (n + 2 * padding - k) // stride + 1


# im2col scatter indices keyed by (batch, h, w, c_in, k, stride, padding)
_SCATTER_CACHE: dict[tuple, np.ndarray] = {}


def _scatter_indices(b, h, w, c, k, stride, pad):
    key = (b, h, w, c, k, stride, pad)
    idx = _SCATTER_CACHE.get(key)
    if idx is None:
        hp, wp = h + 2 * pad, w + 2 * pad
        oh = conv_output_size(h, k, stride, pad)
        ow = conv_output_size(w, k, stride, pad)
        bi = np.arange(b).reshape(-1, 1, 1, 1, 1, 1)
        oi = (np.arange(oh) * stride).reshape(1, -1, 1, 1, 1, 1)
        oj = (np.arange(ow) * stride).reshape(1, 1, -1, 1, 1, 1)
        ki = np.arange(k).reshape(1, 1, 1, -1, 1, 1)
        kj = np.arange(k).reshape(1, 1, 1, 1, -1, 1)
        ci = np.arange(c).reshape(1, 1, 1, 1, 1, -1)
        flat = ((bi * hp + oi + ki) * wp + (oj + kj)) * c + ci
        idx = np.ascontiguousarray(flat.ravel(), dtype=np.int32)
        _SCATTER_CACHE[key] = idx
    return idx


def _im2col(xd: np.ndarray, k: int, stride: int, pad: int) -> np.ndarray:
    if pad:
        xd = np.pad(xd, ((0, 0), (pad, pad), (pad, pad), (0, 0)))
    win = sliding_window_view(xd, (k, k), axis=(1, 2))[:, ::stride, ::stride]
    # [b, oh, ow, c, k, k] -> [b*oh*ow, k*k*c], matching kernels.reshape(k*k*c, -1)
    b, oh, ow, c = win.shape[:4]
    return np.ascontiguousarray(win.transpose(0, 1, 2, 4, 5, 3)).reshape(
        b * oh * ow, k * k * c
    )


def conv2d_forward(img: Tensor, kernels: Tensor, stride: int = 1,
                   padding: int = 0) -> Tensor:
    """Cross-correlation of img [b, h, w, c_in] with kernels [k, k, c_in, c_out]."""
    if img.data.ndim != 4 or kernels.data.ndim != 4:
        raise ContractViolation(
            f"conv2d_forward ranks: img{img.shape} kernels{kernels.shape}"
        )
    b, h, w, c_in = img.shape
    k, k2, kc_in, c_out = kernels.shape
    if k != k2 or kc_in != c_in:
        raise ContractViolation(
            f"conv2d_forward shapes: img{img.shape} kernels{kernels.shape}"
        )
    if k < 1 or stride < 1:
        raise ContractViolation("kernel size and stride must be >= 1")
    oh = conv_output_size(h, k, stride, padding)
    ow = conv_output_size(w, k, stride, padding)
    if oh < 1 or ow < 1:
        raise ContractViolation(
            f"conv output {oh}x{ow} < 1 for input {h}x{w}, k={k}, "
            f"stride={stride}, padding={padding}"
        )
    col = _im2col(img.data, k, stride, padding)
    kmat = kernels.data.reshape(k * k * c_in, c_out)
    out = Tensor((col @ kmat).reshape(b, oh, ow, c_out))

    def back(g):
        g2 = g.reshape(b * oh * ow, c_out)
        _accumulate(kernels, (col.T @ g2).reshape(kernels.shape))
        dcol = g2 @ kmat.T
        idx = _scatter_indices(b, h, w, c_in, k, stride, padding)
        hp, wp = h + 2 * padding, w + 2 * padding
        dxp = np.bincount(idx, weights=dcol.ravel(), minlength=b * hp * wp * c_in)
        dxp = dxp.reshape(b, hp, wp, c_in).astype(img.data.dtype, copy=False)
        if padding:
            dxp = dxp[:, padding:-padding, padding:-padding, :]
        _accumulate(img, dxp)

    return _track(out, (img, kernels), back)
