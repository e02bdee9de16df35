"""Tensor arithmetic, layer primitives, autodiff, and Adam."""

from .gradcheck import grad_check
from .layers import conv2d_forward, conv_output_size, dense_forward, glorot_uniform
from .optim import ParamSet, adam_step
from .tensor import (
    ContractViolation,
    Tensor,
    add,
    backward,
    concat,
    elu,
    matmul,
    mean_all,
    mul,
    no_grad,
    reshape,
    scale,
    stop_gradient,
    sub,
    sum_all,
    tanh,
)

__all__ = [
    "ContractViolation",
    "Tensor",
    "ParamSet",
    "adam_step",
    "grad_check",
    "dense_forward",
    "conv2d_forward",
    "conv_output_size",
    "glorot_uniform",
    "no_grad",
    "stop_gradient",
    "backward",
    "add",
    "concat",
    "elu",
    "matmul",
    "mean_all",
    "mul",
    "reshape",
    "scale",
    "sub",
    "sum_all",
    "tanh",
]
