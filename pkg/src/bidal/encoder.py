"""Multisensory integration network producing the latent state.

A visual branch (four stride-2 convolutions with Elu, then a dense layer)
and a proprioceptive branch (one dense layer) are concatenated and combined
by a fusion dense layer. The returned latent is the fusion output joined
with the proprioceptive branch code, so the body-schema part stays
recoverable as a slice.
"""

from __future__ import annotations

import numpy as np

from .nn import (
    ContractViolation,
    ParamSet,
    Tensor,
    add,
    concat,
    conv2d_forward,
    conv_output_size,
    dense_forward,
    elu,
    glorot_uniform,
    reshape,
)

IMAGE_HW = 42
CONV_KERNEL = 3
CONV_STRIDE = 2
# stride-2 stack on 42x42: 21 -> 11 -> 5 -> 2 (keeps the final map >= 2x2)
CONV_PADDINGS = (1, 1, 0, 0)
BRANCH_DIM = 64  # width of the visual-feature and body-schema codes


def conv_stack_shape(channels: int, paddings=CONV_PADDINGS) -> tuple[int, int]:
    """(final spatial size, flattened feature count) of the visual stack."""
    hw = IMAGE_HW
    for p in paddings:
        hw = conv_output_size(hw, CONV_KERNEL, CONV_STRIDE, p)
    return hw, hw * hw * channels


def init_encoder_params(proprio_dim: int, latent_dim: int = 64,
                        conv_channels: int = 32,
                        rng: np.random.Generator | None = None,
                        paddings=CONV_PADDINGS) -> ParamSet:
    rng = rng if rng is not None else np.random.default_rng(0)
    ps = ParamSet()
    c_in = 1
    for i in range(4):
        shape = (CONV_KERNEL, CONV_KERNEL, c_in, conv_channels)
        fan_in = CONV_KERNEL * CONV_KERNEL * c_in
        fan_out = CONV_KERNEL * CONV_KERNEL * conv_channels
        ps.add(f"conv{i + 1}.K", glorot_uniform(shape, fan_in, fan_out, rng))
        ps.add(f"conv{i + 1}.b", np.zeros(conv_channels, dtype=np.float32))
        c_in = conv_channels
    _, flat = conv_stack_shape(conv_channels, paddings)
    ps.add("vis_fc.W", glorot_uniform((flat, BRANCH_DIM), flat, BRANCH_DIM, rng))
    ps.add("vis_fc.b", np.zeros(BRANCH_DIM, dtype=np.float32))
    ps.add("prop_fc.W",
           glorot_uniform((proprio_dim, BRANCH_DIM), proprio_dim, BRANCH_DIM, rng))
    ps.add("prop_fc.b", np.zeros(BRANCH_DIM, dtype=np.float32))
    ps.add("fuse.W",
           glorot_uniform((2 * BRANCH_DIM, latent_dim), 2 * BRANCH_DIM, latent_dim, rng))
    ps.add("fuse.b", np.zeros(latent_dim, dtype=np.float32))
    return ps


def encode(params: ParamSet, visual: Tensor, proprio: Tensor,
           use_visual: bool = True, use_proprio: bool = True,
           paddings=CONV_PADDINGS) -> Tensor:
    """Latent state [batch, latent_dim + BRANCH_DIM] from one sensor pair.

    Gated-off branches contribute zero feature vectors (and skip their
    compute); shapes are identical across gatings.
    """
    if visual.data.ndim != 4 or visual.shape[1:] != (IMAGE_HW, IMAGE_HW, 1):
        raise ContractViolation(
            f"visual input must be [batch, {IMAGE_HW}, {IMAGE_HW}, 1], "
            f"got {visual.shape}"
        )
    batch = visual.shape[0]
    if proprio.data.ndim != 2 or proprio.shape[0] != batch:
        raise ContractViolation(
            f"proprio input must be [batch={batch}, dim], got {proprio.shape}"
        )
    dtype = params["fuse.W"].data.dtype

    if use_visual:
        h = visual
        for i, pad in enumerate(paddings):
            h = conv2d_forward(h, params[f"conv{i + 1}.K"], CONV_STRIDE, pad)
            maps = h.shape
            h = add(reshape(h, (-1, maps[-1])), params[f"conv{i + 1}.b"])
            h = reshape(elu(h), maps)
        flat = int(np.prod(h.shape[1:]))
        h = reshape(h, (batch, flat))
        vis_code = elu(dense_forward(h, params["vis_fc.W"], params["vis_fc.b"]))
    else:
        vis_code = Tensor(np.zeros((batch, BRANCH_DIM), dtype=dtype))

    if use_proprio:
        body_code = elu(dense_forward(proprio, params["prop_fc.W"],
                                      params["prop_fc.b"]))
    else:
        body_code = Tensor(np.zeros((batch, BRANCH_DIM), dtype=dtype))

    fused = elu(dense_forward(concat([vis_code, body_code], axis=1),
                              params["fuse.W"], params["fuse.b"]))
    return concat([fused, body_code], axis=1)


def dense_bias(h: Tensor, b: Tensor) -> Tensor:
    """Add a per-channel bias to a [batch, h, w, c] activation."""
    from .nn import add
    flat = reshape(h, (-1, h.shape[-1]))
    return add(flat, b)


def output_dim(latent_dim: int) -> int:
    return latent_dim + BRANCH_DIM


class MultisensoryEncoder:
    """Parameter owner plus variant gating for the fusion network."""

    def __init__(self, proprio_dim: int, latent_dim: int = 64,
                 conv_channels: int = 32, use_visual: bool = True,
                 use_proprio: bool = True,
                 rng: np.random.Generator | None = None):
        self.proprio_dim = proprio_dim
        self.latent_dim = latent_dim
        self.conv_channels = conv_channels
        self.use_visual = use_visual
        self.use_proprio = use_proprio
        self.params = init_encoder_params(proprio_dim, latent_dim,
                                          conv_channels, rng)

    @property
    def phi_dim(self) -> int:
        return output_dim(self.latent_dim)

    def encode(self, visual: Tensor, proprio: Tensor,
               params: ParamSet | None = None) -> Tensor:
        return encode(params if params is not None else self.params,
                      visual, proprio, self.use_visual, self.use_proprio)
