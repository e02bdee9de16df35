"""Software rasterizer producing the 42x42 grayscale observation frame.

Fixed workspace-to-pixel mapping; links are 1-pixel Bresenham segments,
end-effector and puck are filled discs. Intensities are drawn from a small
fixed palette so frames quantize losslessly to uint8.
"""

from __future__ import annotations

import numpy as np

IMAGE_SIZE = 42
WORKSPACE_EXTENT = 1.1  # metres from center to frame edge

LINK_INTENSITY = 0.6
EE_INTENSITY = 1.0
PUCK_INTENSITY = 0.8
GOAL_INTENSITY = 0.4

_DISC_OFFSETS: dict[int, np.ndarray] = {}


def to_pixel(point) -> tuple[int, int]:
    """Map workspace (x, y) to integer (row, col); y points up in the world."""
    scale = IMAGE_SIZE / (2.0 * WORKSPACE_EXTENT)
    col = int(np.floor((point[0] + WORKSPACE_EXTENT) * scale))
    row = IMAGE_SIZE - 1 - int(np.floor((point[1] + WORKSPACE_EXTENT) * scale))
    return row, col


def draw_line(img: np.ndarray, p0, p1, intensity: float) -> None:
    """Bresenham segment between workspace points."""
    r0, c0 = to_pixel(p0)
    r1, c1 = to_pixel(p1)
    dc = abs(c1 - c0)
    dr = -abs(r1 - r0)
    sc = 1 if c0 < c1 else -1
    sr = 1 if r0 < r1 else -1
    err = dc + dr
    n = IMAGE_SIZE
    while True:
        if 0 <= r0 < n and 0 <= c0 < n:
            img[r0, c0] = intensity
        if r0 == r1 and c0 == c1:
            break
        e2 = 2 * err
        if e2 >= dr:
            err += dr
            c0 += sc
        if e2 <= dc:
            err += dc
            r0 += sr


def draw_disc(img: np.ndarray, center, radius_px: int, intensity: float) -> None:
    offsets = _DISC_OFFSETS.get(radius_px)
    if offsets is None:
        rng = np.arange(-radius_px, radius_px + 1)
        dr, dc = np.meshgrid(rng, rng, indexing="ij")
        mask = dr * dr + dc * dc <= radius_px * radius_px
        offsets = np.stack([dr[mask], dc[mask]], axis=1)
        _DISC_OFFSETS[radius_px] = offsets
    r, c = to_pixel(center)
    pts = offsets + (r, c)
    ok = (pts[:, 0] >= 0) & (pts[:, 0] < IMAGE_SIZE) & \
         (pts[:, 1] >= 0) & (pts[:, 1] < IMAGE_SIZE)
    pts = pts[ok]
    img[pts[:, 0], pts[:, 1]] = intensity


def render_scene(joint_positions=None, ee=None, puck=None, goal=None) -> np.ndarray:
    """Deterministic rasterization of the planar scene to [42, 42, 1] in [0, 1].

    ``joint_positions`` is the polyline base -> elbow -> ee; the desired goal
    is only drawn when passed explicitly (visible-goal ablation).
    """
    img = np.zeros((IMAGE_SIZE, IMAGE_SIZE), dtype=np.float32)
    if joint_positions is not None:
        for a, b in zip(joint_positions[:-1], joint_positions[1:]):
            draw_line(img, a, b, LINK_INTENSITY)
    if goal is not None:
        draw_disc(img, goal, 2, GOAL_INTENSITY)
    if puck is not None:
        draw_disc(img, puck, 2, PUCK_INTENSITY)
    if ee is not None:
        draw_disc(img, ee, 2, EE_INTENSITY)
    return img[:, :, None]


def frame_to_uint8(frame: np.ndarray) -> np.ndarray:
    """Quantize a palette frame for storage; exact for the fixed palette."""
    return np.round(frame * 255.0).astype(np.uint8)


def frame_from_uint8(stored: np.ndarray) -> np.ndarray:
    return stored.astype(np.float32) / np.float32(255.0)
