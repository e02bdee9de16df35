"""Observational noise scaled by the interquartile range of each signal's history."""

from __future__ import annotations

import numpy as np

__all__ = ["iqr_sigma", "ObservationNoise", "noise_wrap"]


def iqr_sigma(history) -> float:
    """75th minus 25th percentile, linear interpolation at rank p*(n-1).

    Histories shorter than 2 samples yield sigma = 0.
    """
    h = np.asarray(history, dtype=np.float64)
    if h.size < 2:
        return 0.0
    p25, p75 = np.percentile(h, [25.0, 75.0], method="linear")
    return float(p75 - p25)


class ObservationNoise:
    """Additive Gaussian noise on designated observation dimensions.

    Each designated dimension gets value + kappa * n with n ~ N(0, sigma),
    sigma being the IQR of that dimension's clean history. The clean value
    is appended to the history after use (FIFO ring of capacity H).
    """

    def __init__(self, kappa: float, dims, history_capacity: int = 1000,
                 rng: np.random.Generator | None = None):
        if kappa < 0:
            raise ValueError("kappa must be >= 0")
        self.kappa = float(kappa)
        self.dims = tuple(int(d) for d in dims)
        self.capacity = int(history_capacity)
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self._history = np.zeros((self.capacity, len(self.dims)), dtype=np.float64)
        self._count = 0
        self._next = 0

    def sigma(self, which: int) -> float:
        n = min(self._count, self.capacity)
        return iqr_sigma(self._history[:n, which])

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Return a noisy copy of ``values``; untouched outside ``dims``."""
        out = np.array(values, dtype=np.float64, copy=True)
        clean = np.empty(len(self.dims), dtype=np.float64)
        for i, d in enumerate(self.dims):
            clean[i] = out[d]
            if not np.isfinite(clean[i]):
                raise FloatingPointError("non-finite observation entering noise history")
            sig = self.sigma(i)
            n = self.rng.normal(0.0, sig)
            if self.kappa != 0.0 and sig != 0.0:
                out[d] = out[d] + self.kappa * n
        if self.dims:
            self._history[self._next] = clean
            self._next = (self._next + 1) % self.capacity
            self._count += 1
        return out.astype(values.dtype, copy=False)

    def copy(self) -> "ObservationNoise":
        dup = ObservationNoise(self.kappa, self.dims, self.capacity)
        dup.rng = np.random.default_rng()
        dup.rng.bit_generator.state = self.rng.bit_generator.state
        dup._history = self._history.copy()
        dup._count = self._count
        dup._next = self._next
        return dup

    def state_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "dims": list(self.dims),
            "capacity": self.capacity,
            "count": self._count,
            "next": self._next,
            "rng_state": self.rng.bit_generator.state,
        }

    def history_array(self) -> np.ndarray:
        return self._history

    def load_state(self, state: dict, history: np.ndarray) -> None:
        self.kappa = float(state["kappa"])
        self.dims = tuple(state["dims"])
        self.capacity = int(state["capacity"])
        self._count = int(state["count"])
        self._next = int(state["next"])
        self.rng.bit_generator.state = state["rng_state"]
        self._history = history.astype(np.float64, copy=True)


def noise_wrap(obs_fields: np.ndarray, noise: ObservationNoise) -> np.ndarray:
    """Apply ``noise`` to one observation vector."""
    return noise.apply(obs_fields)
