"""Dense float64 kernels with pinned accumulation orders.

All tensors are C-contiguous float64 ndarrays.  Each reduction below
documents the exact order in which terms enter its accumulator; a naive
scalar loop with the same order reproduces the results bit for bit.
Pinned orders are what make the transform proofs checkable at the bit
level: IEEE-754 rounding is sign-symmetric and exact under power-of-two
scaling, so negating or 2**k-scaling every summand negates or scales the
rounded sum exactly.

Orders:

* ``conv2d``  - accumulator starts at the bias, then adds
  ``w[ci, co, ki, kj] * x[ci, ...]`` with (ci, ki, kj) ascending,
  input-channel major.
* ``matmul``  - accumulator starts at zero, adds ``a[i, k] * b[k, j]``
  with k ascending.
* ``pool``    - window offsets scanned (ki, kj) ascending; avg divides
  the ordered sum by the window size once at the end.
* ``affine_norm`` - elementwise ``((x - mu) * gamma) / sigma + beta``.
* ``group_stats`` - numpy pairwise mean/variance per group (deterministic
  for a fixed element order).
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError

ACTIVATIONS = ("relu", "leaky_relu", "tanh")
POOL_KINDS = ("max", "avg")


def as_tensor(data, shape=None) -> np.ndarray:
    """Coerce to a C-contiguous float64 array, optionally checking shape."""
    arr = np.ascontiguousarray(data, dtype=np.float64)
    if shape is not None and arr.shape != tuple(shape):
        raise ShapeError(f"expected shape {tuple(shape)}, got {arr.shape}")
    return arr


def conv2d(x, w, b, stride: int = 1, padding: int = 0) -> np.ndarray:
    """Cross-correlate x (C_in, H, W) with w (C_in, C_out, k1, k2)."""
    x, w, b = as_tensor(x), as_tensor(w), as_tensor(b)
    if x.ndim != 3:
        raise ShapeError(f"conv2d input must be 3-d (C,H,W), got {x.shape}")
    if w.ndim != 4:
        raise ShapeError(f"conv2d weights must be 4-d, got {w.shape}")
    c_in, h, width = x.shape
    if w.shape[0] != c_in:
        raise ShapeError(
            f"weight input channels {w.shape[0]} != input channels {c_in}"
        )
    _, c_out, k1, k2 = w.shape
    if b.shape != (c_out,):
        raise ShapeError(f"bias must have shape ({c_out},), got {b.shape}")
    if stride < 1:
        raise ShapeError(f"stride must be >= 1, got {stride}")
    if padding < 0:
        raise ShapeError(f"padding must be >= 0, got {padding}")
    hp, wp = h + 2 * padding, width + 2 * padding
    if k1 > hp or k2 > wp:
        raise ShapeError(
            f"kernel ({k1},{k2}) exceeds padded extents ({hp},{wp})"
        )
    h_out = (hp - k1) // stride + 1
    w_out = (wp - k2) // stride + 1
    xp = np.pad(x, ((0, 0), (padding, padding), (padding, padding))) if padding else x

    out = np.empty((c_out, h_out, w_out), dtype=np.float64)
    out[:] = b[:, None, None]
    for ci in range(c_in):
        plane = xp[ci]
        for ki in range(k1):
            rows = plane[ki : ki + (h_out - 1) * stride + 1 : stride]
            for kj in range(k2):
                window = rows[:, kj : kj + (w_out - 1) * stride + 1 : stride]
                out += w[ci, :, ki, kj][:, None, None] * window[None, :, :]
    return out


def matmul(a, b) -> np.ndarray:
    """a (m, k) times b (k, n) with k-ascending accumulation."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"matmul needs 2-d operands, got {a.shape} and {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"inner dimensions differ: {a.shape[1]} != {b.shape[0]}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.float64)
    for k in range(a.shape[1]):
        out += a[:, k : k + 1] * b[k : k + 1, :]
    return out


def matvec(a, v) -> np.ndarray:
    """a (m, k) times v (k,), same accumulation order as matmul."""
    v = as_tensor(v)
    if v.ndim != 1:
        raise ShapeError(f"matvec needs a 1-d vector, got {v.shape}")
    return matmul(a, v[:, None])[:, 0]


def affine_norm(x, gamma, beta, mu, sigma) -> np.ndarray:
    """Per-channel ((x - mu) * gamma) / sigma + beta over leading axis."""
    x = as_tensor(x)
    gamma, beta, mu, sigma = (as_tensor(t) for t in (gamma, beta, mu, sigma))
    c = x.shape[0]
    for name, t in (("gamma", gamma), ("beta", beta), ("mu", mu), ("sigma", sigma)):
        if t.shape != (c,):
            raise ShapeError(f"{name} must have shape ({c},), got {t.shape}")
    if np.any(sigma <= 0.0):
        raise ShapeError("sigma must be strictly positive in every channel")
    expand = (slice(None),) + (None,) * (x.ndim - 1)
    return ((x - mu[expand]) * gamma[expand]) / sigma[expand] + beta[expand]


def group_stats(x, groups: int, eps: float = 1e-5):
    """Per-group mean and std over channel groups plus all trailing axes.

    Channels (leading axis) are split into ``groups`` contiguous groups.
    Returns (mu, sigma) of shape (groups,) with
    sigma = sqrt(population_variance + eps).
    """
    x = as_tensor(x)
    c = x.shape[0]
    if groups < 1 or c % groups != 0:
        raise ShapeError(f"groups={groups} does not divide channels={c}")
    grouped = x.reshape(groups, -1)
    mu = grouped.mean(axis=1)
    var = ((grouped - mu[:, None]) ** 2).mean(axis=1)
    return mu, np.sqrt(var + eps)


def activate(x, kind: str, alpha: float = 0.01) -> np.ndarray:
    """Elementwise activation: relu, leaky_relu(alpha), or tanh.

    tanh is computed as copysign(tanh(|x|), x) so it is odd at the bit
    level regardless of how the platform libm rounds.
    """
    x = as_tensor(x)
    if kind == "relu":
        return np.maximum(x, 0.0)
    if kind == "leaky_relu":
        return np.where(x > 0.0, x, alpha * x)
    if kind == "tanh":
        return np.copysign(np.tanh(np.abs(x)), x)
    raise ShapeError(f"unknown activation kind {kind!r}")


def pool(x, kind: str, k: int, stride: int | None = None) -> np.ndarray:
    """Pool x (C, H, W) over k-by-k windows (stride defaults to k)."""
    x = as_tensor(x)
    if x.ndim != 3:
        raise ShapeError(f"pool input must be 3-d (C,H,W), got {x.shape}")
    if kind not in POOL_KINDS:
        raise ShapeError(f"unknown pool kind {kind!r}")
    stride = k if stride is None else stride
    _, h, w = x.shape
    if k < 1 or k > h or k > w:
        raise ShapeError(f"pool window {k} does not fit input {h}x{w}")
    if stride < 1:
        raise ShapeError(f"stride must be >= 1, got {stride}")
    h_out = (h - k) // stride + 1
    w_out = (w - k) // stride + 1

    acc = None
    for ki in range(k):
        rows = x[:, ki : ki + (h_out - 1) * stride + 1 : stride]
        for kj in range(k):
            window = rows[:, :, kj : kj + (w_out - 1) * stride + 1 : stride]
            if acc is None:
                acc = window.copy()
            elif kind == "max":
                acc = np.maximum(acc, window)
            else:
                acc = acc + window
    if kind == "avg":
        acc = acc / float(k * k)
    return acc
