"""Phase portraits (domain colouring by argument) written as binary PPM.

Pixel colour is HSV with hue ``arg(value) / 2pi``, full saturation and value.
Points with ``|z| >= 0.98`` are black.  The argument is read off the imaginary
part of the accumulated logarithm, so huge or tiny moduli never overflow.
"""

from __future__ import annotations

import numpy as np
from matplotlib.colors import hsv_to_rgb

from .errors import DomainError

HALF_WIDTH = 0.98


def grid(size: int, half_width: float = HALF_WIDTH):
    """``size x size`` points on ``[-hw, hw]^2``; row 0 is the top edge. Returns (z, inside)."""
    if size < 16:
        raise DomainError("grid size must be >= 16")
    x = np.linspace(-half_width, half_width, size)
    z = x[None, :] + 1j * x[::-1, None]
    return z, np.abs(z) < half_width


def log_product_on(points: np.ndarray, mult: dict) -> np.ndarray:
    """``sum_k m_k log(1 - z**k)`` for a mapping ``{k: m_k}``."""
    out = np.zeros(points.shape, dtype=complex)
    for k, m in sorted(mult.items()):
        out += m * np.log1p(-(points**k))
    return out


def colour(log_values: np.ndarray, inside: np.ndarray) -> np.ndarray:
    """RGB uint8 image from log-values on the inside mask."""
    hue = np.mod(log_values.imag / (2 * np.pi), 1.0)
    hsv = np.stack([hue, np.ones_like(hue), np.ones_like(hue)], axis=-1)
    rgb = np.zeros(inside.shape + (3,), dtype=np.uint8)
    rgb[inside] = np.floor(hsv_to_rgb(hsv) * 255 + 0.5).astype(np.uint8)
    return rgb


def render(mult: dict, size: int):
    """Return ``(rgb, z, inside, log_values)`` for ``prod (1 - z**k) ** m_k``."""
    z, inside = grid(size)
    logv = log_product_on(z[inside], mult)
    return colour(logv, inside), z, inside, logv


def ppm_bytes(rgb: np.ndarray) -> bytes:
    h, w, _ = rgb.shape
    return b"P6\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(rgb, dtype=np.uint8).tobytes()


def parse_ppm(data: bytes):
    """Validate a binary PPM and return ``(width, height, pixels)``."""
    parts = data.split(maxsplit=4)
    if len(parts) < 5 or parts[0] != b"P6":
        raise ValueError("not a binary P6 file")
    w, h, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    if maxval != 255:
        raise ValueError("only 8-bit PPM is supported")
    header_len = len(b" ".join(parts[:4])) + 1
    payload = data[header_len:]
    if len(payload) != w * h * 3:
        raise ValueError(f"payload has {len(payload)} bytes, header says {w * h * 3}")
    return w, h, np.frombuffer(payload, dtype=np.uint8).reshape(h, w, 3)
