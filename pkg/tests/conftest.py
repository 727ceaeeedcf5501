"""Shared generators for the test suite."""

from __future__ import annotations

import numpy as np

from isocal import ClosedCurve


def star_polygon(rng, n_min=5, n_max=16, r_min=0.3, r_max=1.5, scale=1.0,
                 center=(0.0, 0.0)):
    """Random star-shaped (hence simple) polygon, positively oriented."""
    n = int(rng.integers(n_min, n_max + 1))
    # bounded angular gaps: no degenerate edges, and gaps below pi keep the
    # generating center strictly inside
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, n))
        gaps = np.diff(np.r_[angles, angles[0] + 2 * np.pi])
        if gaps.min() > 1e-3 and gaps.max() < 2.5:
            break
    radii = rng.uniform(r_min, r_max, n) * scale
    c = np.asarray(center, float)
    return ClosedCurve(np.c_[c[0] + radii * np.cos(angles),
                             c[1] + radii * np.sin(angles)])


def random_rotation2(rng) -> np.ndarray:
    a = rng.uniform(0.0, 2.0 * np.pi)
    return np.array([[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]])


def random_rotation3(rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
