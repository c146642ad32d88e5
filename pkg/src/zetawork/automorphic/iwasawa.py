"""Iwasawa coordinates g = n[x] a[y] k[theta] on SL(2, R).

n[x] = (1 x; 0 1), a[y] = (sqrt(y) 0; 0 1/sqrt(y)),
k[theta] = (cos theta  sin theta; -sin theta  cos theta), w = k[pi/2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError

W = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class GroupPoint:
    """Point of PSL(2, R) in Iwasawa coordinates; theta is reduced to [0, pi)."""

    x: float
    y: float
    theta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.theta)):
            raise DomainError("x and theta must be finite")
        if not (self.y > 0 and math.isfinite(self.y)):
            raise DomainError("y must be positive")
        th = math.fmod(self.theta, math.pi)
        if th < 0:
            th += math.pi
        if th >= math.pi:
            th = 0.0
        object.__setattr__(self, "theta", th)

    def matrix(self) -> np.ndarray:
        return n_mat(self.x) @ a_mat(self.y) @ k_mat(self.theta)

    def translate(self, u: float) -> "GroupPoint":
        """n[u] g."""
        return GroupPoint(self.x + u, self.y, self.theta)


def n_mat(x: float) -> np.ndarray:
    return np.array([[1.0, x], [0.0, 1.0]])


def a_mat(y: float) -> np.ndarray:
    r = math.sqrt(y)
    return np.array([[r, 0.0], [0.0, 1.0 / r]])


def k_mat(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def iwasawa(g) -> GroupPoint:
    """Iwasawa coordinates of a real 2x2 matrix of determinant 1 (up to sign)."""
    g = np.asarray(g, dtype=np.float64)
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if not abs(det - 1.0) <= 1e-9 * max(1.0, float(np.abs(g).max()) ** 2):
        raise DomainError("matrix must have determinant 1")
    a, b = g[0]
    c, d = g[1]
    q = c * c + d * d
    return GroupPoint(float((a * c + b * d) / q), float(1.0 / q), math.atan2(-c, d))
