"""Helicoid, boundary helices and the frames along them.

The helicoid with turn rate ``omega`` is ``(s cos(omega t), s sin(omega t), t)``.
A boundary pair is the two helices at ``s = A`` (curve 1) and ``s = B``
(curve 2). Vectors are plain length-3 ``numpy`` arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class HelixError(ValueError):
    """Invalid helix-pair parameters or an unsupported configuration."""


class WrongKind(HelixError):
    """The operation needs a screw (or a ribbon) but got the other."""


class AxisDegenerate(HelixError):
    """The boundary curve runs along the axis, so its Frenet normal is undefined."""


class Kind(enum.Enum):
    SCREW = "screw"
    RIBBON = "ribbon"
    OTHER = "other"


@dataclass(frozen=True)
class HelicoidParams:
    """Inner radius ``A``, outer radius ``B`` and turn rate ``omega``."""

    A: float
    B: float
    omega: float

    def __post_init__(self):
        for name in ("A", "B", "omega"):
            if not math.isfinite(getattr(self, name)):
                raise HelixError(f"{name} must be finite")
        if not self.A < self.B:
            raise HelixError(f"need A < B, got A={self.A}, B={self.B}")
        if not self.omega > 0:
            raise HelixError(f"need omega > 0, got {self.omega}")

    def kind(self) -> Kind:
        if self.A < 0 < self.B:
            return Kind.SCREW
        if 0 < self.A:
            return Kind.RIBBON
        return Kind.OTHER

    def radius(self, curve_id: int) -> float:
        if curve_id == 1:
            return self.A
        if curve_id == 2:
            return self.B
        raise HelixError(f"curve_id must be 1 or 2, got {curve_id}")

    def speed(self, curve_id: int) -> float:
        r = self.radius(curve_id)
        return math.sqrt(self.omega**2 * r**2 + 1.0)

    def require(self, kind: Kind) -> None:
        if self.kind() is not kind:
            raise WrongKind(
                f"expected a {kind.value}, got A={self.A}, B={self.B} ({self.kind().value})"
            )


@dataclass(frozen=True)
class FrameAtPoint:
    position: np.ndarray
    tangent: np.ndarray
    frenet_normal: np.ndarray
    surface_normal: np.ndarray
    conormal: np.ndarray


@dataclass(frozen=True)
class MeshSpec:
    params: HelicoidParams
    t_min: float
    t_max: float
    n_s: int
    n_t: int

    def __post_init__(self):
        if self.n_s < 2 or self.n_t < 2:
            raise HelixError("mesh needs n_s >= 2 and n_t >= 2")
        if not self.t_min < self.t_max:
            raise HelixError("mesh needs t_min < t_max")


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray  # (n, 3)
    triangles: np.ndarray  # (m, 3), 0-based


def boundary_jet(params: HelicoidParams, curve_id: int, t: float):
    """Position, velocity and acceleration of boundary curve ``curve_id`` at ``t``."""
    r = params.radius(curve_id)
    w = params.omega
    c, s = math.cos(w * t), math.sin(w * t)
    pos = np.array([r * c, r * s, t])
    vel = np.array([-w * r * s, w * r * c, 1.0])
    acc = np.array([-w * w * r * c, -w * w * r * s, 0.0])
    return pos, vel, acc


def surface_point(omega: float, s, t):
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return np.stack(
        np.broadcast_arrays(s * np.cos(omega * t), s * np.sin(omega * t), t), axis=-1
    )


def tangent_basis(omega: float, s: float, t: float):
    """The helicoid's coordinate tangents ``(d/ds, d/dt)`` at ``(s, t)``."""
    c, sn = math.cos(omega * t), math.sin(omega * t)
    return np.array([c, sn, 0.0]), np.array([-omega * s * sn, omega * s * c, 1.0])


def frame_at(params: HelicoidParams, curve_id: int, t: float) -> FrameAtPoint:
    """Unit tangent, Frenet normal, surface normal and outward conormal.

    The surface normal is ``d/ds x d/dt`` normalised; with that choice the
    conormal ``-T x nu`` on curve 1 and ``T x nu`` on curve 2 points out of
    the strip ``A <= s <= B``.
    """
    r = params.radius(curve_id)
    if r == 0.0:
        raise AxisDegenerate(f"curve {curve_id} lies on the axis")
    pos, vel, acc = boundary_jet(params, curve_id, t)
    tangent = vel / np.linalg.norm(vel)
    normal = acc / np.linalg.norm(acc)
    ds, dt = tangent_basis(params.omega, r, t)
    nu = np.cross(ds, dt)
    nu /= np.linalg.norm(nu)
    side = -1.0 if curve_id == 1 else 1.0
    conormal = side * np.cross(tangent, nu)
    return FrameAtPoint(pos, tangent, normal, nu, conormal)


def screw_transform(omega: float, t: float, p, translate: bool = True) -> np.ndarray:
    """Rotate ``p`` about the z-axis by ``omega*t``; lift by ``t`` if ``translate``."""
    c, s = math.cos(omega * t), math.sin(omega * t)
    x, y, z = np.asarray(p, dtype=float)
    out = np.array([c * x - s * y, s * x + c * y, z])
    if translate:
        out[2] += t
    return out


def chord_sq(params: HelicoidParams, v):
    """Squared distance from curve 1 at parameter 0 to curve 2 at ``v``."""
    a, b, w = params.A, params.B, params.omega
    v = np.asarray(v, dtype=float)
    out = a * a - 2.0 * a * b * np.cos(w * v) + b * b + v * v
    return float(out) if out.ndim == 0 else out


def helicoid_mesh(spec: MeshSpec) -> Mesh:
    """Triangulated patch ``A <= s <= B``, ``t_min <= t <= t_max``.

    Vertex index is ``i * n_t + j`` for the i-th s-sample and j-th t-sample.
    Each grid quad is split along its (s+, t+) diagonal.
    """
    p = spec.params
    s = np.linspace(p.A, p.B, spec.n_s)
    t = np.linspace(spec.t_min, spec.t_max, spec.n_t)
    ss, tt = np.meshgrid(s, t, indexing="ij")
    vertices = surface_point(p.omega, ss, tt).reshape(-1, 3)

    i, j = np.meshgrid(np.arange(spec.n_s - 1), np.arange(spec.n_t - 1), indexing="ij")
    v00 = (i * spec.n_t + j).ravel()
    v10 = v00 + spec.n_t
    v11 = v10 + 1
    v01 = v00 + 1
    tri = np.empty((2 * v00.size, 3), dtype=np.int64)
    tri[0::2] = np.stack([v00, v10, v11], axis=1)
    tri[1::2] = np.stack([v00, v11, v01], axis=1)
    return Mesh(vertices, tri)
