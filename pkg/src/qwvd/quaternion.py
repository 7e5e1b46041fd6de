"""Hamilton quaternions: a scalar value type plus vectorised array kernels.

Scalars are :class:`Quaternion` instances. Sampled signals store quaternions
as float64 arrays whose last axis has length 4, ordered ``(q0, q1, q2, q3)``
for ``q0 + i q1 + j q2 + k q3``. The ``q*`` functions below operate on such
arrays and broadcast over all leading axes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuaternionDomainError

__all__ = [
    "Quaternion",
    "PureUnitAxis",
    "AXIS_I",
    "AXIS_J",
    "AXIS_K",
    "mul",
    "conj",
    "modulus",
    "inverse",
    "axis_exp",
    "sqrt_axis_phase",
    "qmul",
    "unit_left",
    "unit_right",
    "exp_left",
    "exp_right",
    "qconj",
    "qabs",
    "qabs2",
    "qscalar",
    "qvector",
    "axis_exp_array",
    "as_qarray",
]

_AXIS_TOL = 1e-14


@dataclass(frozen=True)
class Quaternion:
    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        if a.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {a.shape}")
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def to_array(self) -> np.ndarray:
        return np.array([self.q0, self.q1, self.q2, self.q3], dtype=float)

    @property
    def scalar(self) -> float:
        return self.q0

    @property
    def vector(self) -> "Quaternion":
        return Quaternion(0.0, self.q1, self.q2, self.q3)

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.q0 + other.q0, self.q1 + other.q1,
                          self.q2 + other.q2, self.q3 + other.q3)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.q0 * other, self.q1 * other,
                              self.q2 * other, self.q3 * other)
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        # real scalars commute with everything
        if isinstance(other, (int, float)):
            return self * other
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        return self * inverse(_coerce(other))

    def __abs__(self):
        return modulus(self)

    def isclose(self, other, atol: float = 1e-12) -> bool:
        other = _coerce(other)
        return bool(np.allclose(self.to_array(), other.to_array(), rtol=0.0, atol=atol))

    def __repr__(self):
        return f"Quaternion({self.q0!r}, {self.q1!r}, {self.q2!r}, {self.q3!r})"


def _coerce(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, PureUnitAxis):
        return x.direction
    if isinstance(x, (int, float)):
        return Quaternion(float(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as a quaternion")


@dataclass(frozen=True)
class PureUnitAxis:
    """A pure unit quaternion used as the imaginary unit of an exponential kernel."""

    direction: Quaternion

    def __post_init__(self):
        d = self.direction
        if d.q0 != 0.0:
            raise QuaternionDomainError("axis must have zero scalar part")
        if abs(modulus(d) - 1.0) > _AXIS_TOL:
            raise QuaternionDomainError(f"axis must have unit modulus, got {modulus(d)!r}")

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> "PureUnitAxis":
        """Normalise ``(x, y, z)`` and wrap it as ``x i + y j + z k``."""
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0.0:
            raise QuaternionDomainError("zero vector has no direction")
        return cls(Quaternion(0.0, x / n, y / n, z / n))

    def to_array(self) -> np.ndarray:
        return self.direction.to_array()

    @property
    def name(self) -> str:
        for label, ax in (("i", AXIS_I), ("j", AXIS_J), ("k", AXIS_K)):
            if ax.direction == self.direction:
                return label
        d = self.direction
        return f"{d.q1!r},{d.q2!r},{d.q3!r}"

    def __str__(self):
        return self.name


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion(
        p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
        p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
        p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
        p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.q0, -q.q1, -q.q2, -q.q3)


def modulus(q: Quaternion) -> float:
    return math.sqrt(q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3)


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3
    if n2 == 0.0:
        raise QuaternionDomainError("zero quaternion has no inverse")
    return Quaternion(q.q0 / n2, -q.q1 / n2, -q.q2 / n2, -q.q3 / n2)


def axis_exp(axis: PureUnitAxis, theta: float) -> Quaternion:
    """``cos(theta) + axis * sin(theta)``."""
    c, s = math.cos(theta), math.sin(theta)
    d = axis.direction
    return Quaternion(c, s * d.q1, s * d.q2, s * d.q3)


def sqrt_axis_phase(axis: PureUnitAxis) -> Quaternion:
    """Reciprocal square root of ``axis`` on the fixed branch ``exp(-axis pi/4)``."""
    return axis_exp(axis, -math.pi / 4)


AXIS_I = PureUnitAxis(Quaternion(0.0, 1.0, 0.0, 0.0))
AXIS_J = PureUnitAxis(Quaternion(0.0, 0.0, 1.0, 0.0))
AXIS_K = PureUnitAxis(Quaternion(0.0, 0.0, 0.0, 1.0))


# ---------------------------------------------------------------- arrays

def as_qarray(x) -> np.ndarray:
    """Coerce a Quaternion, axis, real or array to a float64 array with last axis 4."""
    if isinstance(x, Quaternion):
        return x.to_array()
    if isinstance(x, PureUnitAxis):
        return x.to_array()
    a = np.asarray(x, dtype=float)
    if a.ndim == 0:
        return np.array([float(a), 0.0, 0.0, 0.0])
    if a.shape[-1] != 4:
        raise ValueError(f"quaternion arrays need a trailing axis of length 4, got {a.shape}")
    return a


def qmul(p, q) -> np.ndarray:
    """Broadcasting Hamilton product of quaternion arrays."""
    p = as_qarray(p)
    q = as_qarray(q)
    p0, p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    r0, r1, r2, r3 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(np.broadcast_shapes(p.shape, q.shape))
    out[..., 0] = p0 * r0 - p1 * r1 - p2 * r2 - p3 * r3
    out[..., 1] = p0 * r1 + p1 * r0 + p2 * r3 - p3 * r2
    out[..., 2] = p0 * r2 - p1 * r3 + p2 * r0 + p3 * r1
    out[..., 3] = p0 * r3 + p1 * r2 - p2 * r1 + p3 * r0
    return out


def unit_left(unit: str, q) -> np.ndarray:
    """``i q``, ``j q`` or ``k q`` by component permutation."""
    q = as_qarray(q)
    a, b, c, d = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(q.shape)
    if unit == "i":
        out[..., 0], out[..., 1], out[..., 2], out[..., 3] = -b, a, -d, c
    elif unit == "j":
        out[..., 0], out[..., 1], out[..., 2], out[..., 3] = -c, d, a, -b
    elif unit == "k":
        out[..., 0], out[..., 1], out[..., 2], out[..., 3] = -d, -c, b, a
    else:
        raise ValueError(f"unknown unit {unit!r}")
    return out


def unit_right(q, unit: str) -> np.ndarray:
    """``q i``, ``q j`` or ``q k`` by component permutation."""
    q = as_qarray(q)
    a, b, c, d = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(q.shape)
    if unit == "i":
        out[..., 0], out[..., 1], out[..., 2], out[..., 3] = -b, a, d, -c
    elif unit == "j":
        out[..., 0], out[..., 1], out[..., 2], out[..., 3] = -c, -d, a, b
    elif unit == "k":
        out[..., 0], out[..., 1], out[..., 2], out[..., 3] = -d, c, -b, a
    else:
        raise ValueError(f"unknown unit {unit!r}")
    return out


def exp_left(axis: "PureUnitAxis", theta, q) -> np.ndarray:
    """``exp(axis theta) q`` as ``cos(theta) q + sin(theta) (axis q)``; ``theta`` broadcasts."""
    q = as_qarray(q)
    theta = np.asarray(theta, dtype=float)[..., None]
    name = axis.name
    aq = unit_left(name, q) if name in ("i", "j", "k") else qmul(axis.to_array(), q)
    return np.cos(theta) * q + np.sin(theta) * aq


def exp_right(q, axis: "PureUnitAxis", theta) -> np.ndarray:
    """``q exp(axis theta)``."""
    q = as_qarray(q)
    theta = np.asarray(theta, dtype=float)[..., None]
    name = axis.name
    qa = unit_right(q, name) if name in ("i", "j", "k") else qmul(q, axis.to_array())
    return np.cos(theta) * q + np.sin(theta) * qa


def qconj(q) -> np.ndarray:
    q = as_qarray(q)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qabs2(q) -> np.ndarray:
    q = as_qarray(q)
    return np.einsum("...k,...k->...", q, q)


def qabs(q) -> np.ndarray:
    return np.sqrt(qabs2(q))


def qscalar(q) -> np.ndarray:
    """``Sc(q) = (q + conj q) / 2`` as a quaternion array."""
    q = as_qarray(q)
    return 0.5 * (q + qconj(q))


def qvector(q) -> np.ndarray:
    """``Vec(q) = (q - conj q) / 2`` as a quaternion array."""
    q = as_qarray(q)
    return 0.5 * (q - qconj(q))


def axis_exp_array(axis: PureUnitAxis, theta) -> np.ndarray:
    """Elementwise ``exp(axis * theta)`` for an array of angles."""
    theta = np.asarray(theta, dtype=float)
    d = axis.to_array()
    out = np.empty(theta.shape + (4,))
    s = np.sin(theta)
    out[..., 0] = np.cos(theta)
    out[..., 1] = s * d[1]
    out[..., 2] = s * d[2]
    out[..., 3] = s * d[3]
    return out
