"""Rotation and rigid-pose algebra on SO(3) x R^3.

Rotations are unit quaternions (w, x, y, z), canonicalized to w >= 0 so the
double cover does not leak into equality tests. Poses map object-frame
coordinates into the world as R @ x + p.
"""

import math
from dataclasses import dataclass

import numpy as np

_SMALL_ANGLE = 1e-8

# Super-Fibonacci spiral constants (golden-ratio analogues on S^3).
_SF_PHI = math.sqrt(2.0)
_SF_PSI = 1.533751168755204288118041


def _as_vec3(x, name="vector"):
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (3,):
        raise ValueError(f"{name} must have shape (3,), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite, got {v}")
    return v


@dataclass(frozen=True, eq=False)
class Rotation:
    """Unit quaternion rotation, scalar-first, canonical hemisphere w >= 0."""

    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.float64)
        if q.shape != (4,):
            raise ValueError(f"quaternion must have shape (4,), got {q.shape}")
        if not np.all(np.isfinite(q)):
            raise ValueError("quaternion components must be finite")
        norm = math.sqrt(float(q @ q))
        if norm == 0.0:
            raise ValueError("zero quaternion is not a rotation")
        q = q / norm
        if q[0] < 0.0:
            q = -q
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    @staticmethod
    def identity():
        return Rotation(np.array([1.0, 0.0, 0.0, 0.0]))

    @staticmethod
    def from_matrix(m):
        """Build from a 3x3 rotation matrix (Shepperd's method)."""
        m = np.asarray(m, dtype=np.float64)
        if m.shape != (3, 3):
            raise ValueError(f"rotation matrix must be 3x3, got {m.shape}")
        t = np.trace(m)
        if t > 0.0:
            s = math.sqrt(t + 1.0) * 2.0
            q = np.array([0.25 * s,
                          (m[2, 1] - m[1, 2]) / s,
                          (m[0, 2] - m[2, 0]) / s,
                          (m[1, 0] - m[0, 1]) / s])
        else:
            i = int(np.argmax(np.diagonal(m)))
            j, k = (i + 1) % 3, (i + 2) % 3
            s = math.sqrt(max(m[i, i] - m[j, j] - m[k, k] + 1.0, 0.0)) * 2.0
            q = np.empty(4)
            q[0] = (m[k, j] - m[j, k]) / s
            q[1 + i] = 0.25 * s
            q[1 + j] = (m[j, i] + m[i, j]) / s
            q[1 + k] = (m[k, i] + m[i, k]) / s
        return Rotation(q)

    def matrix(self):
        w, x, y, z = self.q
        return np.array([
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ])

    def apply(self, v):
        """Rotate one 3-vector or an (N, 3) batch."""
        v = np.asarray(v, dtype=np.float64)
        return v @ self.matrix().T

    def compose(self, other):
        return Rotation(quat_mul(self.q, other.q))

    def inverse(self):
        w, x, y, z = self.q
        return Rotation(np.array([w, -x, -y, -z]))


def quat_mul(a, b):
    """Hamilton product of two (w, x, y, z) quaternions."""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ])


def rotation_exp(omega):
    """Exponential map: axis-angle (radians) to Rotation."""
    w = _as_vec3(omega, "omega")
    theta = math.sqrt(float(w @ w))
    if theta < _SMALL_ANGLE:
        # second-order Taylor of sin(t/2)/t and cos(t/2)
        k = 0.5 - theta * theta / 48.0
        qw = 1.0 - theta * theta / 8.0
    else:
        k = math.sin(0.5 * theta) / theta
        qw = math.cos(0.5 * theta)
    return Rotation(np.array([qw, k * w[0], k * w[1], k * w[2]]))


def rotation_log(r):
    """Logarithm map: Rotation to axis-angle with angle in [0, pi]."""
    qw = float(r.q[0])
    v = np.asarray(r.q[1:], dtype=np.float64)
    s = math.sqrt(float(v @ v))
    if s < _SMALL_ANGLE:
        # q ~ (1, omega/2); first-order inverse suffices at this scale
        return 2.0 * v / qw
    angle = 2.0 * math.atan2(s, qw)
    return v * (angle / s)


def geodesic_distance(a, b):
    """Angle in [0, pi] of the relative rotation between a and b."""
    rel = quat_mul(np.array([a.q[0], -a.q[1], -a.q[2], -a.q[3]]), b.q)
    s = math.sqrt(float(rel[1:] @ rel[1:]))
    return 2.0 * math.atan2(s, abs(float(rel[0])))


@dataclass(frozen=True, eq=False)
class Pose:
    """Rigid transform: world_point = rotation @ x + translation (metres)."""

    rotation: Rotation
    translation: np.ndarray

    def __post_init__(self):
        t = _as_vec3(self.translation, "translation")
        t.setflags(write=False)
        object.__setattr__(self, "translation", t)

    @staticmethod
    def identity():
        return Pose(Rotation.identity(), np.zeros(3))

    @staticmethod
    def from_matrix(m):
        m = np.asarray(m, dtype=np.float64)
        if m.shape != (4, 4):
            raise ValueError(f"pose matrix must be 4x4, got {m.shape}")
        if not np.allclose(m[3], [0.0, 0.0, 0.0, 1.0], atol=1e-9):
            raise ValueError("pose matrix must have homogeneous last row")
        return Pose(Rotation.from_matrix(m[:3, :3]), m[:3, 3])

    def matrix(self):
        m = np.eye(4)
        m[:3, :3] = self.rotation.matrix()
        m[:3, 3] = self.translation
        return m


def pose_apply(pose, x):
    """Apply R @ x + p to one point or an (N, 3) batch."""
    return pose.rotation.apply(x) + pose.translation


def pose_compose(a, b):
    """Composition: (a o b)(x) = a(b(x))."""
    return Pose(a.rotation.compose(b.rotation),
                a.rotation.apply(b.translation) + a.translation)


def pose_inverse(pose):
    rinv = pose.rotation.inverse()
    return Pose(rinv, -rinv.apply(pose.translation))


@dataclass(frozen=True)
class TangentDelta:
    """Optimizer update coordinates: omega (radians), v (metres)."""

    omega: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "omega", _as_vec3(self.omega, "omega"))
        object.__setattr__(self, "v", _as_vec3(self.v, "v"))

    def as_array(self):
        return np.concatenate([self.omega, self.v])


def random_rotation(rng):
    """Haar-uniform rotation via a normalized 4D Gaussian sample."""
    q = rng.standard_normal(4)
    while (q @ q) < 1e-12:
        q = rng.standard_normal(4)
    return Rotation(q)


def super_fibonacci_quats(n):
    """Low-discrepancy deterministic n-point set on SO(3)."""
    i = np.arange(n, dtype=np.float64)
    s = i + 0.5
    r = np.sqrt(s / n)
    big_r = np.sqrt(1.0 - s / n)
    alpha = 2.0 * np.pi * s / _SF_PHI
    beta = 2.0 * np.pi * s / _SF_PSI
    q = np.empty((n, 4))
    q[:, 0] = r * np.sin(alpha)
    q[:, 1] = r * np.cos(alpha)
    q[:, 2] = big_r * np.sin(beta)
    q[:, 3] = big_r * np.cos(beta)
    return q


def rotation_grid(n, seed=0, method="super_fibonacci"):
    """Deterministic set of n rotations spread over SO(3).

    The default Super-Fibonacci construction gives near-optimal covering for
    any n. The whole set is conjugated by a seeded random rotation (an
    isometry, so covering properties are seed-independent) and anchored so
    the first element is exactly the identity.
    """
    if n < 1:
        raise ValueError(f"rotation grid size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    if method == "super_fibonacci":
        base = super_fibonacci_quats(n)
    elif method == "random":
        base = rng.standard_normal((n, 4))
        base /= np.linalg.norm(base, axis=1, keepdims=True)
    else:
        raise ValueError(f"unknown rotation grid method: {method!r}")
    g = random_rotation(rng).q
    rotations = []
    first = Rotation(quat_mul(base[0], g))
    first_inv = first.inverse()
    for k in range(n):
        if k == 0:
            rotations.append(Rotation.identity())
            continue
        rk = Rotation(quat_mul(base[k], g))
        rotations.append(first_inv.compose(rk))
    return rotations


def pose_to_list(pose):
    """Serialize as [qw, qx, qy, qz, px, py, pz]."""
    return [float(v) for v in pose.rotation.q] + [float(v) for v in pose.translation]


def pose_from_obj(obj):
    """Parse a pose from a 7-list, a flat 16-list, or a nested 4x4 (row-major)."""
    arr = np.asarray(obj, dtype=np.float64)
    if arr.shape == (7,):
        return Pose(Rotation(arr[:4]), arr[4:])
    if arr.shape == (16,):
        return Pose.from_matrix(arr.reshape(4, 4))
    if arr.shape == (4, 4):
        return Pose.from_matrix(arr)
    raise ValueError(f"cannot parse pose from shape {arr.shape}")
