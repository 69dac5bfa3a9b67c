"""gridfit: 6-DoF pose estimation of known models against density grids."""

from gridfit.geometry import (
    Pose,
    Rotation,
    TangentDelta,
    geodesic_distance,
    pose_apply,
    pose_compose,
    pose_inverse,
    rotation_exp,
    rotation_grid,
    rotation_log,
)

__all__ = [
    "Pose",
    "Rotation",
    "TangentDelta",
    "geodesic_distance",
    "pose_apply",
    "pose_compose",
    "pose_inverse",
    "rotation_exp",
    "rotation_grid",
    "rotation_log",
]

__version__ = "0.1.0"
