"""Per-line translation operators on k-space and trajectory gauge helpers.

A translation of readout line r by (beta_x, beta_y) pixels multiplies the
line by the phase ramp exp(-2i*pi*(k_x*beta_x + k_y*beta_y)) with k_x the
readout coordinate varying along the line and k_y = coord(r) fixed on it.
A trajectory that is constant across lines is an ordinary image-domain
circular shift.
"""

from __future__ import annotations

import numpy as np

from .core import FrequencyGrid, MotionTrajectory, normalized_line_weights, require_square_image
from .transforms import idft2

__all__ = [
    "apply_translation",
    "invert_translation",
    "naive_reconstruct",
    "fold_trajectory",
    "gauge_aligned",
]


def _grid_for(ksp, grid):
    if grid is None:
        return FrequencyGrid(ksp.shape[0])
    if grid.size != ksp.shape[0]:
        raise ValueError(f"grid size {grid.size} does not match array side {ksp.shape[0]}")
    return grid


def apply_translation(ksp, traj, grid=None):
    """Apply per-line phase ramps encoding the trajectory's translations."""
    ksp = require_square_image(ksp, "k-space").astype(np.complex128, copy=False)
    grid = _grid_for(ksp, grid)
    if len(traj) != ksp.shape[0]:
        raise ValueError(f"trajectory has {len(traj)} lines, k-space has {ksp.shape[0]} rows")
    k = grid.coords
    ramp = traj.dx[:, None] * k[None, :] + (traj.dy * k)[:, None]
    return ksp * np.exp(-2j * np.pi * ramp)


def invert_translation(ksp, traj, grid=None):
    """Undo :func:`apply_translation`; identical to applying -traj."""
    return apply_translation(ksp, -traj, grid)


def naive_reconstruct(ksp):
    """Zero-order reconstruction: inverse DFT ignoring any motion."""
    return idft2(ksp)


def fold_trajectory(traj, grid):
    """Reduce each phase-encode shift to its principal alias.

    On line r the data depend on beta_y only through exp(-2i*pi*k_y*beta_y),
    so beta_y is identifiable only modulo 1/|k_y|.  Folding maps it into
    [-1/(2|k_y|), 1/(2|k_y|)] and zeroes the DC line, where beta_y has no
    effect at all.  The readout shifts are untouched.  Applying the folded
    trajectory produces the same k-space as the original.
    """
    if len(traj) != grid.size:
        raise ValueError(f"trajectory has {len(traj)} lines, grid expects {grid.size}")
    k = grid.coords
    dy = traj.dy.copy()
    nonzero = k != 0.0
    dy[nonzero] -= np.round(dy[nonzero] * np.abs(k[nonzero])) / np.abs(k[nonzero])
    dy[~nonzero] = 0.0
    return MotionTrajectory.from_components(traj.dx, dy)


def gauge_aligned(traj, grid, weights=None, max_rounds=16, tol=1e-9):
    """Return the canonical data-equivalent form of a trajectory.

    Removes the weighted mean displacement (a global image shift, which the
    data cannot pin down) and folds phase-encode shifts to their principal
    aliases.  Folding and de-meaning interact, so the two are iterated to a
    fixed point.  The result is the representative against which estimated
    trajectories are comparable line by line.
    """
    w = normalized_line_weights(weights, len(traj))
    dx = traj.dx - w @ traj.dx
    dy = traj.dy.copy()
    k = grid.coords
    for _ in range(max_rounds):
        folded = fold_trajectory(MotionTrajectory.from_components(dx, dy), grid)
        mean = w @ folded.dy
        dy = folded.dy - mean
        if abs(mean) < tol:
            break
    return fold_trajectory(MotionTrajectory.from_components(dx, dy), grid)
