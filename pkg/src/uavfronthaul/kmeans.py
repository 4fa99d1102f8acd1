"""k-means baseline: UAVs hover over Lloyd centroids of the TSBS layout."""
from __future__ import annotations

import numpy as np

from .scenario import ChildUav, ScenarioConfig, tsbs_arrays, uavs_from_array


def farthest_point_seeds(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Random first seed, then repeatedly the point farthest from all seeds."""
    first = int(rng.integers(len(points)))
    chosen = [first]
    d2 = np.sum((points - points[first]) ** 2, axis=1)
    for _ in range(1, k):
        nxt = int(np.argmax(d2))
        chosen.append(nxt)
        d2 = np.minimum(d2, np.sum((points - points[nxt]) ** 2, axis=1))
    return points[chosen].copy()


def assign(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)
    return np.argmin(d2, axis=1)


def inertia(points: np.ndarray, centers: np.ndarray, labels: np.ndarray) -> float:
    return float(np.sum((points - centers[labels]) ** 2))


def lloyd(points, k: int, rng: np.random.Generator, max_iter: int = 100, trace: list | None = None):
    """Lloyd iterations from farthest-point seeds.

    Returns ``(centers, labels)``. An empty cluster is re-seeded at the point
    farthest from its current centroid that has not already been used for
    re-seeding in the same step. ``trace``, when given, receives the
    objective after every update.
    """
    points = np.asarray(points, dtype=float)
    if k < 1 or len(points) < k:
        raise ValueError(f"need at least k={k} points, got {len(points)}")
    centers = farthest_point_seeds(points, k, rng)
    labels = assign(points, centers)
    for _ in range(max_iter):
        claimed: set[int] = set()
        for c in range(k):
            members = labels == c
            if members.any():
                centers[c] = points[members].mean(axis=0)
            else:
                dist = np.sum((points - centers[labels]) ** 2, axis=1)
                for i in np.argsort(-dist, kind="stable"):
                    if int(i) not in claimed:
                        claimed.add(int(i))
                        centers[c] = points[i]
                        break
        new_labels = assign(points, centers)
        if trace is not None:
            trace.append(inertia(points, centers, new_labels))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    return centers, labels


def kmeans_placement(tsbss, cfg: ScenarioConfig, rng: np.random.Generator) -> list[ChildUav]:
    pos, _ = tsbs_arrays(tsbss)
    if len(pos) < cfg.num_uavs:
        raise ValueError(f"k-means needs T >= U (T={len(pos)}, U={cfg.num_uavs})")
    centers, _ = lloyd(pos, cfg.num_uavs, rng)
    xyz = np.column_stack([centers, np.full(cfg.num_uavs, cfg.uav_height)])
    return uavs_from_array(xyz)
