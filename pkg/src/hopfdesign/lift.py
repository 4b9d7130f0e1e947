"""Lifting S^2 designs to S^3 designs through the Hopf fibration."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .generators import regular_gon
from .hopf import DEFAULT_SECTION, Section, section_arrays
from .sphere import WeightedDesign

PHASE_MODES = ("zero", "random", "explicit")
MERGE_RADIUS = 1e-10


@dataclass(frozen=True)
class LiftConfig:
    gon_size: int
    phase_mode: str = "zero"
    seed: int | None = None
    phases: tuple[float, ...] = ()
    section: Section = DEFAULT_SECTION
    merge: bool = False

    def __post_init__(self):
        if self.gon_size < 1:
            raise ValueError("gon_size must be >= 1")
        if self.phase_mode not in PHASE_MODES:
            raise ValueError(f"phase_mode must be one of {PHASE_MODES}")
        if self.phase_mode == "random" and self.seed is None:
            raise ValueError("random phases need a seed")
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))

    def fiber_phases(self, n_fibers: int) -> np.ndarray:
        """Rotation of the gon on each fiber; fiber i only depends on (seed, i)."""
        if self.phase_mode == "zero":
            return np.zeros(n_fibers)
        if self.phase_mode == "random":
            return np.array([np.random.default_rng([self.seed, i]).uniform(0, 2 * np.pi)
                             for i in range(n_fibers)])
        if len(self.phases) != n_fibers:
            raise ValueError(f"explicit phases: got {len(self.phases)} for {n_fibers} fibers")
        return np.array(self.phases)


def lift_weighted(base: WeightedDesign, fibers: Sequence[WeightedDesign],
                  section: Section = DEFAULT_SECTION, merge: bool = False,
                  meta: dict | None = None) -> WeightedDesign:
    """Weighted lift with an arbitrary circle design per fiber.

    The point ``s_y . gamma`` for ``gamma`` in ``fibers[n]`` (``y`` the n-th
    base point) receives weight ``w(y) * w(gamma)``.  If the base design
    integrates P_{t}(S^2) and every fiber design integrates P_{2t}(S^1),
    the result integrates P_{2t}(S^3).
    """
    if base.sphere != "s2":
        raise ValueError(f"can only lift S^2 designs, got {base.sphere}")
    if len(fibers) != len(base):
        raise ValueError(f"need one fiber design per base point ({len(base)}), got {len(fibers)}")
    a0, b0 = section_arrays(base.xi, base.eta, section.threshold)
    a_parts, b_parts, w_parts = [], [], []
    for a, b, wy, gamma in zip(a0, b0, base.weights, fibers):
        if gamma.sphere != "s1":
            raise ValueError("fiber designs must live on S^1")
        z = gamma.z
        a_parts.append(a * z)
        b_parts.append(b * np.conj(z))
        w_parts.append(wy * gamma.weights)
    a = np.concatenate(a_parts)
    b = np.concatenate(b_parts)
    w = np.concatenate(w_parts)
    coords = np.column_stack([a.real, a.imag, b.real, b.imag])
    if merge:
        coords, w = merge_duplicates(coords, w)
    return WeightedDesign("s3", coords, w / w.sum(), meta)


def lift_design(base: WeightedDesign, cfg: LiftConfig) -> WeightedDesign:
    """Place a rotated regular gon of ``cfg.gon_size`` points on every fiber.

    For an equal-weight t-design ``base`` and gon_size >= 2t+1 the output is
    an equal-weight 2t-design on S^3 (2t+1-design once gon_size >= 2t+2),
    with ``len(base) * gon_size`` points.
    """
    phases = cfg.fiber_phases(len(base))
    fibers = [regular_gon(cfg.gon_size, p) for p in phases]
    meta = {
        "generator": "lift",
        "gon_size": cfg.gon_size,
        "phases": cfg.phase_mode,
        "chart_threshold": cfg.section.threshold,
        "base_size": len(base),
    }
    if cfg.seed is not None:
        meta["seed"] = cfg.seed
    if base.meta:
        meta["base"] = base.meta
    return lift_weighted(base, fibers, cfg.section, cfg.merge, meta)


def merge_duplicates(coords: np.ndarray, weights: np.ndarray, radius: float = MERGE_RADIUS):
    """Collapse points closer than ``radius``, summing their weights."""
    # scipy is slow to import and only needed here
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components
    from scipy.spatial import cKDTree

    pairs = cKDTree(coords).query_pairs(radius, output_type="ndarray")
    if not len(pairs):
        return coords, weights
    n = len(coords)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    n_groups, label = connected_components(graph, directed=False)
    # keep the first member of each group, in input order
    _, first = np.unique(label, return_index=True)
    order = np.argsort(first)
    merged_w = np.bincount(label, weights=weights, minlength=n_groups)
    return coords[first[order]], merged_w[order]


@dataclass(frozen=True)
class CardinalityReport:
    t: int
    size: int
    bound_even: int = field(init=False)
    bound_odd: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "bound_even", (2 * self.t + 1) * (self.t + 1) ** 2)
        object.__setattr__(self, "bound_odd", 2 * (self.t + 1) ** 3)

    @property
    def meets_even(self) -> bool:
        return self.size <= self.bound_even

    @property
    def meets_odd(self) -> bool:
        return self.size <= self.bound_odd

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "size": self.size,
            "bound_2t": self.bound_even,
            "bound_2t_plus_1": self.bound_odd,
            "meets_2t": self.meets_even,
            "meets_2t_plus_1": self.meets_odd,
        }

    def __str__(self) -> str:
        def mark(ok):
            return "<=" if ok else ">"
        return (
            f"|X| = {self.size}\n"
            f"  (2t+1)(t+1)^2 = {self.bound_even}  [{self.size} {mark(self.meets_even)} {self.bound_even}]\n"
            f"  2(t+1)^3      = {self.bound_odd}  [{self.size} {mark(self.meets_odd)} {self.bound_odd}]"
        )


def cardinality_report(t: int, design: WeightedDesign | int) -> CardinalityReport:
    """Compare a design's size with the (t+1)^2-node comparison bounds."""
    if t < 0:
        raise ValueError("degree must be non-negative")
    size = design if isinstance(design, int) else len(design)
    return CardinalityReport(t, size)
