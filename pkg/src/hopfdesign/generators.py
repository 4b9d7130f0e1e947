"""Input designs: circle gons, interval designs and latitude-product S^2 designs."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import designfile
from .errors import NoConvergence
from .sphere import WeightedDesign

log = logging.getLogger(__name__)

INTERVAL_TOL = 1e-12
# nodes closer than this count as coincident
NODE_SEPARATION = 1e-9


def regular_gon(n: int, phase: float = 0.0) -> WeightedDesign:
    """The n-th roots of unity rotated by ``phase``; an (n-1)-design on S^1."""
    if n < 1:
        raise ValueError("a gon needs at least one vertex")
    z = np.exp(1j * (phase + 2 * np.pi * np.arange(n) / n))
    return WeightedDesign("s1", np.column_stack([z.real, z.imag]),
                          meta={"generator": "s1-gon", "n": n, "phase": float(phase)})


def antipodal_pair() -> WeightedDesign:
    """North and south pole of S^2, a 1-design."""
    return WeightedDesign("s2", [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
                          meta={"generator": "s2-antipodal"})


# ---------------------------------------------------------------------------
# interval designs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalDesign:
    """Quadrature nodes on (-1, 1) for the uniform probability measure."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def equal_weight(self) -> bool:
        return bool(np.ptp(self.weights) <= 1e-15)

    @property
    def weight(self) -> float:
        if not self.equal_weight:
            raise ValueError("weighted interval rule has no common weight")
        return float(self.weights[0])

    def __len__(self) -> int:
        return len(self.nodes)

    def residuals(self, t: int) -> np.ndarray:
        """|sum w x^k - E[x^k]| for k = 0..t."""
        k = np.arange(t + 1)
        exact = np.where(k % 2 == 0, 1.0 / (k + 1), 0.0)
        sums = (self.weights[None, :] * self.nodes[None, :] ** k[:, None]).sum(axis=1)
        return np.abs(sums - exact)


def default_node_hint(t: int) -> int:
    """Smallest even count >= (t + 2) / 2; one node suffices for t = 0."""
    if t == 0:
        return 1
    m = -(-(t + 2) // 2)
    return m + (m % 2)


def _solve_symmetric(t: int, m: int, max_iter: int = 200) -> np.ndarray | None:
    """Equal-weight nodes +-x_j (plus 0 when m is odd) via damped Gauss-Newton.

    Only the even moments 2, 4, ..., t need matching; odd ones vanish by
    symmetry.  Starts from the positive Gauss-Legendre nodes of order m.
    """
    gl = np.polynomial.legendre.leggauss(m)[0]
    x = np.sort(gl[gl > 1e-15])
    ks = np.arange(2, t + 1, 2)
    if ks.size and x.size == 0:
        return None
    # sum_j x_j^k must equal m / (2 (k + 1))
    target = m / (2.0 * (ks + 1))

    def f(x):
        return (x[None, :] ** ks[:, None]).sum(axis=1) - target

    r = f(x)
    for _ in range(max_iter):
        if not ks.size or np.max(np.abs(r)) * 2 / m < 0.01 * INTERVAL_TOL:
            break
        jac = ks[:, None] * x[None, :] ** (ks[:, None] - 1)
        step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        norm = np.linalg.norm(r)
        lam = 1.0
        while lam > 1e-10:
            trial = x + lam * step
            if np.all((trial > 0) & (trial < 1)):
                r_trial = f(trial)
                if np.linalg.norm(r_trial) < norm * (1 - 1e-4 * lam):
                    break
            lam /= 2
        else:
            break
        x, r = trial, r_trial
    nodes = np.sort(np.concatenate([-x, np.zeros(m % 2), x]))
    return nodes


def interval_design(t: int, m: int | None = None, max_factor: int = 8) -> IntervalDesign:
    """Equal-weight interval t-design on (-1, 1), symmetric about 0.

    Tries ``m`` nodes first (default :func:`default_node_hint`) and adds
    one node at a time up to ``max_factor * m``.  Raises NoConvergence when
    no count in that range yields distinct nodes with moment residuals
    below 1e-12.
    """
    if t < 0:
        raise ValueError("degree must be non-negative")
    m = default_node_hint(t) if m is None else m
    if m < 1:
        raise ValueError("need at least one node")
    for count in range(m, max_factor * m + 1):
        nodes = _solve_symmetric(t, count)
        if nodes is None:
            continue
        if count > 1 and np.min(np.diff(nodes)) < NODE_SEPARATION:
            continue
        if not np.all(np.abs(nodes) < 1):
            continue
        rule = IntervalDesign(nodes, np.full(count, 1.0 / count))
        if np.max(rule.residuals(t)) < INTERVAL_TOL:
            if count != m:
                log.debug("interval %d-design needed %d nodes (hint %d)", t, count, m)
            return rule
    raise NoConvergence(
        f"no equal-weight interval {t}-design with {m}..{max_factor * m} nodes")


def gauss_legendre_interval(t: int) -> IntervalDesign:
    """Weighted fallback: Gauss-Legendre nodes exact to degree >= t."""
    n = t // 2 + 1
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return IntervalDesign(nodes, weights / 2)


# ---------------------------------------------------------------------------
# S^2 designs
# ---------------------------------------------------------------------------

def latitude_phases(count: int, mode: str = "zero", seed: int | None = None) -> np.ndarray:
    if mode == "zero":
        return np.zeros(count)
    if mode == "random":
        if seed is None:
            raise ValueError("random phases need a seed")
        return np.array([np.random.default_rng([seed, i]).uniform(0, 2 * np.pi)
                         for i in range(count)])
    raise ValueError(f"unknown phase mode {mode!r}")


def product_design_s2(t: int, rule: IntervalDesign | None = None, phases: str = "zero",
                      seed: int | None = None, weighted_fallback: bool = False) -> WeightedDesign:
    """Union of regular (t+1)-gons on the latitude circles xi = node.

    The result is a t-design on S^2 whenever ``rule`` integrates
    polynomials of degree <= t on (-1, 1) exactly.  It is equal-weight when
    the rule is.
    """
    if t < 0:
        raise ValueError("degree must be non-negative")
    if rule is None:
        try:
            rule = interval_design(t)
        except NoConvergence:
            if not weighted_fallback:
                raise
            log.warning("falling back to weighted Gauss-Legendre latitudes for t=%d", t)
            rule = gauss_legendre_interval(t)
    gon = t + 1
    offsets = latitude_phases(len(rule), phases, seed)
    k = 2 * np.pi * np.arange(gon) / gon
    rows, weights = [], []
    for xi, w, phi in zip(rule.nodes, rule.weights, offsets):
        rho = np.sqrt(max(0.0, 1.0 - xi * xi))
        eta = rho * np.exp(1j * (phi + k))
        rows.append(np.column_stack([np.full(gon, xi), eta.real, eta.imag]))
        weights.append(np.full(gon, w / gon))
    weights = np.concatenate(weights)
    meta = {"generator": "s2-product", "t": t, "latitudes": len(rule), "phases": phases}
    if seed is not None:
        meta["seed"] = seed
    return WeightedDesign("s2", np.vstack(rows), weights / weights.sum(), meta)


def ingest_design(path: str | Path, sphere: str | None = None,
                  renormalize: bool = False) -> WeightedDesign:
    """Load an externally computed design, e.g. an S^2 design to be lifted."""
    return designfile.read_design(path, sphere=sphere, renormalize=renormalize)
