"""Design-strength certification against exact sphere moments."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import QuadratureFailure
from .sphere import (
    MONOMIAL_TYPES,
    MonomialS1,
    MonomialS2,
    MonomialS3,
    WeightedDesign,
    basis_monomials,
    moment,
    monomials_of_degree,
)

DEFAULT_TOL = 1e-9
QUADRATURE_TOL = 1e-9


@dataclass
class StrengthReport:
    sphere: str
    max_degree: int
    tol: float
    residuals: list[float]
    basis_sizes: list[int]
    worst: list[tuple] = field(default_factory=list)
    method: str = "exact"

    @property
    def certified_strength(self) -> int:
        """Largest t such that every degree <= t passes; -1 if degree 0 fails."""
        strength = -1
        for r in self.residuals:
            if not r <= self.tol:
                break
            strength += 1
        return strength

    def as_dict(self) -> dict:
        return {
            "sphere": self.sphere,
            "max_degree": self.max_degree,
            "tol": self.tol,
            "method": self.method,
            "certified_strength": self.certified_strength,
            "degrees": [
                {"degree": n, "monomials": size, "max_residual": r,
                 "worst": list(w) if w is not None else None}
                for n, (r, size, w) in enumerate(zip(
                    self.residuals, self.basis_sizes,
                    self.worst or [None] * len(self.residuals)))
            ],
        }

    def __str__(self) -> str:
        lines = [f"{'degree':>6}  {'monomials':>9}  {'max residual':>12}  worst monomial"]
        worst = self.worst or [None] * len(self.residuals)
        for n, (r, size, w) in enumerate(zip(self.residuals, self.basis_sizes, worst)):
            flag = "" if r <= self.tol else "  FAIL"
            lines.append(f"{n:>6}  {size:>9}  {r:>12.3e}  {w if w is not None else '-'}{flag}")
        lines.append(f"certified strength: {self.certified_strength} "
                     f"(sphere {self.sphere}, tol {self.tol:g}, max degree {self.max_degree})")
        return "\n".join(lines)


def residual(design: WeightedDesign, m) -> float:
    """|sum_x w(x) m(x) - integral of m| for a single monomial."""
    if not isinstance(m, MONOMIAL_TYPES[design.sphere]):
        raise TypeError(f"{type(m).__name__} does not live on {design.sphere}")
    return abs(np.dot(design.weights, _evaluate(design, m)) - float(moment(m)))


def _evaluate(design: WeightedDesign, m) -> np.ndarray:
    if design.sphere == "s1":
        return m.evaluate(design.z)
    if design.sphere == "s2":
        return m.evaluate(design.xi, design.eta)
    return m.evaluate(design.a, design.b)


# ---------------------------------------------------------------------------
# batched power sums
# ---------------------------------------------------------------------------

def _powers(x: np.ndarray, n: int) -> np.ndarray:
    out = np.empty((n + 1, x.size), dtype=complex)
    out[0] = 1.0
    for k in range(1, n + 1):
        out[k] = out[k - 1] * x
    return out


def _pair_powers(x: np.ndarray, n: int) -> np.ndarray:
    """Array [i, j, point] = x^i conj(x)^j."""
    p = _powers(x, n)
    return p[:, None, :] * np.conj(p)[None, :, :]


@lru_cache(maxsize=None)
def _moment_tensor(sphere: str, n: int) -> np.ndarray:
    if sphere == "s3":
        out = np.zeros((n + 1,) * 4)
        for i in range(n // 2 + 1):
            for k in range(n // 2 + 1 - i):
                out[i, i, k, k] = float(moment(MonomialS3(i, i, k, k)))
    elif sphere == "s2":
        out = np.zeros((n + 1,) * 3)
        for p in range(0, n + 1, 2):
            for q in range((n - p) // 2 + 1):
                out[p, q, q] = float(moment(MonomialS2(p, q, q)))
    else:
        out = np.zeros(n + 1)
        out[0] = 1.0
    out.setflags(write=False)
    return out


def _power_sums(design: WeightedDesign, n: int) -> np.ndarray:
    w = design.weights
    if design.sphere == "s3":
        pa = _pair_powers(design.a, n).reshape(-1, len(design))
        pb = _pair_powers(design.b, n).reshape(-1, len(design))
        return ((pa * w) @ pb.T).reshape((n + 1,) * 4)
    if design.sphere == "s2":
        px = _powers(design.xi.astype(complex), n)
        pe = _pair_powers(design.eta, n).reshape(-1, len(design))
        return ((px * w) @ pe.T).reshape((n + 1,) * 3)
    return _powers(design.z, n) @ w


def certify(design: WeightedDesign, max_degree: int, tol: float = DEFAULT_TOL) -> StrengthReport:
    """Residuals of every ambient monomial of degree <= max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    n = max_degree
    diff = np.abs(_power_sums(design, n) - _moment_tensor(design.sphere, n))
    mono = MONOMIAL_TYPES[design.sphere]
    residuals, sizes, worst = [], [], []
    if design.sphere == "s1":
        # z^-d sums are the conjugates of z^d sums, so the residuals match
        for d in range(n + 1):
            residuals.append(float(diff[d]))
            sizes.append(1 if d == 0 else 2)
            worst.append(tuple(mono(d)))
    else:
        grids = np.indices(diff.shape)
        degree = grids.sum(axis=0)
        for d in range(n + 1):
            mask = degree == d
            vals = diff[mask]
            at = int(np.argmax(vals))
            residuals.append(float(vals[at]))
            sizes.append(int(mask.sum()))
            worst.append(tuple(int(g[mask][at]) for g in grids))
    return StrengthReport(design.sphere, max_degree, tol, residuals, sizes, worst)


# ---------------------------------------------------------------------------
# independent oracle: adaptive quadrature in angular coordinates
# ---------------------------------------------------------------------------

def _quad(f, lo, hi):
    from scipy import integrate

    value, err = integrate.quad(f, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
    return value, err


def _fourier_mean(freq: int):
    """(1/2pi) int_0^{2pi} exp(i freq theta) dtheta, with its error bound."""
    re, e1 = _quad(lambda th: math.cos(freq * th), 0.0, 2 * math.pi)
    im, e2 = _quad(lambda th: math.sin(freq * th), 0.0, 2 * math.pi)
    return complex(re, im) / (2 * math.pi), (e1 + e2) / (2 * math.pi)


@lru_cache(maxsize=None)
def numeric_moment(m) -> complex:
    """Integral of a monomial by adaptive quadrature in spherical angles.

    S^3 uses (cos phi e^{i th1}, sin phi e^{i th2}) with density
    sin(2 phi) / (4 pi^2); S^2 uses (cos psi, sin psi e^{i phi}) with density
    sin(psi) / (4 pi).  The monomials factor over the angles, so each factor
    is integrated separately.  Raises QuadratureFailure when the combined
    error estimate exceeds 1e-9.
    """
    if isinstance(m, MonomialS3):
        i, j, k, l = m
        radial, er = _quad(
            lambda p: math.sin(2 * p) * math.cos(p) ** (i + j) * math.sin(p) ** (k + l),
            0.0, math.pi / 2)
        f1, e1 = _fourier_mean(i - j)
        f2, e2 = _fourier_mean(k - l)
        # 2pi * 2pi / (4 pi^2) = 1 once the angular means are taken
        value = radial * f1 * f2
        err = er * abs(f1 * f2) + abs(radial) * (e1 + e2) + er * (e1 + e2)
    elif isinstance(m, MonomialS2):
        p, q, r = m
        polar, er = _quad(
            lambda s: math.sin(s) * math.cos(s) ** p * math.sin(s) ** (q + r), 0.0, math.pi)
        f, ef = _fourier_mean(q - r)
        value = polar * f / 2
        err = (er * abs(f) + abs(polar) * ef + er * ef) / 2
    elif isinstance(m, MonomialS1):
        value, err = _fourier_mean(m.d)
    else:
        raise TypeError(f"not a monomial: {m!r}")
    if err > QUADRATURE_TOL:
        raise QuadratureFailure(f"error estimate {err:.2e} for {m!r}")
    return value


def brute_force_certify(design: WeightedDesign, max_degree: int,
                        tol: float = DEFAULT_TOL) -> StrengthReport:
    """Same contract as :func:`certify`, built from numeric moments and
    per-monomial sums.  Meant as a cross-check for small cases only."""
    if max_degree > 6:
        raise ValueError("brute force certification is limited to degree 6")
    if len(design) > 1000:
        raise ValueError("brute force certification is limited to 1000 points")
    residuals, sizes, worst = [], [], []
    for n in range(max_degree + 1):
        monos = monomials_of_degree(design.sphere, n)
        vals = [abs(np.dot(design.weights, _evaluate(design, m)) - numeric_moment(m))
                for m in monos]
        at = int(np.argmax(vals))
        residuals.append(float(vals[at]))
        sizes.append(len(monos))
        worst.append(tuple(monos[at]))
    return StrengthReport(design.sphere, max_degree, tol, residuals, sizes, worst,
                          method="quadrature")


def strength(design: WeightedDesign, max_degree: int, tol: float = DEFAULT_TOL) -> int:
    return certify(design, max_degree, tol).certified_strength


__all__ = [
    "DEFAULT_TOL",
    "StrengthReport",
    "basis_monomials",
    "brute_force_certify",
    "certify",
    "numeric_moment",
    "residual",
    "strength",
]
