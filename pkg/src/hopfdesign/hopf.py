"""The Hopf fibration S^3 -> S^2, its circle action, sections and fiber averages."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .sphere import (
    MonomialS2,
    MonomialS3,
    PointS1,
    PointS2,
    PointS3,
    PolynomialS2,
    PolynomialS3,
)


@dataclass(frozen=True)
class Section:
    """Rule choosing a base point on each fiber.

    Points with ``xi > threshold`` use the chart that is regular away from
    the south pole, the rest use the chart regular away from the north pole.
    Square-root arguments stay above ``(1 - |threshold|) / 2``.
    """

    threshold: float = 0.0

    def __post_init__(self):
        if not -1.0 < self.threshold < 1.0:
            raise ValueError("chart threshold must lie in (-1, 1)")


DEFAULT_SECTION = Section()


# ---------------------------------------------------------------------------
# array kernels (used by the lift and the tests)
# ---------------------------------------------------------------------------

def hopf_arrays(a, b):
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    return np.abs(a) ** 2 - np.abs(b) ** 2, 2 * a * b


def act_arrays(a, b, z):
    a, b, z = np.asarray(a), np.asarray(b), np.asarray(z)
    return a * z, b * np.conj(z)


def section_arrays(xi, eta, threshold: float = 0.0):
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=complex)
    upper = xi > threshold
    # each branch only sees the arguments it is regular on
    xp = np.where(upper, xi, 0.0)
    xm = np.where(upper, 0.0, xi)
    a = np.where(upper, np.sqrt((1 + xp) / 2), eta / np.sqrt(2 * (1 - xm)))
    b = np.where(upper, eta / np.sqrt(2 * (1 + xp)), np.sqrt((1 - xm) / 2))
    return a.astype(complex), b.astype(complex)


# ---------------------------------------------------------------------------
# point-level operations
# ---------------------------------------------------------------------------

def hopf_map(x: PointS3) -> PointS2:
    """(a, b) -> (|a|^2 - |b|^2, 2ab)."""
    return PointS2(abs(x.a) ** 2 - abs(x.b) ** 2, 2 * x.a * x.b)


def act(x: PointS3, z: PointS1) -> PointS3:
    """Right circle action (a, b).z = (az, b conj(z))."""
    return PointS3(x.a * z.z, x.b * z.z.conjugate())


def section(y: PointS2, cfg: Section = DEFAULT_SECTION) -> PointS3:
    if y.xi > cfg.threshold:
        a = math.sqrt((1 + y.xi) / 2)
        b = y.eta / math.sqrt(2 * (1 + y.xi))
    else:
        a = y.eta / math.sqrt(2 * (1 - y.xi))
        b = math.sqrt((1 - y.xi) / 2)
    return PointS3(a, b)


def fiber_point(y: PointS2, z: PointS1, cfg: Section = DEFAULT_SECTION) -> PointS3:
    return act(section(y, cfg), z)


def fiber_quadrature(f: Callable | MonomialS3, y: PointS2, n: int,
                     cfg: Section = DEFAULT_SECTION) -> complex:
    """Average ``f`` over the regular n-gon on the fiber above ``y``.

    ``f`` is called with arrays ``(a, b)`` and must be vectorized; a
    :class:`MonomialS3` is accepted directly.  The result equals the fiber
    integral whenever the restriction of ``f`` to the fiber has degree < n.
    """
    if n < 1:
        raise ValueError("need at least one fiber point")
    if isinstance(f, MonomialS3):
        f = f.evaluate
    s = section(y, cfg)
    z = np.exp(2j * np.pi * np.arange(n) / n)
    a, b = act_arrays(s.a, s.b, z)
    return complex(np.mean(f(a, b)))


# ---------------------------------------------------------------------------
# symbolic pushforward and pullback
# ---------------------------------------------------------------------------

def pushforward_monomial(m: MonomialS3) -> PolynomialS2:
    """Fiber average of a^i conj(a)^j b^k conj(b)^l as a polynomial on S^2.

    Zero unless i + l == j + k; otherwise, with 2m the degree,

        (1 + xi)^(i-k) eta^k conj(eta)^(m-i) / 2^m    if i >= k
        (1 - xi)^(k-i) eta^i conj(eta)^(m-k) / 2^m    if i <= k
    """
    i, j, k, l = m
    if i + l != j + k:
        return PolynomialS2()
    half = (i + j + k + l) // 2
    if i >= k:
        sign, power, q, r = 1, i - k, k, half - i
    else:
        sign, power, q, r = -1, k - i, i, half - k
    scale = Fraction(1, 2 ** half)
    terms = {
        MonomialS2(s, q, r): scale * math.comb(power, s) * sign ** s
        for s in range(power + 1)
    }
    return PolynomialS2(terms)


def pushforward(f: PolynomialS3) -> PolynomialS2:
    out = PolynomialS2()
    for m, c in f.terms.items():
        out = out + pushforward_monomial(m) * c
    return out


def pullback_monomial(m: MonomialS2) -> PolynomialS3:
    """xi^p eta^q conj(eta)^r composed with the Hopf map.

    Expands 2^(q+r) (a conj(a) - b conj(b))^p a^q conj(a)^r b^q conj(b)^r.
    """
    p, q, r = m
    terms = {
        MonomialS3(s + q, s + r, p - s + q, p - s + r): (-1) ** (p - s) * math.comb(p, s) * 2 ** (q + r)
        for s in range(p + 1)
    }
    return PolynomialS3(terms)


def pullback(h: PolynomialS2) -> PolynomialS3:
    out = PolynomialS3()
    for m, c in h.terms.items():
        out = out + pullback_monomial(m) * c
    return out
