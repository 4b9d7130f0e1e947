"""Points, monomials, polynomials and exact moments on S^1, S^2 and S^3.

Coordinates follow the complex conventions

    S^1 = {z : |z| = 1}                       in C
    S^2 = {(xi, eta) : xi^2 + |eta|^2 = 1}    in R x C
    S^3 = {(a, b) : |a|^2 + |b|^2 = 1}        in C^2

and all integrals are against the rotation-invariant probability measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import OffSphere

UNIT_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-10
EQUAL_WEIGHT_TOL = 1e-12

SPHERES = ("s1", "s2", "s3")
# number of real coordinates per point, in file order
COORD_DIM = {"s1": 2, "s2": 3, "s3": 4}


def _check_unit(norm2: float, what: object) -> None:
    if not abs(norm2 - 1.0) <= UNIT_TOL:
        raise OffSphere(f"{what} is off the sphere: |x|^2 - 1 = {norm2 - 1.0:.3e}")


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointS1:
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        _check_unit(abs(self.z) ** 2, self)

    def coords(self) -> tuple[float, float]:
        return (self.z.real, self.z.imag)


@dataclass(frozen=True)
class PointS2:
    xi: float
    eta: complex

    def __post_init__(self):
        object.__setattr__(self, "xi", float(self.xi))
        object.__setattr__(self, "eta", complex(self.eta))
        _check_unit(self.xi ** 2 + abs(self.eta) ** 2, self)

    def coords(self) -> tuple[float, float, float]:
        return (self.xi, self.eta.real, self.eta.imag)


@dataclass(frozen=True)
class PointS3:
    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        _check_unit(abs(self.a) ** 2 + abs(self.b) ** 2, self)

    def coords(self) -> tuple[float, float, float, float]:
        return (self.a.real, self.a.imag, self.b.real, self.b.imag)


POINT_TYPES = {"s1": PointS1, "s2": PointS2, "s3": PointS3}


def sphere_of(point) -> str:
    for name, cls in POINT_TYPES.items():
        if isinstance(point, cls):
            return name
    raise TypeError(f"not a sphere point: {point!r}")


def _point_from_row(sphere: str, row) -> PointS1 | PointS2 | PointS3:
    if sphere == "s1":
        return PointS1(complex(row[0], row[1]))
    if sphere == "s2":
        return PointS2(row[0], complex(row[1], row[2]))
    return PointS3(complex(row[0], row[1]), complex(row[2], row[3]))


# ---------------------------------------------------------------------------
# weighted designs
# ---------------------------------------------------------------------------

class WeightedDesign:
    """A finite point set on one sphere with positive weights summing to one.

    Points are held as an ``(N, dim)`` array of real coordinates in file
    order (see ``COORD_DIM``); the complex coordinates are exposed as
    ``z``, ``xi``/``eta`` or ``a``/``b`` depending on the sphere.
    Arrays are read-only, so a design is an immutable value.
    """

    def __init__(self, sphere: str, coords, weights=None, meta: Mapping | None = None):
        if sphere not in SPHERES:
            raise ValueError(f"unknown sphere {sphere!r}")
        coords = np.array(coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != COORD_DIM[sphere]:
            raise ValueError(
                f"{sphere} points need {COORD_DIM[sphere]} coordinates, got shape {coords.shape}")
        n = coords.shape[0]
        if n == 0:
            raise ValueError("a design needs at least one point")
        norm2 = np.einsum("ij,ij->i", coords, coords)
        bad = np.flatnonzero(np.abs(norm2 - 1.0) > UNIT_TOL)
        if bad.size:
            i = bad[0]
            raise OffSphere(
                f"point {i} {coords[i].tolist()} is off {sphere}: |x|^2 - 1 = {norm2[i] - 1.0:.3e}")
        if weights is None:
            weights = np.full(n, 1.0 / n)
        weights = np.array(weights, dtype=float)
        if weights.shape != (n,):
            raise ValueError(f"expected {n} weights, got shape {weights.shape}")
        if not np.all(weights > 0):
            raise ValueError("weights must be positive")
        if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {weights.sum()!r}, not 1")
        coords.setflags(write=False)
        weights.setflags(write=False)
        self.sphere = sphere
        self.coords = coords
        self.weights = weights
        self.meta = dict(meta or {})

    @classmethod
    def from_points(cls, points, weights=None, meta=None) -> "WeightedDesign":
        points = list(points)
        if not points:
            raise ValueError("a design needs at least one point")
        sphere = sphere_of(points[0])
        if any(sphere_of(p) != sphere for p in points):
            raise ValueError("points live on different spheres")
        return cls(sphere, [p.coords() for p in points], weights, meta)

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __repr__(self) -> str:
        return f"WeightedDesign({self.sphere}, n={len(self)}, equal_weight={self.equal_weight})"

    @property
    def points(self) -> list:
        return [_point_from_row(self.sphere, row) for row in self.coords]

    @property
    def equal_weight(self) -> bool:
        return self.weights.max() / self.weights.min() - 1.0 < EQUAL_WEIGHT_TOL

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def _need(self, sphere: str) -> None:
        if self.sphere != sphere:
            raise AttributeError(f"coordinate not defined on {self.sphere}")

    @property
    def z(self) -> np.ndarray:
        self._need("s1")
        return self.coords[:, 0] + 1j * self.coords[:, 1]

    @property
    def xi(self) -> np.ndarray:
        self._need("s2")
        return self.coords[:, 0].copy()

    @property
    def eta(self) -> np.ndarray:
        self._need("s2")
        return self.coords[:, 1] + 1j * self.coords[:, 2]

    @property
    def a(self) -> np.ndarray:
        self._need("s3")
        return self.coords[:, 0] + 1j * self.coords[:, 1]

    @property
    def b(self) -> np.ndarray:
        self._need("s3")
        return self.coords[:, 2] + 1j * self.coords[:, 3]


def project_to_sphere(coords) -> np.ndarray:
    """Radially project nonzero coordinate rows onto the unit sphere."""
    coords = np.array(coords, dtype=float)
    norms = np.linalg.norm(coords, axis=1)
    if np.any(norms == 0):
        raise OffSphere("cannot project the origin onto the sphere")
    return coords / norms[:, None]


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

class MonomialS1(NamedTuple):
    """z**d; a negative d stands for conj(z)**(-d)."""
    d: int

    @property
    def degree(self) -> int:
        return abs(self.d)

    def conjugate(self) -> "MonomialS1":
        return MonomialS1(-self.d)

    def evaluate(self, z):
        z = np.asarray(z)
        return z ** self.d if self.d >= 0 else np.conj(z) ** (-self.d)


class MonomialS2(NamedTuple):
    """xi**p * eta**q * conj(eta)**r."""
    p: int
    q: int
    r: int

    @property
    def degree(self) -> int:
        return self.p + self.q + self.r

    def conjugate(self) -> "MonomialS2":
        return MonomialS2(self.p, self.r, self.q)

    def evaluate(self, xi, eta):
        eta = np.asarray(eta)
        return np.asarray(xi) ** self.p * eta ** self.q * np.conj(eta) ** self.r


class MonomialS3(NamedTuple):
    """a**i * conj(a)**j * b**k * conj(b)**l."""
    i: int
    j: int
    k: int
    l: int

    @property
    def degree(self) -> int:
        return self.i + self.j + self.k + self.l

    def conjugate(self) -> "MonomialS3":
        return MonomialS3(self.j, self.i, self.l, self.k)

    def evaluate(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        return a ** self.i * np.conj(a) ** self.j * b ** self.k * np.conj(b) ** self.l


MONOMIAL_TYPES = {"s1": MonomialS1, "s2": MonomialS2, "s3": MonomialS3}


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_of_degree(sphere: str, n: int) -> list:
    """All ambient monomials of total degree exactly ``n``."""
    if sphere == "s1":
        return [MonomialS1(0)] if n == 0 else [MonomialS1(-n), MonomialS1(n)]
    cls = MONOMIAL_TYPES[sphere]
    return [cls(*e) for e in _compositions(n, len(cls._fields))]


def basis_monomials(sphere: str, t: int) -> list:
    """Ambient monomials of degree <= t, ordered by degree.

    This spans P_t of the sphere but is not a basis once t >= 2, because of
    the relation |x|^2 = 1.
    """
    if t < 0:
        raise ValueError("degree must be non-negative")
    if sphere == "s1":
        return [MonomialS1(d) for d in range(-t, t + 1)]
    out = []
    for n in range(t + 1):
        out.extend(monomials_of_degree(sphere, n))
    return out


def dim_polynomials(d: int, t: int) -> int:
    """Dimension of P_t(S^d): homogeneous harmonics of degrees t and t-1."""
    if t == 0:
        return 1
    return math.comb(t + d, d) + math.comb(t + d - 1, d)


# ---------------------------------------------------------------------------
# exact moments
# ---------------------------------------------------------------------------

def moment_s1(m: MonomialS1) -> Fraction:
    return Fraction(1) if m.d == 0 else Fraction(0)


@lru_cache(maxsize=None)
def _moment_s2(p: int, q: int) -> Fraction:
    # xi is uniform on [-1, 1]: (1/2) int xi^p (1 - xi^2)^q dxi
    return sum(
        (Fraction((-1) ** s * math.comb(q, s), p + 2 * s + 1) for s in range(q + 1)),
        Fraction(0),
    )


def moment_s2(m: MonomialS2) -> Fraction:
    p, q, r = m
    if q != r or p % 2:
        return Fraction(0)
    return _moment_s2(p, q)


def moment_s3(m: MonomialS3) -> Fraction:
    i, j, k, l = m
    if i != j or k != l:
        return Fraction(0)
    return Fraction(math.factorial(i) * math.factorial(k), math.factorial(i + k + 1))


def moment(m) -> Fraction:
    """Exact integral of a monomial of any of the three spheres."""
    if isinstance(m, MonomialS3):
        return moment_s3(m)
    if isinstance(m, MonomialS2):
        return moment_s2(m)
    if isinstance(m, MonomialS1):
        return moment_s1(m)
    raise TypeError(f"not a monomial: {m!r}")


# ---------------------------------------------------------------------------
# polynomials with exact coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Polynomial:
    terms: Mapping = field(default_factory=dict)

    _monomial = None
    _names = ()

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            mono = self._monomial(*mono)
            if isinstance(c, int):
                c = Fraction(c)
            if c != 0:
                clean[mono] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, c=1):
        zero = cls._monomial(*([0] * len(cls._monomial._fields)))
        return cls({zero: c})

    @classmethod
    def monomial(cls, mono, c=1):
        return cls({cls._monomial(*mono): c})

    @property
    def degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Number):
            other = type(self).constant(other)
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, Number):
            other = type(self).constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Number):
            return type(self)({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = type(self).constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m in sorted(self.terms, key=lambda m: (m.degree, tuple(-e for e in m))):
            c = self.terms[m]
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self._names, m) if e
            ]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "·".join(factors)
            else:
                body = "·".join([str(mag)] + factors)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


class PolynomialS2(_Polynomial):
    """Finite combination of xi^p eta^q conj(eta)^r with exact coefficients."""

    _monomial = MonomialS2
    _names = ("ξ", "η", "η̄")

    def evaluate(self, xi, eta):
        xi, eta = np.asarray(xi, dtype=float), np.asarray(eta, dtype=complex)
        total = np.zeros(np.broadcast(xi, eta).shape, dtype=complex)
        for m, c in self.terms.items():
            total = total + complex(c) * m.evaluate(xi, eta)
        return total

    def reduced(self) -> "PolynomialS2":
        """Normal form on S^2: every eta*conj(eta) is replaced by 1 - xi^2.

        Two polynomials agree as functions on the sphere exactly when their
        reduced forms are equal.
        """
        one_minus_xi2 = PolynomialS2({(0, 0, 0): 1, (2, 0, 0): -1})
        out = PolynomialS2()
        for (p, q, r), c in self.terms.items():
            s = min(q, r)
            out = out + PolynomialS2({(p, q - s, r - s): c}) * one_minus_xi2 ** s
        return out

    def integral(self) -> Fraction:
        return sum((c * moment_s2(m) for m, c in self.terms.items()), Fraction(0))


class PolynomialS3(_Polynomial):
    """Finite combination of a^i conj(a)^j b^k conj(b)^l with exact coefficients."""

    _monomial = MonomialS3
    _names = ("a", "ā", "b", "b̄")

    def evaluate(self, a, b):
        a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
        total = np.zeros(np.broadcast(a, b).shape, dtype=complex)
        for m, c in self.terms.items():
            total = total + complex(c) * m.evaluate(a, b)
        return total

    def integral(self) -> Fraction:
        return sum((c * moment_s3(m) for m, c in self.terms.items()), Fraction(0))
