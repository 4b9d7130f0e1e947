import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from hopfdesign.hopf import (
    Section,
    act,
    fiber_point,
    fiber_quadrature,
    hopf_arrays,
    hopf_map,
    pullback_monomial,
    pushforward,
    pushforward_monomial,
    section,
    section_arrays,
)
from hopfdesign.sphere import (
    MonomialS2,
    MonomialS3,
    PointS1,
    PointS2,
    PointS3,
    PolynomialS2,
    basis_monomials,
    moment_s3,
)

R2 = 1 / math.sqrt(2)
W3 = cmath.exp(2j * math.pi / 3)


def random_s3(rng, n):
    g = rng.standard_normal((n, 4))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return [PointS3(complex(r[0], r[1]), complex(r[2], r[3])) for r in g]


def random_s2(rng, n):
    h = rng.standard_normal((n, 3))
    h /= np.linalg.norm(h, axis=1)[:, None]
    return [PointS2(r[0], complex(r[1], r[2])) for r in h]


def random_s1(rng, n):
    return [PointS1(cmath.exp(1j * th)) for th in rng.uniform(0, 2 * np.pi, n)]


def close(p: PointS3, q: PointS3, tol=1e-12):
    return abs(p.a - q.a) < tol and abs(p.b - q.b) < tol


def close2(p: PointS2, q: PointS2, tol=1e-12):
    return abs(p.xi - q.xi) < tol and abs(p.eta - q.eta) < tol


@pytest.mark.parametrize("x, y", [
    (PointS3(1, 0), PointS2(1, 0)),
    (PointS3(0, 1), PointS2(-1, 0)),
    (PointS3(R2, R2), PointS2(0, 1)),
])
def test_hopf_map_examples(x, y):
    assert close2(hopf_map(x), y)


def test_act_examples():
    i = PointS1(1j)
    assert close(act(PointS3(1, 0), i), PointS3(1j, 0))
    assert close(act(PointS3(0, 1), i), PointS3(0, -1j))
    x = PointS3(0.6, 0.8j)
    assert act(x, PointS1(1)) == x


@pytest.mark.parametrize("y, expected", [
    (PointS2(1, 0), PointS3(1, 0)),
    (PointS2(-1, 0), PointS3(0, 1)),
    (PointS2(0, 1), PointS3(R2, R2)),
])
def test_section_examples(y, expected):
    s = section(y)
    assert close(s, expected)
    assert close2(hopf_map(s), y)


def test_fiber_point_examples():
    w = PointS1(W3)
    assert close(fiber_point(PointS2(1, 0), w), PointS3(W3, 0))
    assert close(fiber_point(PointS2(-1, 0), w), PointS3(0, W3.conjugate()))
    y = PointS2(0.6, 0.8)
    assert fiber_point(y, PointS1(1)) == section(y)


def test_equivariance():
    rng = np.random.default_rng(10)
    for x, z in zip(random_s3(rng, 1000), random_s1(rng, 1000)):
        assert close2(hopf_map(act(x, z)), hopf_map(x))


def test_right_action():
    rng = np.random.default_rng(11)
    xs, zs, ws = random_s3(rng, 300), random_s1(rng, 300), random_s1(rng, 300)
    for x, z, w in zip(xs, zs, ws):
        assert close(act(act(x, z), w), act(x, PointS1(z.z * w.z)))


@pytest.mark.parametrize("threshold", [0.0, 0.5, -0.7])
def test_section_property(threshold):
    rng = np.random.default_rng(12)
    cfg = Section(threshold)
    ys = random_s2(rng, 1000)
    ys += [PointS2(1, 0), PointS2(-1, 0), PointS2(threshold, math.sqrt(1 - threshold ** 2))]
    eps = 1e-9
    for x in (threshold - eps, threshold + eps):
        ys.append(PointS2(x, cmath.exp(0.3j) * math.sqrt(1 - x * x)))
    for y in ys:
        assert close2(hopf_map(section(y, cfg)), y)


def test_section_arrays_match_pointwise():
    rng = np.random.default_rng(13)
    ys = random_s2(rng, 200) + [PointS2(1, 0), PointS2(-1, 0), PointS2(0, 1j)]
    xi = np.array([y.xi for y in ys])
    eta = np.array([y.eta for y in ys])
    a, b = section_arrays(xi, eta)
    for y, ai, bi in zip(ys, a, b):
        s = section(y)
        assert abs(s.a - ai) < 1e-15 and abs(s.b - bi) < 1e-15
    xi2, eta2 = hopf_arrays(a, b)
    np.testing.assert_allclose(xi2, xi, atol=1e-14)
    np.testing.assert_allclose(eta2, eta, atol=1e-14)


def test_bad_threshold():
    with pytest.raises(ValueError):
        Section(1.0)


# -- pushforward / pullback ----------------------------------------------------

def test_pushforward_examples():
    half = Fraction(1, 2)
    assert pushforward_monomial(MonomialS3(0, 0, 0, 0)) == PolynomialS2.constant(1)
    assert pushforward_monomial(MonomialS3(1, 0, 0, 1)).is_zero()
    assert pushforward_monomial(MonomialS3(1, 1, 0, 0)) == PolynomialS2({(0, 0, 0): half, (1, 0, 0): half})
    assert pushforward_monomial(MonomialS3(0, 0, 1, 1)) == PolynomialS2({(0, 0, 0): half, (1, 0, 0): -half})


def test_pullback_examples():
    assert str(pullback_monomial(MonomialS2(0, 0, 0))) == "1"
    assert str(pullback_monomial(MonomialS2(1, 0, 0))) == "a·ā - b·b̄"
    assert str(pullback_monomial(MonomialS2(0, 1, 0))) == "2·a·b"


def test_fiber_quadrature_examples():
    y = PointS2(0, 1)
    assert fiber_quadrature(MonomialS3(1, 1, 0, 0), y, 8) == pytest.approx(0.5, abs=1e-15)
    assert fiber_quadrature(lambda a, b: np.ones_like(a), PointS2(0.6, 0.8), 1) == 1
    for n in (2, 3, 7):
        assert abs(fiber_quadrature(MonomialS3(1, 0, 0, 0), PointS2(0.6, 0.8j), n)) < 1e-15


def test_degree_bounds():
    for m in basis_monomials("s3", 10):
        assert pushforward_monomial(m).degree <= m.degree // 2
    for m in basis_monomials("s2", 6):
        assert pullback_monomial(m).degree == 2 * m.degree


def test_pushforward_matches_fiber_quadrature():
    rng = np.random.default_rng(14)
    ys = random_s2(rng, 30) + [PointS2(1, 0), PointS2(-1, 0)]
    for m in basis_monomials("s3", 6):
        poly = pushforward_monomial(m)
        for y in ys:
            assert abs(poly.evaluate(y.xi, y.eta) - fiber_quadrature(m, y, 16)) < 1e-12


def test_fiber_restriction_is_a_circle_monomial():
    rng = np.random.default_rng(15)
    ys, zs = random_s2(rng, 40), random_s1(rng, 40)
    for m in basis_monomials("s3", 5):
        for y, z in zip(ys, zs):
            base = m.evaluate(*_ab(fiber_point(y, PointS1(1))))
            if abs(base) < 1e-6:
                continue
            ratio = m.evaluate(*_ab(fiber_point(y, z))) / base
            assert abs(ratio - z.z ** (m.i - m.j - m.k + m.l)) < 1e-9


def _ab(x):
    return x.a, x.b


def test_adjoint_identity():
    for m in basis_monomials("s2", 4):
        assert pushforward(pullback_monomial(m)).reduced() == PolynomialS2.monomial(m).reduced()


def test_fubini_exact():
    for m in basis_monomials("s3", 6):
        assert pushforward_monomial(m).integral() == moment_s3(m)
