import json
import math

import numpy as np
import pytest

from hopfdesign.errors import QuadratureFailure
from hopfdesign.generators import antipodal_pair, product_design_s2, regular_gon
from hopfdesign.lift import LiftConfig, lift_design
from hopfdesign.sphere import (
    MonomialS1,
    MonomialS2,
    MonomialS3,
    WeightedDesign,
    basis_monomials,
    moment,
)
from hopfdesign.verify import (
    StrengthReport,
    brute_force_certify,
    certify,
    numeric_moment,
    residual,
)


@pytest.fixture(scope="module")
def six_point():
    return lift_design(antipodal_pair(), LiftConfig(3))


def test_residual_examples(six_point):
    gon = regular_gon(3)
    assert residual(gon, MonomialS1(1)) < 1e-15
    assert residual(gon, MonomialS1(3)) == pytest.approx(1.0, abs=1e-14)
    assert residual(six_point, MonomialS3(1, 1, 0, 0)) < 1e-15
    assert residual(six_point, MonomialS3(3, 0, 0, 0)) == pytest.approx(0.5, abs=1e-14)


def test_residual_type_check(six_point):
    with pytest.raises(TypeError):
        residual(six_point, MonomialS2(1, 0, 0))


def test_certify_examples(six_point):
    assert certify(six_point, 4, 1e-10).certified_strength == 2
    for n in (1, 4, 9):
        assert certify(regular_gon(n, 0.3), n + 2).certified_strength == n - 1
    assert certify(antipodal_pair(), 3).certified_strength == 1


@pytest.mark.parametrize("sphere, n", [("s1", 5), ("s2", 4), ("s3", 4)])
def test_certify_matches_per_monomial_residuals(sphere, n):
    design = {
        "s1": regular_gon(4, 0.2),
        "s2": product_design_s2(2, phases="random", seed=3),
        "s3": lift_design(product_design_s2(1), LiftConfig(2)),
    }[sphere]
    report = certify(design, n)
    for d in range(n + 1):
        worst = max(residual(design, m) for m in basis_monomials(sphere, d)
                    if m.degree == d)
        assert report.residuals[d] == pytest.approx(worst, abs=1e-14)
    assert report.basis_sizes == [
        sum(1 for m in basis_monomials(sphere, d) if m.degree == d) for d in range(n + 1)]


def test_residual_conjugation_invariant(six_point):
    y = product_design_s2(3, phases="random", seed=9)
    for m in basis_monomials("s3", 4):
        assert residual(six_point, m) == pytest.approx(residual(six_point, m.conjugate()), abs=1e-15)
    for m in basis_monomials("s2", 4):
        assert residual(y, m) == pytest.approx(residual(y, m.conjugate()), abs=1e-15)


def test_rotation_invariance_on_circle():
    rng = np.random.default_rng(4)
    z = np.exp(2j * np.pi * rng.random(7))
    w = np.exp(0.77j)
    d1 = WeightedDesign("s1", np.column_stack([z.real, z.imag]))
    zw = z * w
    d2 = WeightedDesign("s1", np.column_stack([zw.real, zw.imag]))
    for m in basis_monomials("s1", 6):
        assert abs(residual(d1, m) - residual(d2, m)) < 1e-12


def test_strength_monotone_in_tol():
    x = lift_design(product_design_s2(2), LiftConfig(5))
    strengths = [certify(x, 7, tol).certified_strength for tol in (1e-18, 1e-12, 1e-9, 0.5, 2)]
    assert strengths == sorted(strengths)


@pytest.mark.parametrize("m", basis_monomials("s3", 6) + basis_monomials("s2", 6)
                         + basis_monomials("s1", 6))
def test_numeric_moment_matches_exact(m):
    assert abs(numeric_moment(m) - float(moment(m))) < 1e-9


@pytest.mark.parametrize("design, t", [
    (lift_design(antipodal_pair(), LiftConfig(3)), 4),
    (regular_gon(5), 6),
    (product_design_s2(3), 6),
])
def test_brute_force_agrees(design, t):
    exact = certify(design, t)
    brute = brute_force_certify(design, t)
    assert exact.certified_strength == brute.certified_strength
    np.testing.assert_allclose(exact.residuals, brute.residuals, atol=1e-9)


def test_brute_force_limits():
    with pytest.raises(ValueError):
        brute_force_certify(regular_gon(3), 7)


def test_quadrature_failure(monkeypatch):
    import hopfdesign.verify as v
    monkeypatch.setattr(v, "QUADRATURE_TOL", 0.0)
    numeric_moment.cache_clear()
    try:
        with pytest.raises(QuadratureFailure):
            numeric_moment(MonomialS3(2, 2, 1, 1))
    finally:
        numeric_moment.cache_clear()


def test_report_rendering(six_point):
    report = certify(six_point, 3)
    text = str(report)
    assert "certified strength: 2" in text and "FAIL" in text
    doc = json.loads(json.dumps(report.as_dict()))
    assert doc["certified_strength"] == 2
    assert [d["monomials"] for d in doc["degrees"]] == [1, 4, 10, 20]


def test_empty_report():
    assert StrengthReport("s2", 0, 1e-9, [1.0], [1]).certified_strength == -1
