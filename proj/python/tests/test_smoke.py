import cmath
import math

import mpmath
import numpy as np
import pytest

import lemnmap


def test_radial_slit_capacity_and_round_trip():
    m = lemnmap.radial_slit_map(2, 0.1, 1.0)
    assert m.domain.mu == pytest.approx(math.sqrt(0.99 / 4), abs=1e-15)
    assert m.domain.symmetric_form[0] == 2
    z = np.array([[2 + 1j, -0.3 + 0.7j], [0.5j, 3.0]])
    w = m.forward_array(z)
    assert w.shape == z.shape
    assert np.max(np.abs(m.inverse_array(w) - z)) < 1e-10
    assert abs(m.inverse(m.forward(1 + 1j)) - (1 + 1j)) < 1e-12
    assert m.family == "radial-slits"


def test_errors_map_to_exception_classes():
    m = lemnmap.radial_slit_map(3, 1.0, 2.0)
    with pytest.raises(lemnmap.BoundaryError):
        m.forward(1.5)
    assert issubclass(lemnmap.BoundaryError, lemnmap.DomainError)
    with pytest.raises(lemnmap.DomainError):
        m.inverse(m.domain.centers[0])
    with pytest.raises(lemnmap.ConstructionError):
        lemnmap.radial_slit_map(2, 1.0, 0.5)
    with pytest.raises(lemnmap.DomainError):
        m.forward_array(np.array([3.0, 1.5]))


def test_jacobi_sn_against_mpmath():
    for z, k in [(0.3 + 0.2j, 0.25), (1.1 - 0.4j, 0.8), (2.0 + 0.1j, 0.5)]:
        ref = complex(mpmath.ellipfun("sn", z, m=k * k))
        assert abs(lemnmap.jacobi_sn(z, k) - ref) < 1e-13


def test_two_disk_capacity_against_theta_functions():
    for r in (0.5, 0.7, 0.9):
        alpha = math.sqrt(1 - r * r)
        rho = (1 - alpha) / r
        q = mpmath.mpf(rho) ** 4
        L = mpmath.jtheta(2, 0, q) / mpmath.jtheta(3, 0, q)
        K = mpmath.ellipk(L**4)
        mu = mpmath.sqrt(2 * L * (1 + L * L)) * 2 * K * alpha / mpmath.pi
        m = lemnmap.two_disk_map(1.0, r)
        assert m.domain.mu == pytest.approx(float(mu), rel=1e-13)
        assert abs(m.forward(-0.2 + 2j) + m.forward(0.2 - 2j)) < 1e-12
    p = lemnmap.EllipticParameters.from_rho(2 - math.sqrt(3))
    assert abs(lemnmap.annulus_to_slit(-1.0, p) + 1) < 1e-12


def test_doubly_connected_with_python_callback():
    r = 0.5
    alpha = math.sqrt(1 - r * r)
    rho = (1 - alpha) / r
    ref = lemnmap.two_disk_map(1.0, r)
    m = lemnmap.doubly_connected_from_annulus(
        h=lambda z: (alpha + z) / (alpha - z),
        a1=-2 * alpha,
        rho=rho,
        h_inverse=lambda w: alpha * (w - 1) / (w + 1),
        scale=1.5,
    )
    for z in (2 + 1j, -0.3 + 0.9j, 0.1j):
        assert abs(m.forward(z) - ref.forward(z)) < 1e-8
    assert abs(m.inverse(m.forward(2 + 1j)) - (2 + 1j)) < 1e-8
    with pytest.raises(lemnmap.ContractError):
        lemnmap.doubly_connected_from_annulus(lambda z: (alpha + z) / (alpha - z) + 0.1, -2 * alpha, rho)


def test_transforms_and_green():
    m = lemnmap.radial_slit_map(2, 0.1, 1.0)
    t = lemnmap.apply_linear_transform(m, 2.0, 1j)
    assert t.domain.mu == 2 * m.domain.mu
    assert lemnmap.normalization_probe(t, 1e6) <= 1e-4
    rot = lemnmap.rotate_map(m, math.pi)
    assert abs(rot.forward(0.4 + 0.8j) - m.forward(0.4 + 0.8j)) < 1e-12
    z = 1e6 * cmath.exp(0.3j)
    assert abs(lemnmap.green_value(m, z) - (math.log(1e6) - math.log(m.domain.mu))) < 1e-4


def test_verification_and_level_curves():
    report = lemnmap.run_verification("two-disks", [1, 0.5])
    assert report["passed"], [c for c in report["checks"] if not c["pass"]]
    assert not lemnmap.run_verification("radial-slits", [2, 1, 0.5])["passed"]
    curves = lemnmap.trace_level_curve("radial-slits", [3, 1, 2], 1.15, resolution=200)
    assert len(curves) == 3
    m = lemnmap.make_family("radial-slits", [3, 1, 2])
    for points, closed in curves:
        assert closed
        g = np.array([lemnmap.green_value(m, p) for p in points[:-1]])
        assert np.max(np.abs(g - math.log(1.15))) < 1e-6


def test_phase_portrait():
    m = lemnmap.radial_slit_map(2, 0.1, 1.0)
    values, flags, singularities = lemnmap.phase_portrait(m, True, (-1.5, 1.5, -1.5, 1.5), 120, 100)
    assert values.shape == (100, 120)
    assert flags.shape == (100, 120)
    assert (flags == 1).any()
    assert any(abs(loc) < 0.05 and winding == 1 for loc, winding in singularities)
