import cmath
import math

import numpy as np
import pytest

from diskcross.dynamics import (
    canonical_point,
    circle_arc_length,
    fundamental_domain_contains,
    halfplane_coordinate,
    hausdorff,
    hyperbolic_conjugacy,
    orbit,
    orbit_closure,
    parabolic_step,
    power_map_conjugacy,
    printed_domain_contains,
    steps_to_attractor,
    HyperbolicConjugacy,
)
from diskcross.errors import ClassError, DomainError
from diskcross.moebius import IDENTITY, DiskAutomorphism, power
from diskcross.normal_forms import PHI_PLUS, hyperbolic_canonical
from diskcross.sampling import random_point

HALF = hyperbolic_canonical(0.5)


def test_orbit_hand_iteration():
    got = orbit(HALF, 0, 0, 3)
    assert np.allclose(got, [0, 0.5, 0.8, 13 / 14], atol=1e-15)
    assert np.allclose(orbit(HALF, 0, -2, 0), [-0.8, -0.5, 0], atol=1e-15)


def test_orbit_window_positive_start():
    assert np.allclose(orbit(HALF, 0, 2, 3), [0.8, 13 / 14])


def test_identity_orbit_constant():
    assert orbit(IDENTITY, 0.3j, -3, 3) == [0.3j] * 7


def test_rational_rotation_returns():
    pts = orbit(DiskAutomorphism(0.25, 0), 0.5, 0, 4)
    assert abs(pts[4] - 0.5) < 1e-15


def test_orbit_domain():
    with pytest.raises(DomainError):
        orbit(HALF, 1.5, 0, 1)


def test_closure_hyperbolic():
    d = orbit_closure(HALF, 0.3j)
    assert d.limit_set.kind == "pair"
    assert sorted(p.real for p in d.limit_set.points) == pytest.approx([-1, 1])
    assert steps_to_attractor(HALF, 0.3j, 1.0) <= 200


def test_closure_parabolic():
    d = orbit_closure(PHI_PLUS, 0)
    assert d.limit_set.kind == "fixed_point"
    assert abs(d.limit_set.points[0] - 1) < 1e-12
    # both ends of the orbit head to 1
    far = orbit(PHI_PLUS, 0, -3000, 3000)
    assert abs(far[0] - 1) < 1e-3 and abs(far[-1] - 1) < 1e-3


def test_closure_rational_cycle():
    d = orbit_closure(DiskAutomorphism(1 / 3, 0), 0.4)
    expected = [0.4 * cmath.exp(2j * math.pi * k / 3) for k in range(3)]
    assert d.limit_set.kind == "cycle"
    assert np.allclose(d.limit_set.points, expected, atol=1e-15)


def test_closure_irrational_circle_contains_orbit():
    phi = DiskAutomorphism(math.sqrt(2) - 1, 0.4 - 0.1j)
    d = orbit_closure(phi, 0.2 + 0.3j, K=200)
    ls = d.limit_set
    assert ls.kind == "circle"
    dev = np.abs(np.abs(np.array(d.sample_orbit) - ls.center) - ls.radius)
    assert dev.max() < 1e-9


def test_closure_of_fixed_point():
    assert orbit_closure(DiskAutomorphism(0.3, 0), 0).limit_set.kind == "singleton"


def test_force_rational_flag():
    phi = DiskAutomorphism(0.25, 0)
    assert orbit_closure(phi, 0.5, force_rational=False).limit_set.kind == "circle"
    near = DiskAutomorphism(0.25 + 1e-9, 0)
    assert orbit_closure(near, 0.5).limit_set.kind == "circle"
    assert orbit_closure(near, 0.5, force_rational=True).limit_set.kind == "cycle"


def test_limit_points_invariant(rng):
    for phi in (HALF, PHI_PLUS, DiskAutomorphism(0.2, 0.3 + 0.3j)):
        for _ in range(5):
            d = orbit_closure(phi, random_point(rng))
            for p in d.limit_set.discretize(64):
                if d.limit_set.kind == "circle":
                    q = phi(p)
                    assert abs(abs(q - d.limit_set.center) - d.limit_set.radius) < 1e-9
                else:
                    assert abs(phi(p) - p) < 1e-9 or d.limit_set.kind == "cycle"


def test_halfplane_examples():
    assert halfplane_coordinate(HALF, 0) == 1
    assert halfplane_coordinate(HALF, 0.5) == pytest.approx(3)
    t = np.linspace(-0.99, 0.99, 41)
    assert np.allclose(np.abs(halfplane_coordinate(HALF, 1j * t)), 1)


def test_halfplane_linearises_hyperbolic(rng):
    m = 3.0
    for _ in range(50):
        z = random_point(rng)
        assert abs(halfplane_coordinate(HALF, HALF(z)) - m * halfplane_coordinate(HALF, z)) < 1e-9 * (
            1 + abs(halfplane_coordinate(HALF, z))
        )


def test_parabolic_translation_constant(rng):
    beta = parabolic_step(PHI_PLUS)
    assert beta == pytest.approx(-1)
    for _ in range(100):
        z = random_point(rng, 0.9)
        diff = halfplane_coordinate(PHI_PLUS, PHI_PLUS(z)) - halfplane_coordinate(PHI_PLUS, z)
        assert abs(diff - beta) < 1e-9


def test_halfplane_errors():
    with pytest.raises(DomainError):
        halfplane_coordinate(HALF, 1)
    with pytest.raises(ClassError):
        halfplane_coordinate(DiskAutomorphism(0.1, 0.5), 0)


def test_fundamental_domain_examples():
    assert fundamental_domain_contains(HALF, 0)
    assert canonical_point(HALF, 0).index == 0
    assert not fundamental_domain_contains(HALF, 0.5)
    cp = canonical_point(HALF, 0.5)
    assert abs(cp.representative) < 1e-15 and cp.index == 1


def test_exactly_one_window_representative(rng):
    for _ in range(100):
        z = random_point(rng, 0.99)
        hits = [n for n, w in zip(range(-3, 4), orbit(HALF, z, -3, 3)) if fundamental_domain_contains(HALF, w)]
        cp = canonical_point(HALF, z)
        if abs(cp.index) <= 3:
            assert hits == [-cp.index]


def test_canonical_point_inverts(rng):
    for _ in range(100):
        z = random_point(rng, 0.999)
        cp = canonical_point(HALF, z)
        assert fundamental_domain_contains(HALF, cp.representative)
        assert abs(power(HALF, cp.index)(cp.representative) - z) < 1e-9
        window = orbit(HALF, cp.representative, -5, 5)
        assert sum(fundamental_domain_contains(HALF, w) for w in window) == 1


def test_printed_predicate_differs():
    # phi(L) is the circle |z - 5/4| = 3/4, not |1 - z| = 1/2; this point sits between them
    z = 0.7 + 0.45j
    assert printed_domain_contains(HALF, z)
    assert not fundamental_domain_contains(HALF, z)
    assert abs(halfplane_coordinate(HALF, z)) > 3


def test_arc_length_matches_circumcircle():
    def arc(z1, z2):
        # circumcircle of -1, 1, z2
        x, y = z2.real, z2.imag
        yc = (x * x + y * y - 1) / (2 * y)
        o = 1j * yc
        return abs(z2 - o) * abs(cmath.phase((z2 - o) / (z1 - o)))

    for alpha in (0.4, -1.1, 1.5):
        e = cmath.exp(1j * alpha)
        for rho in (1.5, 4.0):
            z1, z2 = (e - 1) / (e + 1), (rho * e - 1) / (rho * e + 1)
            assert circle_arc_length(rho, alpha) == pytest.approx(arc(z1, z2), rel=1e-12)
    assert circle_arc_length(3.0, 0.0) == pytest.approx(0.5)


def test_conjugacy_identity_when_equal(rng):
    mu = HyperbolicConjugacy(HALF, HALF)
    zs = np.array([random_point(rng, 0.99) for _ in range(100)])
    assert np.max(np.abs(mu(zs) - zs)) < 1e-9


def test_conjugacy_fixes_endpoints():
    mu = HyperbolicConjugacy(hyperbolic_canonical(1 / 3), hyperbolic_canonical(2 / 3))
    assert mu(1 + 0j) == 1 and mu(-1 + 0j) == -1


def test_conjugacy_equivariance_and_inverse(rng):
    phi, psi = hyperbolic_canonical(1 / 3), hyperbolic_canonical(2 / 3)
    zs = np.array([random_point(rng, 0.99) for _ in range(200)])
    mu = hyperbolic_conjugacy(phi, psi, check_points=zs)
    assert mu.equivariance_residual(zs) < 1e-8
    assert np.max(np.abs(mu.inverse()(mu(zs)) - zs)) < 1e-7


def test_conjugacy_continuous_across_band_edges():
    phi, psi = hyperbolic_canonical(1 / 3), hyperbolic_canonical(2 / 3)
    mu = HyperbolicConjugacy(phi, psi)
    for y in np.linspace(-0.9, 0.9, 7):
        on_l = 1j * y
        for edge in (on_l, phi(on_l)):
            c = halfplane_coordinate(phi, edge)
            below = (c * (1 - 1e-9) - 1) / (c * (1 - 1e-9) + 1)
            above = (c * (1 + 1e-9) - 1) / (c * (1 + 1e-9) + 1)
            assert abs(mu(below) - mu(above)) < 1e-6


def test_power_map_oracle(rng):
    phi, psi = hyperbolic_canonical(1 / 3), hyperbolic_canonical(2 / 3)
    pm = power_map_conjugacy(phi, psi)
    zs = np.array([random_point(rng, 0.99) for _ in range(100)])
    assert np.max(np.abs(pm(phi(zs)) - psi(pm(zs)))) < 1e-9
    mu = HyperbolicConjugacy(phi, psi)
    line = 1j * np.linspace(-0.95, 0.95, 39)
    assert np.max(np.abs(pm(line) - mu(line))) < 1e-12
    # away from L the two conjugacies are genuinely different maps
    assert np.max(np.abs(pm(zs) - mu(zs))) > 1e-6


def test_hausdorff_basic():
    assert hausdorff([0, 1], [0, 1]) == 0
    assert hausdorff([0], [0, 1j]) == pytest.approx(1)


def test_closure_conjugated_rational_rotation():
    # theta of the conjugate is not the rotation number; the period must still be found
    from diskcross.moebius import conjugate_by, normalize

    psi = DiskAutomorphism(0.3, 0.4 - 0.2j)
    phi = normalize(conjugate_by(psi, DiskAutomorphism.from_rational(3, 7)))
    ls = orbit_closure(phi, 0.1).limit_set
    assert ls.kind == "cycle" and len(ls.points) == 7
    assert abs(orbit(phi, 0.1, 0, 7)[-1] - 0.1) < 1e-12
    irr = normalize(conjugate_by(psi, DiskAutomorphism(math.sqrt(2) - 1, 0)))
    assert orbit_closure(irr, 0.1).limit_set.kind == "circle"
