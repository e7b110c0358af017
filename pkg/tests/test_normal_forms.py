import pytest

from diskcross.errors import ClassError
from diskcross.moebius import (
    IDENTITY,
    DiskAutomorphism,
    Kind,
    conjugate_by,
    max_deviation,
    mirror,
    normalize,
)
from diskcross.normal_forms import (
    PHI_MINUS,
    PHI_PLUS,
    are_topologically_conjugate,
    elliptic_normal_form,
    hyperbolic_canonical,
    hyperbolic_normal_form,
    normal_form,
    parabolic_normal_form,
    residual_points,
    two_point_conjugator,
)
from diskcross.sampling import random_automorphism, random_of_class


def test_phi_plus_fixes_one_and_sends_minus_one_to_i():
    assert abs(PHI_PLUS(1 + 0j) - 1) < 1e-15
    assert abs(PHI_PLUS(-1 + 0j) - 1j) < 1e-15
    # rotation factor is (3i-1)/(i-3)
    assert abs(PHI_PLUS.lam - (3j - 1) / (1j - 3)) < 1e-15


def test_phi_minus_is_mirror():
    assert PHI_MINUS == mirror(PHI_PLUS)
    assert abs(PHI_MINUS(-1 + 0j) + 1j) < 1e-15


def test_hyperbolic_already_canonical():
    nf = hyperbolic_normal_form(hyperbolic_canonical(0.5))
    assert nf.invariant == pytest.approx(0.5, abs=1e-15)
    assert len(nf.conjugator) == 0
    assert nf.residual < 1e-15


def test_hyperbolic_invariant_through_independent_conjugations(rng):
    base = hyperbolic_canonical(0.5)
    values = []
    for _ in range(2):
        psi = random_automorphism(rng, 0.8)
        values.append(hyperbolic_normal_form(normalize(conjugate_by(psi, base))).invariant)
    assert abs(values[0] - 0.5) < 1e-9 and abs(values[1] - 0.5) < 1e-9


def test_two_point_conjugator_branch_i_minus_i():
    psi = two_point_conjugator(1j, -1j)
    assert abs(psi(1j) + 1) < 1e-15 and abs(psi(-1j) - 1) < 1e-15
    phi = normalize(conjugate_by(psi.inverse(), hyperbolic_canonical(0.4)))
    nf = hyperbolic_normal_form(phi)
    assert nf.residual < 1e-9
    assert abs(nf.canonical(1 + 0j) - 1) < 1e-12


def test_hyperbolic_wrong_class():
    with pytest.raises(ClassError):
        hyperbolic_normal_form(DiskAutomorphism(0.3, 0))


def test_elliptic_rotation():
    nf = elliptic_normal_form(DiskAutomorphism(0.25, 0))
    assert abs(nf.invariant - 1j) < 1e-15
    assert len(nf.conjugator) == 0


def test_elliptic_translated_rotation():
    nf = elliptic_normal_form(DiskAutomorphism(0.25, 0.3))
    assert nf.residual < 1e-9
    # derivative at the interior fixed point, from an independent complex-step oracle
    phi = DiskAutomorphism(0.25, 0.3)
    c = nf.conjugator.factors[0][0].z0
    h = 1e-7
    slope = (phi(c + h) - phi(c - h)) / (2 * h)
    assert abs(nf.invariant - slope / abs(slope)) < 1e-8


def test_elliptic_mu_independent_of_conjugate(rng):
    rot = DiskAutomorphism(0.3, 0)
    mus = [elliptic_normal_form(normalize(conjugate_by(random_automorphism(rng, 0.8), rot))).invariant
           for _ in range(2)]
    assert abs(mus[0] - mus[1]) < 1e-10
    assert abs(mus[0] - rot.lam) < 1e-10


def test_parabolic_phi_plus_itself():
    nf = parabolic_normal_form(PHI_PLUS)
    assert nf.invariant == 1
    assert len(nf.conjugator) == 0
    assert nf.canonical == PHI_PLUS


def test_parabolic_mirror_has_negative_orientation():
    nf = parabolic_normal_form(mirror(PHI_PLUS))
    assert nf.invariant == -1 and nf.canonical == PHI_MINUS


def test_parabolic_general():
    nf = parabolic_normal_form(DiskAutomorphism(1 / 6, 0.5))
    assert nf.invariant in (-1, 1)
    assert nf.residual < 1e-9


def test_identity_normal_form():
    nf = normal_form(IDENTITY)
    assert nf.tag is Kind.IDENTITY and nf.invariant is None


def test_topological_conjugacy_examples():
    assert are_topologically_conjugate(DiskAutomorphism(0.2, 0), DiskAutomorphism(0.8, 0))
    assert not are_topologically_conjugate(DiskAutomorphism(0.2, 0), DiskAutomorphism(0.4, 0))
    assert are_topologically_conjugate(hyperbolic_canonical(1 / 3), hyperbolic_canonical(2 / 3))
    assert are_topologically_conjugate(PHI_PLUS, PHI_MINUS)
    assert not are_topologically_conjugate(PHI_PLUS, hyperbolic_canonical(0.5))


@pytest.mark.parametrize("kind", [Kind.HYPERBOLIC, Kind.ELLIPTIC, Kind.PARABOLIC])
def test_round_trip_residuals(rng, kind):
    for _ in range(30):
        phi = random_of_class(rng, kind)
        nf = normal_form(phi)
        assert nf.tag is kind
        direct = max_deviation(conjugate_by(nf.conjugator, phi), nf.canonical, residual_points())
        assert direct == nf.residual
        assert nf.residual < 1e-9


@pytest.mark.parametrize("kind", [Kind.HYPERBOLIC, Kind.ELLIPTIC, Kind.PARABOLIC])
def test_invariant_stable_under_preconjugation(rng, kind):
    phi = random_of_class(rng, kind)
    ref = normal_form(phi).invariant
    for _ in range(50):
        psi = random_automorphism(rng, 0.7)
        other = normalize(conjugate_by(psi, phi))
        inv = normal_form(other).invariant
        assert abs(inv - ref) <= 1e-9


@pytest.mark.parametrize("kind", [Kind.HYPERBOLIC, Kind.ELLIPTIC, Kind.PARABOLIC])
def test_canonical_idempotent(rng, kind):
    nf = normal_form(random_of_class(rng, kind))
    again = normal_form(nf.canonical)
    assert max_deviation(again.canonical, nf.canonical) < 1e-12
    assert max_deviation(again.conjugator, IDENTITY) < 1e-12


def test_json_shape():
    doc = normal_form(hyperbolic_canonical(0.25)).to_json()
    assert doc["class"] == "hyperbolic" and doc["invariant"] == {"a": pytest.approx(0.25)}
