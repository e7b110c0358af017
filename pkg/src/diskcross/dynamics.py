"""Orbits, orbit closures and fundamental domains of disk automorphisms.

Hyperbolic and parabolic normal forms are linearised by a half-plane
coordinate ``c``.  For ``(z + a)/(1 + a z)`` the coordinate ``c = (1+z)/(1-z)``
turns the map into ``c -> m c`` with ``m = (1+a)/(1-a)``; the invariant
circles through -1 and 1 become the rays ``arg c = const`` and the imaginary
diameter becomes ``|c| = 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from .errors import ClassError, DomainError, NumericalError
from .moebius import (
    AutomorphismClass,
    DiskAutomorphism,
    Kind,
    classify,
    fixed_points,
    power,
)

RATIONAL_MAX_DENOMINATOR = 10**6
RATIONAL_TOL = 1e-15
DERIVED_RATIONAL_TOL = 1e-12
# with a 1e-12 tolerance, denominators must stay small or every angle looks rational
DERIVED_MAX_DENOMINATOR = 1000
ATTRACTOR_TOL = 1e-6
MAX_STEPS = 10**4
NORMAL_FORM_TOL = 1e-12
BAND_SLACK = 1e-12


def orbit(phi: DiskAutomorphism, x: complex, n_lo: int, n_hi: int) -> list[complex]:
    """[phi^n(x) for n in n_lo..n_hi], by repeated application of phi or its inverse."""
    if abs(x) > 1 + 1e-9:
        raise DomainError("orbit base point outside the closed disk")
    if n_lo > n_hi:
        return []
    inv = phi.inverse()
    x = complex(x)
    fwd = [x]
    for _ in range(max(n_hi, 0)):
        fwd.append(complex(phi(fwd[-1])))
    bwd = []
    z = x
    for _ in range(max(-n_lo, 0)):
        z = complex(inv(z))
        bwd.append(z)
    full = bwd[::-1] + fwd  # indices min(n_lo,0) .. max(n_hi,0)
    start = min(n_lo, 0)
    return full[n_lo - start : n_hi - start + 1]


def steps_to_attractor(phi: DiskAutomorphism, x: complex, target: complex,
                       tol: float = ATTRACTOR_TOL, max_steps: int = MAX_STEPS) -> Optional[int]:
    z = complex(x)
    for k in range(max_steps + 1):
        if abs(z - target) < tol:
            return k
        z = complex(phi(z))
    return None


def rational_rotation(theta: float, tol: float = RATIONAL_TOL,
                      max_denominator: int = RATIONAL_MAX_DENOMINATOR) -> Optional[Fraction]:
    """Best rational with denominator <= max_denominator if it reproduces theta to ``tol``."""
    frac = Fraction(theta).limit_denominator(max_denominator)
    if abs(float(frac) - theta) <= tol:
        return frac
    return None


@dataclass(frozen=True)
class LimitSet:
    kind: str  # "pair", "fixed_point", "circle", "cycle", "singleton"
    points: tuple = ()
    center: complex = 0j
    radius: float = 0.0

    def discretize(self, n_circle: int = 4096) -> np.ndarray:
        if self.kind == "circle":
            t = np.arange(n_circle) / n_circle
            return self.center + self.radius * np.exp(2j * np.pi * t)
        return np.array(self.points, dtype=complex)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "points": [[p.real, p.imag] for p in self.points]}
        if self.kind == "circle":
            out["center"] = [self.center.real, self.center.imag]
            out["radius"] = self.radius
        return out


@dataclass(frozen=True)
class OrbitClosureDescr:
    classification: AutomorphismClass
    sample_orbit: tuple
    limit_set: LimitSet
    K: int = 0

    def closure_points(self, n_circle: int = 4096) -> np.ndarray:
        """Finite stand-in for the orbit closure."""
        if self.limit_set.kind in ("circle", "cycle", "singleton"):
            return self.limit_set.discretize(n_circle)
        return np.concatenate([np.array(self.sample_orbit), self.limit_set.discretize()])

    def to_json(self) -> dict:
        return {
            "class": self.classification.tag.value,
            "K": self.K,
            "sample_orbit": [[z.real, z.imag] for z in self.sample_orbit],
            "limit_set": self.limit_set.to_json(),
        }


def _image_circle(c: complex, rho: float) -> tuple[complex, float]:
    """Euclidean center and radius of the image of |w| = rho under w -> (w + c)/(1 + conj(c) w)."""
    den = 1 - abs(c) ** 2 * rho**2
    return c * (1 - rho**2) / den, rho * (1 - abs(c) ** 2) / den


def orbit_closure(phi: DiskAutomorphism, x: complex, K: int = 50,
                  force_rational: Optional[bool] = None) -> OrbitClosureDescr:
    x = complex(x)
    if abs(x) > 1 + 1e-9:
        raise DomainError("base point outside the closed disk")
    cls = classify(phi)
    samples = tuple(orbit(phi, x, -K, K))
    if cls.tag is Kind.IDENTITY or abs(phi(x) - x) <= 1e-12:
        return OrbitClosureDescr(cls, samples, LimitSet("singleton", (x,)), K)
    if cls.tag is Kind.HYPERBOLIC:
        return OrbitClosureDescr(cls, samples, LimitSet("pair", fixed_points(phi).points), K)
    if cls.tag is Kind.PARABOLIC:
        return OrbitClosureDescr(cls, samples, LimitSet("fixed_point", fixed_points(phi).points), K)

    c = fixed_points(phi).points[0]
    # rotation number of the conjugate rotation: the angle of phi'(c), not theta unless z0 = 0
    if phi.z0 == 0:
        theta, tol, qmax = phi.theta, RATIONAL_TOL, RATIONAL_MAX_DENOMINATOR
    else:
        # the angle inherits rounding from the fixed-point solve
        theta = (cmath.phase(phi.derivative(c)) / (2 * math.pi)) % 1.0
        tol, qmax = DERIVED_RATIONAL_TOL, DERIVED_MAX_DENOMINATOR
    frac = phi.rational if phi.z0 == 0 else None
    if frac is None and force_rational is not False:
        frac = rational_rotation(theta, tol, qmax)
    if force_rational is True and frac is None:
        frac = Fraction(theta).limit_denominator(RATIONAL_MAX_DENOMINATOR)
    if force_rational is False:
        frac = None
    if frac is not None:
        # the rotation number of the canonical form is conjugation invariant, so q is the period
        cyc = orbit(phi, x, 0, frac.denominator - 1)
        return OrbitClosureDescr(cls, samples, LimitSet("cycle", tuple(cyc)), K)
    rho = abs((x - c) / (1 - c.conjugate() * x))
    center, radius = _image_circle(c, rho)
    return OrbitClosureDescr(cls, samples, LimitSet("circle", (), center, radius), K)


def hausdorff(a, b) -> float:
    """Symmetric Hausdorff distance between two finite planar point sets."""
    pa = np.asarray(a, dtype=complex).ravel()
    pb = np.asarray(b, dtype=complex).ravel()
    ua = np.column_stack([pa.real, pa.imag])
    ub = np.column_stack([pb.real, pb.imag])
    return max(directed_hausdorff(ua, ub)[0], directed_hausdorff(ub, ua)[0])


def hausdorff_to_closure(descr: OrbitClosureDescr, pts, n_circle: int = 1 << 16) -> float:
    return hausdorff(descr.closure_points(n_circle), pts)


# ---------------------------------------------------------------------------
# half-plane coordinate and fundamental domain


def _is_hyperbolic_normal(phi: DiskAutomorphism) -> bool:
    th = min(phi.theta, 1 - phi.theta)
    return th < NORMAL_FORM_TOL and abs(phi.z0.imag) < NORMAL_FORM_TOL and phi.z0.real < 0


def _is_parabolic_normal(phi: DiskAutomorphism) -> bool:
    return classify(phi).tag is Kind.PARABOLIC and abs(phi(1 + 0j) - 1) < 1e-12


def hyperbolic_multiplier(phi: DiskAutomorphism) -> float:
    """m = (1+a)/(1-a), the factor by which phi scales the half-plane coordinate."""
    if not _is_hyperbolic_normal(phi):
        raise ClassError("expected a hyperbolic normal form (z + a)/(1 + a z)")
    a = -phi.z0.real
    return (1 + a) / (1 - a)


def halfplane_coordinate(phi: DiskAutomorphism, z):
    """Linearising coordinate for a hyperbolic or parabolic normal form."""
    arr = np.asarray(z, dtype=complex)
    if _is_hyperbolic_normal(phi):
        if np.any(np.abs(arr - 1) < 1e-15) or np.any(np.abs(arr + 1) < 1e-15):
            raise DomainError("coordinate undefined at the fixed points")
        c = (1 + arr) / (1 - arr)
    elif _is_parabolic_normal(phi):
        if np.any(np.abs(arr - 1) < 1e-15):
            raise DomainError("coordinate undefined at the fixed point")
        c = 1j * (1 + arr) / (1 - arr)
    else:
        raise ClassError("halfplane_coordinate needs a hyperbolic or parabolic normal form")
    return complex(c) if np.ndim(z) == 0 else c


def inverse_halfplane_coordinate(phi: DiskAutomorphism, c):
    c = np.asarray(c, dtype=complex)
    if _is_parabolic_normal(phi):
        c = -1j * c
    z = (c - 1) / (c + 1)
    return complex(z) if z.ndim == 0 else z


def parabolic_step(phi: DiskAutomorphism) -> float:
    """Real translation length beta with c(phi(z)) = c(z) + beta."""
    return (halfplane_coordinate(phi, phi(0j)) - halfplane_coordinate(phi, 0j)).real


@dataclass(frozen=True)
class CanonicalOrbitPoint:
    representative: complex
    index: int

    def to_json(self) -> dict:
        return {"representative": [self.representative.real, self.representative.imag], "index": self.index}


def fundamental_domain_contains(phi: DiskAutomorphism, z: complex) -> bool:
    """Membership in the half-open band 1 <= |c(z)| < m between L and phi(L)."""
    m = hyperbolic_multiplier(phi)
    r = abs(halfplane_coordinate(phi, z))
    return 1.0 <= r < m


def printed_domain_contains(phi: DiskAutomorphism, z: complex) -> bool:
    """The alternative predicate Re z >= 0 and |1 - z| >= 1 - a, kept for comparison only."""
    a = -phi.z0.real
    hyperbolic_multiplier(phi)
    return z.real >= 0 and abs(1 - z) >= 1 - a


def canonical_point(phi: DiskAutomorphism, z: complex) -> CanonicalOrbitPoint:
    """Unique (y, n) with y in the fundamental domain and phi^n(y) = z."""
    z = complex(z)
    m = hyperbolic_multiplier(phi)
    r = abs(halfplane_coordinate(phi, z))
    n = math.floor(math.log(r) / math.log(m))
    rep = complex(power(phi, -n)(z))
    for _ in range(8):
        rr = abs(halfplane_coordinate(phi, rep))
        if 1.0 - BAND_SLACK <= rr < 1.0:
            # rounding put the point just inside L; stepping forward would land just past phi(L)
            return CanonicalOrbitPoint(rep, n)
        if rr < 1.0:
            rep, n = complex(phi(rep)), n - 1
        elif rr >= m:
            rep, n = complex(phi.inverse()(rep)), n + 1
        else:
            return CanonicalOrbitPoint(rep, n)
    raise NumericalError("canonical representative did not settle")


# ---------------------------------------------------------------------------
# explicit conjugacy between two hyperbolic normal forms


def _chord(rho, alpha):
    e = np.exp(1j * alpha)
    return 2 * (rho - 1) / (np.abs(e + 1) * np.abs(rho * e + 1))


def _chord_to_arc(d, alpha):
    s = np.abs(np.sin(alpha))
    if s == 0:
        return d
    return (2 / s) * np.arcsin(np.clip(d * s / 2, -1.0, 1.0))


def _arc_to_chord(arc, alpha):
    s = np.abs(np.sin(alpha))
    if s == 0:
        return arc
    return (2 / s) * np.sin(arc * s / 2)


def _rho_from_chord(d, alpha):
    e = np.exp(1j * alpha)
    K = d**2 * np.abs(e + 1) ** 2
    A = 4 - K
    B = 8 + 2 * K * np.cos(alpha)
    # B^2 - 4A^2 factored to avoid cancellation near rho = 1
    disc = 2 * K * (1 + np.cos(alpha)) * (B + 2 * A)
    return (B + np.sqrt(disc)) / (2 * A)


def circle_arc_length(rho, alpha):
    """Length of the arc of the circle through -1, 1 at direction alpha from L to the point at modulus rho."""
    return _chord_to_arc(_chord(rho, alpha), alpha)


@dataclass(frozen=True)
class HyperbolicConjugacy:
    """Homeomorphism mu of the disk with mu o phi = psi o mu.

    On the band between L and phi(L) each circle arc through -1 and 1 is
    rescaled by arc length onto the matching arc between L and psi(L); the
    map is then extended along orbits.
    """

    phi: DiskAutomorphism
    psi: DiskAutomorphism
    m_phi: float = field(init=False)
    m_psi: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "m_phi", hyperbolic_multiplier(self.phi))
        object.__setattr__(self, "m_psi", hyperbolic_multiplier(self.psi))

    def base(self, y: complex) -> complex:
        """mu restricted to the fundamental band."""
        c = halfplane_coordinate(self.phi, y)
        rho, alpha = abs(c), cmath.phase(c)
        s = circle_arc_length(rho, alpha)
        s_phi = circle_arc_length(self.m_phi, alpha)
        s_psi = circle_arc_length(self.m_psi, alpha)
        d = _arc_to_chord(s * s_psi / s_phi, alpha)
        rho2 = _rho_from_chord(d, alpha)
        return inverse_halfplane_coordinate(self.psi, rho2 * cmath.exp(1j * alpha))

    def __call__(self, z):
        if np.ndim(z) > 0:
            return np.array([self(w) for w in np.asarray(z).ravel()]).reshape(np.shape(z))
        z = complex(z)
        if abs(z - 1) < 1e-15 or abs(z + 1) < 1e-15:
            return z
        cp = canonical_point(self.phi, z)
        return complex(power(self.psi, cp.index)(self.base(cp.representative)))

    def inverse(self) -> "HyperbolicConjugacy":
        return HyperbolicConjugacy(self.psi, self.phi)

    def equivariance_residual(self, points) -> float:
        pts = np.asarray(points, dtype=complex)
        return float(np.max(np.abs(self(self.phi(pts)) - self.psi(self(pts)))))


def hyperbolic_conjugacy(phi: DiskAutomorphism, psi: DiskAutomorphism,
                         check_points=None, tol: float = 1e-6) -> HyperbolicConjugacy:
    mu = HyperbolicConjugacy(phi, psi)
    if check_points is not None:
        r = mu.equivariance_residual(check_points)
        if r > tol:
            raise NumericalError(f"conjugacy residual {r:.3e} exceeds {tol}")
    return mu


def power_map_conjugacy(phi: DiskAutomorphism, psi: DiskAutomorphism):
    """Closed-form alternative conjugacy: |c| -> |c|**k along each ray, k = log m_psi / log m_phi."""
    k = math.log(hyperbolic_multiplier(psi)) / math.log(hyperbolic_multiplier(phi))

    def mu(z):
        c = np.asarray(halfplane_coordinate(phi, z))
        out = inverse_halfplane_coordinate(psi, np.abs(c) ** k * np.exp(1j * np.angle(c)))
        return out

    return mu
