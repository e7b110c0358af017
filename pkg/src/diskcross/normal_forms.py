"""Conformal normal forms and complete conjugacy invariants.

Each non-identity automorphism is conjugate inside the disk group to exactly
one of

* ``(z + a) / (1 + a z)`` with ``0 < a < 1``   (hyperbolic, 1 attractive),
* ``z -> mu z`` with ``mu`` on the circle, ``mu != 1``   (elliptic),
* :data:`PHI_PLUS` or :data:`PHI_MINUS`   (parabolic, fixing 1).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import ClassError
from .moebius import (
    IDENTITY,
    TWO_PI,
    AutomorphismClass,
    DiskAutomorphism,
    Kind,
    MoebiusWord,
    as_word,
    classify,
    conjugate_by,
    fixed_points,
    max_deviation,
    mirror,
    sample_points,
)

_PLUS_LAM = (3j - 1) / (1j - 3)
# fixes 1 and sends -1 to i; the translation part is forced by those two conditions
PHI_PLUS = DiskAutomorphism.from_lambda(_PLUS_LAM, (1 - _PLUS_LAM.conjugate()) / 2)
PHI_MINUS = mirror(PHI_PLUS)

SNAP = 1e-14


def hyperbolic_canonical(a: float) -> DiskAutomorphism:
    if not 0 < a < 1:
        raise ValueError("a must lie in (0, 1)")
    return DiskAutomorphism(theta=0.0, z0=-a)


def residual_points() -> np.ndarray:
    """48 interior probes and 16 boundary probes."""
    return sample_points(48, 16)


@dataclass(frozen=True)
class NormalFormResult:
    classification: AutomorphismClass
    canonical: DiskAutomorphism
    conjugator: MoebiusWord
    invariant_name: Optional[str]
    invariant: Union[float, complex, int, None]
    residual: float

    @property
    def tag(self) -> Kind:
        return self.classification.tag

    def to_json(self) -> dict:
        inv = self.invariant
        if isinstance(inv, complex):
            inv = [inv.real, inv.imag]
        return {
            "class": self.tag.value,
            "margin": self.classification.margin,
            "canonical": self.canonical.to_json(),
            "conjugator": self.conjugator.to_json(),
            "invariant": None if self.invariant_name is None else {self.invariant_name: inv},
            "residual": self.residual,
        }


def _result(phi, cls, canonical, psi, name, value):
    conj = as_word(psi)
    resid = max_deviation(conjugate_by(conj, phi), canonical, residual_points())
    return NormalFormResult(cls, canonical, conj, name, value, resid)


def _require(phi: DiskAutomorphism, kind: Kind) -> AutomorphismClass:
    cls = classify(phi)
    if cls.tag is not kind:
        raise ClassError(f"expected a {kind.value} automorphism, got {cls.tag.value}")
    return cls


def two_point_conjugator(alpha: complex, beta: complex) -> DiskAutomorphism:
    """Disk automorphism sending the boundary points alpha -> -1 and beta -> 1.

    Uses iw (z + g conj(w)) / (1 + g w z) with w^2 = conj(alpha beta); of the
    two square roots the one with Im(w alpha) > 0 keeps g inside (-1, 1).
    """
    w = cmath.sqrt((alpha * beta).conjugate())
    if (w * alpha).imag < 0:
        w = -w
    u = w * alpha
    g = ((1j - u) / (1 - 1j * u)).real
    if not abs(g) < 1:
        raise ClassError("boundary points coincide")
    return DiskAutomorphism.from_lambda(1j * w, -g * w.conjugate())


def hyperbolic_normal_form(phi: DiskAutomorphism) -> NormalFormResult:
    cls = _require(phi, Kind.HYPERBOLIC)
    fp = fixed_points(phi)
    attract, repel = fp.points
    m = fp.multipliers[0]
    a = (1 - m) / (1 + m)
    # the repulsive point goes to -1 so that 1 ends up attractive
    if abs(repel + 1) < SNAP and abs(attract - 1) < SNAP:
        psi = MoebiusWord()
    else:
        psi = two_point_conjugator(repel, attract)
    return _result(phi, cls, hyperbolic_canonical(a), psi, "a", a)


def elliptic_normal_form(phi: DiskAutomorphism) -> NormalFormResult:
    cls = _require(phi, Kind.ELLIPTIC)
    if phi.z0 == 0:
        return _result(phi, cls, phi, MoebiusWord(), "mu", phi.lam)
    c = fixed_points(phi).points[0]
    mu = complex(phi.derivative(c))
    mu /= abs(mu)
    canonical = DiskAutomorphism.from_lambda(mu)
    return _result(phi, cls, canonical, DiskAutomorphism(0.0, c), "mu", mu)


def parabolic_orientation(phi: DiskAutomorphism) -> int:
    """+1 when the map, rotated to fix 1, sends -1 into the upper half circle."""
    p = fixed_points(phi).points[0]
    w = p.conjugate() * phi(-p)
    return 1 if w.imag > 0 else -1


def parabolic_normal_form(phi: DiskAutomorphism) -> NormalFormResult:
    cls = _require(phi, Kind.PARABOLIC)
    p = fixed_points(phi).points[0]
    if abs(p - 1) < SNAP:
        rot = IDENTITY
        phi1 = phi
    else:
        rot = DiskAutomorphism(theta=-cmath.phase(p) / TWO_PI)
        phi1 = conjugate_by(rot, phi)
    w = complex(phi1(-1 + 0j))
    sign = 1 if w.imag > 0 else -1
    target = 1j * sign
    # (z + t) / (1 + t z) fixes both 1 and -1; t is real for boundary w, target
    t = ((target - w) / (1 - target * w)).real
    factors = []
    if abs(t) >= SNAP:
        factors.append((DiskAutomorphism(0.0, -t), 1))
    if not rot.is_identity():
        factors.append((rot, 1))
    canonical = PHI_PLUS if sign > 0 else PHI_MINUS
    return _result(phi, cls, canonical, MoebiusWord(tuple(factors)), "orientation", sign)


def normal_form(phi: DiskAutomorphism) -> NormalFormResult:
    cls = classify(phi)
    if cls.tag is Kind.HYPERBOLIC:
        return hyperbolic_normal_form(phi)
    if cls.tag is Kind.ELLIPTIC:
        return elliptic_normal_form(phi)
    if cls.tag is Kind.PARABOLIC:
        return parabolic_normal_form(phi)
    return NormalFormResult(cls, IDENTITY, MoebiusWord(), None, None, 0.0)


def rotation_number(phi: DiskAutomorphism) -> float:
    """Rotation number in [0, 1) of the canonical rotation of an elliptic map."""
    mu = elliptic_normal_form(phi).invariant
    return (cmath.phase(mu) / TWO_PI) % 1.0


def _circle_dist(s: float, t: float) -> float:
    d = (s - t) % 1.0
    return min(d, 1.0 - d)


def are_topologically_conjugate(phi: DiskAutomorphism, psi: DiskAutomorphism, tol: float = 1e-9) -> bool:
    a, b = classify(phi).tag, classify(psi).tag
    if a is not b:
        return False
    if a is not Kind.ELLIPTIC:
        return True
    s, t = rotation_number(phi), rotation_number(psi)
    return _circle_dist(s, t) <= tol or _circle_dist(s, -t) <= tol
