"""Conformal automorphisms of the closed unit disk.

Every automorphism is stored as the pair ``(theta, z0)`` describing

    phi(z) = exp(2 i pi theta) * (z - z0) / (1 - conj(z0) z),

with ``theta`` in ``[0, 1)`` and ``|z0| < 1``.  Compositions are kept as
unevaluated :class:`MoebiusWord` objects; :func:`normalize` folds a word back
into parameters when asked to.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.stats import qmc

from .errors import ClassError, DomainError, NumericalError, PoleError

TWO_PI = 2.0 * math.pi
DOMAIN_SLACK = 1e-9
POLE_GUARD = 1e-300
NORMALIZE_TOL = 1e-10


def unit_root(p: int, q: int) -> complex:
    """exp(2 i pi p / q) with the numerator reduced mod q first."""
    return cmath.exp(TWO_PI * 1j * ((p % q) / q))


@dataclass(frozen=True)
class DiskAutomorphism:
    theta: float = 0.0
    z0: complex = 0j
    rational: Fraction | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.rational is not None:
            frac = Fraction(self.rational) % 1
            object.__setattr__(self, "rational", frac)
            theta = frac.numerator / frac.denominator
        else:
            theta = float(self.theta) % 1.0
            if theta >= 1.0:
                theta = 0.0
        z0 = complex(self.z0)
        if not abs(z0) < 1.0:
            raise DomainError(f"|z0| must be < 1, got {abs(z0)!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "z0", z0)

    @classmethod
    def from_rational(cls, p: int, q: int, z0: complex = 0j) -> "DiskAutomorphism":
        """Rotation part fixed exactly at p/q so that lam**q == 1 by construction."""
        if q <= 0:
            raise DomainError("denominator must be positive")
        return cls(z0=z0, rational=Fraction(p, q))

    @classmethod
    def from_lambda(cls, lam: complex, z0: complex = 0j) -> "DiskAutomorphism":
        return cls(theta=cmath.phase(lam) / TWO_PI, z0=z0)

    @property
    def lam(self) -> complex:
        if self.rational is not None:
            return unit_root(self.rational.numerator, self.rational.denominator)
        return cmath.exp(TWO_PI * 1j * self.theta)

    def is_identity(self) -> bool:
        return self.theta == 0.0 and self.z0 == 0

    def __call__(self, z):
        """Unchecked (vectorised) evaluation; see :func:`evaluate` for the checked form."""
        z0 = self.z0
        return self.lam * (z - z0) / (1 - z0.conjugate() * z)

    def derivative(self, z):
        z0 = self.z0
        return self.lam * (1 - abs(z0) ** 2) / (1 - z0.conjugate() * z) ** 2

    def inverse(self) -> "DiskAutomorphism":
        lam = self.lam
        if self.rational is not None:
            return DiskAutomorphism(z0=-lam * self.z0, rational=-self.rational)
        return DiskAutomorphism(theta=-self.theta, z0=-lam * self.z0)

    def to_json(self) -> dict:
        out = {"theta": self.theta, "z0": [self.z0.real, self.z0.imag]}
        if self.rational is not None:
            out["rational"] = [self.rational.numerator, self.rational.denominator]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DiskAutomorphism":
        re, im = data.get("z0", [0.0, 0.0])
        if "rational" in data:
            p, q = data["rational"]
            return cls.from_rational(int(p), int(q), complex(re, im))
        return cls(theta=float(data.get("theta", 0.0)), z0=complex(re, im))


IDENTITY = DiskAutomorphism()


def rotation(theta: float) -> DiskAutomorphism:
    return DiskAutomorphism(theta=theta)


def mirror(phi: DiskAutomorphism) -> DiskAutomorphism:
    """The map z -> conj(phi(conj z)), again a disk automorphism."""
    if phi.rational is not None:
        return DiskAutomorphism(z0=phi.z0.conjugate(), rational=-phi.rational)
    return DiskAutomorphism(theta=-phi.theta, z0=phi.z0.conjugate())


@dataclass(frozen=True)
class MoebiusWord:
    """Composition ``f1^e1 o f2^e2 o ... o fk^ek``; the rightmost factor acts first.

    The empty word is the identity map.
    """

    factors: tuple = ()

    def __post_init__(self):
        cleaned = []
        for f, e in self.factors:
            if not isinstance(f, DiskAutomorphism):
                raise TypeError(f"word factors must be DiskAutomorphism, got {type(f).__name__}")
            e = int(e)
            if e != 0:
                cleaned.append((f, e))
        object.__setattr__(self, "factors", tuple(cleaned))

    def __call__(self, z):
        for f, e in reversed(self.factors):
            g = f if e > 0 else f.inverse()
            for _ in range(abs(e)):
                z = g(z)
        return z

    def __len__(self):
        return len(self.factors)

    def to_json(self) -> list:
        return [{"map": f.to_json(), "exp": e} for f, e in self.factors]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "MoebiusWord":
        return cls(tuple((DiskAutomorphism.from_json(d["map"]), int(d.get("exp", 1))) for d in data))


MapLike = Union[DiskAutomorphism, MoebiusWord]


def as_word(f: MapLike) -> MoebiusWord:
    if isinstance(f, MoebiusWord):
        return f
    if isinstance(f, DiskAutomorphism):
        return MoebiusWord(((f, 1),))
    raise TypeError(f"expected DiskAutomorphism or MoebiusWord, got {type(f).__name__}")


def evaluate(phi: MapLike, z):
    """Checked evaluation of an automorphism or a word at ``z`` (scalar or array)."""
    arr = np.asarray(z)
    if np.any(np.abs(arr) > 1 + DOMAIN_SLACK):
        raise DomainError("evaluation point outside the closed unit disk")
    for f, _ in as_word(phi).factors:
        if np.any(np.abs(1 - f.z0.conjugate() * arr) < POLE_GUARD):
            raise PoleError("denominator vanishes")
    return phi(z)


def compose(f: MapLike, g: MapLike) -> MoebiusWord:
    """Word for ``f o g``."""
    return MoebiusWord(as_word(f).factors + as_word(g).factors)


def invert(f: MapLike) -> MoebiusWord:
    return MoebiusWord(tuple((h, -e) for h, e in reversed(as_word(f).factors)))


def power(f: MapLike, n: int) -> MoebiusWord:
    w = as_word(f)
    if len(w.factors) == 1:
        h, e = w.factors[0]
        return MoebiusWord(((h, e * n),))
    base = w if n >= 0 else invert(w)
    return MoebiusWord(base.factors * abs(n))


def conjugate_by(psi: MapLike, phi: MapLike) -> MoebiusWord:
    """Word for ``psi o phi o psi^-1``."""
    return compose(compose(psi, phi), invert(psi))


@lru_cache(maxsize=None)
def _sample_points(n_interior: int, n_boundary: int) -> tuple:
    halton = qmc.Halton(d=2, scramble=False).random(n_interior + 1)[1:]
    interior = np.sqrt(halton[:, 0]) * np.exp(TWO_PI * 1j * halton[:, 1])
    boundary = np.exp(TWO_PI * 1j * np.arange(n_boundary) / n_boundary)
    return tuple(np.concatenate([interior, boundary]))


def sample_points(n_interior: int = 32, n_boundary: int = 32) -> np.ndarray:
    """Deterministic probe set: Halton points in the open disk followed by roots of unity."""
    return np.array(_sample_points(n_interior, n_boundary))


def max_deviation(f: MapLike, g: MapLike, points: Iterable[complex] | None = None) -> float:
    pts = sample_points() if points is None else np.asarray(list(points), dtype=complex)
    return float(np.max(np.abs(f(pts) - g(pts))))


def normalize(w: MapLike) -> DiskAutomorphism:
    """Fold a word into ``(theta, z0)`` parameters.

    ``z0`` is read off as ``w^-1(0)``; the rotation factor comes from the value
    of ``w`` at the boundary point farthest from ``z0``.
    """
    if isinstance(w, DiskAutomorphism):
        return w
    w = as_word(w)
    if not w.factors:
        return IDENTITY
    z0 = complex(invert(w)(0j))
    if not abs(z0) < 1:
        raise NumericalError("word does not map the disk to itself")
    z1 = -z0 / abs(z0) if z0 != 0 else 1 + 0j
    lam = complex(w(z1)) * (1 - z0.conjugate() * z1) / (z1 - z0)
    lam /= abs(lam)
    result = DiskAutomorphism.from_lambda(lam, z0)
    resid = max_deviation(result, w, sample_points(16, 16))
    if resid > NORMALIZE_TOL:
        raise NumericalError(f"normalisation residual {resid:.3e} exceeds {NORMALIZE_TOL}")
    return result


class Kind(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    IDENTITY = "identity"


@dataclass(frozen=True)
class AutomorphismClass:
    tag: Kind
    margin: float

    def to_json(self) -> dict:
        return {"class": self.tag.value, "margin": self.margin}


def margin(phi: DiskAutomorphism) -> float:
    """|z0| - |sin(pi theta)|: positive for hyperbolic, negative for elliptic."""
    return abs(phi.z0) - abs(math.sin(math.pi * phi.theta))


def classify(phi: DiskAutomorphism, tol: float = 1e-12) -> AutomorphismClass:
    m = margin(phi)
    if (phi.theta < tol or phi.theta > 1 - tol) and abs(phi.z0) < tol:
        return AutomorphismClass(Kind.IDENTITY, m)
    if m > tol:
        return AutomorphismClass(Kind.HYPERBOLIC, m)
    if m < -tol:
        return AutomorphismClass(Kind.ELLIPTIC, m)
    return AutomorphismClass(Kind.PARABOLIC, m)


@dataclass(frozen=True)
class FixedPointData:
    points: tuple
    multipliers: tuple
    discriminant: complex

    def to_json(self) -> dict:
        return {
            "fixed_points": [[p.real + 0.0, p.imag + 0.0] for p in self.points],
            "multipliers": list(self.multipliers),
            "discriminant": [self.discriminant.real, self.discriminant.imag],
        }


def _quadratic_roots(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    # sign of the square root matched to b so that b + sq never cancels
    sq = cmath.sqrt(b * b - 4 * a * c)
    if (b.conjugate() * sq).real < 0:
        sq = -sq
    q = -(b + sq) / 2
    return q / a, c / q


def fixed_points(phi: DiskAutomorphism, tol: float = 1e-12) -> FixedPointData:
    """Fixed points in the closed disk, roots of conj(z0) z^2 + (lam-1) z - lam z0."""
    kind = classify(phi, tol).tag
    if kind is Kind.IDENTITY:
        raise ClassError("the identity fixes every point")
    lam, z0 = phi.lam, phi.z0
    a, b, c = z0.conjugate(), lam - 1, -lam * z0
    disc = b * b - 4 * a * c
    if z0 == 0:
        points = (0j,)
    elif kind is Kind.PARABOLIC:
        p = -b / (2 * a)
        points = (p / abs(p),)
    else:
        r1, r2 = _quadratic_roots(a, b, c)
        if kind is Kind.HYPERBOLIC:
            points = (r1 / abs(r1), r2 / abs(r2))
        else:
            points = (r1 if abs(r1) < abs(r2) else r2,)
    mults = tuple(float(abs(phi.derivative(p))) for p in points)
    if kind is Kind.HYPERBOLIC and mults[0] > mults[1]:
        points, mults = points[::-1], mults[::-1]
    return FixedPointData(points, mults, disc)


def attractive_fixed_point(phi: DiskAutomorphism) -> complex:
    kind = classify(phi).tag
    if kind not in (Kind.HYPERBOLIC, Kind.PARABOLIC):
        raise ClassError(f"{kind.value} automorphisms have no attractive fixed point")
    return fixed_points(phi).points[0]


def repulsive_fixed_point(phi: DiskAutomorphism) -> complex:
    kind = classify(phi).tag
    if kind not in (Kind.HYPERBOLIC, Kind.PARABOLIC):
        raise ClassError(f"{kind.value} automorphisms have no repulsive fixed point")
    return fixed_points(phi).points[-1]
