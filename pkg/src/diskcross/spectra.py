"""Finite descriptions of subsets of the four spectrum models and their closure.

A set is a finite collection of points plus flags naming infinite blocks
that are wholly contained in it.  The flags are where the non-Hausdorff
behaviour lives: a single orbit class in the hyperbolic model already forces
both circles of boundary characters into its closure.

Models and their point types:

=====================  =============================================
hyperbolic             OrbitClass(u, omega), BoundaryChar(eps, omega)
parabolic              ParabolicOrbitClass(point), Char(omega)
elliptic_irrational    Fiber(r), Char(omega)
elliptic_rational      TorusPoint(t, alpha, beta)
=====================  =============================================
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .dynamics import halfplane_coordinate, hyperbolic_multiplier
from .errors import DomainError

MODELS = ("hyperbolic", "parabolic", "elliptic_irrational", "elliptic_rational")

ALL_BOUNDARY_CHARS = "all_boundary_chars"
ALL_CHARS = "all_chars"
ACCUMULATES_AT_ZERO = "accumulates_at_zero"

_FLAGS = {
    "hyperbolic": {ALL_BOUNDARY_CHARS},
    "parabolic": {ALL_CHARS},
    "elliptic_irrational": {ALL_CHARS, ACCUMULATES_AT_ZERO},
    "elliptic_rational": set(),
}


def _on_circle(w: complex, what: str):
    if abs(abs(w) - 1) > 1e-9:
        raise DomainError(f"{what} must lie on the unit circle")


@dataclass(frozen=True)
class OrbitClass:
    u: float
    omega: complex

    def __post_init__(self):
        if not 0 <= self.u <= 1:
            raise DomainError("u must lie in [0, 1]")
        _on_circle(self.omega, "omega")


@dataclass(frozen=True)
class BoundaryChar:
    eps: int
    omega: complex

    def __post_init__(self):
        if self.eps not in (-1, 1):
            raise DomainError("eps must be -1 or 1")
        _on_circle(self.omega, "omega")


@dataclass(frozen=True)
class ParabolicOrbitClass:
    point: complex

    def __post_init__(self):
        if abs(self.point) > 1 or self.point == 1:
            raise DomainError("orbit class label must lie in the closed disk minus 1")


@dataclass(frozen=True)
class Char:
    omega: complex

    def __post_init__(self):
        _on_circle(self.omega, "omega")


@dataclass(frozen=True)
class Fiber:
    r: float

    def __post_init__(self):
        if not 0 < self.r <= 1:
            raise DomainError("fiber radius must lie in (0, 1]")


@dataclass(frozen=True)
class TorusPoint:
    t: float
    alpha: complex
    beta: complex

    def __post_init__(self):
        if not 0 <= self.t <= 1:
            raise DomainError("t must lie in [0, 1]")
        _on_circle(self.alpha, "alpha")
        _on_circle(self.beta, "beta")


_POINT_TYPES = {
    "hyperbolic": (OrbitClass, BoundaryChar),
    "parabolic": (ParabolicOrbitClass, Char),
    "elliptic_irrational": (Fiber, Char),
    "elliptic_rational": (TorusPoint,),
}


def _subsumed(p, flags) -> bool:
    if isinstance(p, BoundaryChar):
        return ALL_BOUNDARY_CHARS in flags
    if isinstance(p, Char):
        return ALL_CHARS in flags
    return False


@dataclass(frozen=True)
class SpectrumSet:
    model: str
    points: frozenset = frozenset()
    flags: frozenset = frozenset()

    def __post_init__(self):
        if self.model not in MODELS:
            raise DomainError(f"unknown spectrum model {self.model!r}")
        flags = frozenset(self.flags)
        bad = flags - _FLAGS[self.model]
        if bad:
            raise DomainError(f"flags {sorted(bad)} not valid for {self.model}")
        pts = frozenset(self.points)
        for p in pts:
            if not isinstance(p, _POINT_TYPES[self.model]):
                raise DomainError(f"{type(p).__name__} is not a point of the {self.model} model")
        # canonical form: flags absorb the points they cover
        pts = frozenset(p for p in pts if not _subsumed(p, flags))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "flags", flags)

    def union(self, other: "SpectrumSet") -> "SpectrumSet":
        if other.model != self.model:
            raise DomainError("cannot join sets from different models")
        return SpectrumSet(self.model, self.points | other.points, self.flags | other.flags)

    __or__ = union

    def issubset(self, other: "SpectrumSet") -> bool:
        return self.flags <= other.flags and all(
            p in other.points or _subsumed(p, other.flags) for p in self.points
        )

    __le__ = issubset

    def is_empty(self) -> bool:
        return not self.points and not self.flags

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "points": sorted((point_to_json(p) for p in self.points), key=repr),
            "flags": sorted(self.flags),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpectrumSet":
        return cls(data["model"], frozenset(point_from_json(p) for p in data.get("points", [])),
                   frozenset(data.get("flags", [])))


def empty(model: str) -> SpectrumSet:
    return SpectrumSet(model)


def closure(s: SpectrumSet) -> SpectrumSet:
    flags = set(s.flags)
    if s.model == "hyperbolic":
        if any(isinstance(p, OrbitClass) for p in s.points):
            flags.add(ALL_BOUNDARY_CHARS)
    elif s.model == "parabolic":
        if any(isinstance(p, ParabolicOrbitClass) for p in s.points):
            flags.add(ALL_CHARS)
    elif s.model == "elliptic_irrational":
        if ACCUMULATES_AT_ZERO in flags:
            flags.add(ALL_CHARS)
    # finite sets of characters or torus points are already closed
    return SpectrumSet(s.model, s.points, frozenset(flags))


def is_closed(s: SpectrumSet) -> bool:
    return closure(s) == s


def closure_axioms_check(model: str, sets: Sequence[SpectrumSet]) -> dict:
    """Check the Kuratowski axioms of :func:`closure` over ``sets`` and all pairs from it."""
    failures = {"empty": 0, "extensive": 0, "idempotent": 0, "monotone": 0, "union": 0}
    if not closure(empty(model)).is_empty():
        failures["empty"] += 1
    for a in sets:
        ca = closure(a)
        if not a <= ca:
            failures["extensive"] += 1
        if closure(ca) != ca:
            failures["idempotent"] += 1
    for i, a in enumerate(sets):
        for b in sets[i:]:
            ab = a | b
            if not closure(a) <= closure(ab):
                failures["monotone"] += 1
            if closure(ab) != closure(a) | closure(b):
                failures["union"] += 1
    return {"model": model, "n_sets": len(sets), "failures": failures,
            "ok": not any(failures.values())}


def orbit_class_coordinates(phi, x: complex) -> tuple[float, complex]:
    """Cylinder coordinates (u, omega) of the orbit of x under a hyperbolic normal form.

    u = 1/2 - arg(c)/pi labels the invariant circle (0 near the upper boundary
    arc, 1/2 on the real diameter, 1 near the lower arc); omega records the
    position along the circle modulo one step of the map.
    """
    c = halfplane_coordinate(phi, complex(x))
    m = hyperbolic_multiplier(phi)
    u = 0.5 - cmath.phase(c) / math.pi
    s = math.log(abs(c)) / math.log(m)
    frac = s - math.floor(s)
    return u, cmath.exp(2j * math.pi * frac)


# -- json ------------------------------------------------------------------------


def _cx(w: complex) -> list:
    return [w.real, w.imag]


def point_to_json(p) -> dict:
    if isinstance(p, OrbitClass):
        return {"type": "orbit_class", "u": p.u, "omega": _cx(p.omega)}
    if isinstance(p, BoundaryChar):
        return {"type": "boundary_char", "eps": p.eps, "omega": _cx(p.omega)}
    if isinstance(p, ParabolicOrbitClass):
        return {"type": "parabolic_orbit_class", "point": _cx(p.point)}
    if isinstance(p, Char):
        return {"type": "char", "omega": _cx(p.omega)}
    if isinstance(p, Fiber):
        return {"type": "fiber", "r": p.r}
    if isinstance(p, TorusPoint):
        return {"type": "torus_point", "t": p.t, "alpha": _cx(p.alpha), "beta": _cx(p.beta)}
    raise TypeError(type(p).__name__)


def point_from_json(d: dict):
    kind = d["type"]
    c = lambda key: complex(*d[key])  # noqa: E731
    if kind == "orbit_class":
        return OrbitClass(float(d["u"]), c("omega"))
    if kind == "boundary_char":
        return BoundaryChar(int(d["eps"]), c("omega"))
    if kind == "parabolic_orbit_class":
        return ParabolicOrbitClass(c("point"))
    if kind == "char":
        return Char(c("omega"))
    if kind == "fiber":
        return Fiber(float(d["r"]))
    if kind == "torus_point":
        return TorusPoint(float(d["t"]), c("alpha"), c("beta"))
    raise DomainError(f"unknown point type {kind!r}")
