"""Seeded random generators for automorphisms, coefficients, elements and spectrum sets."""

from __future__ import annotations

import math

import numpy as np

from .crossed_product import ConjZ, Const, CrossedElement, ExprFun, Z
from .moebius import DiskAutomorphism, Kind, classify
from .spectra import (
    ACCUMULATES_AT_ZERO,
    ALL_BOUNDARY_CHARS,
    ALL_CHARS,
    BoundaryChar,
    Char,
    Fiber,
    OrbitClass,
    ParabolicOrbitClass,
    SpectrumSet,
    TorusPoint,
)


def rng_of(seed=None) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_point(rng, rmax: float = 0.95) -> complex:
    r = rmax * math.sqrt(rng.random())
    return complex(r * np.exp(2j * math.pi * rng.random()))


def random_unit(rng) -> complex:
    return complex(np.exp(2j * math.pi * rng.random()))


def random_automorphism(rng, rmax: float = 0.9) -> DiskAutomorphism:
    return DiskAutomorphism(rng.random(), random_point(rng, rmax))


def random_of_class(rng, kind: Kind, rmax: float = 0.9, gap: float = 1e-3) -> DiskAutomorphism:
    """Random automorphism of the requested class, kept ``gap`` away from the parabolic boundary."""
    if kind is Kind.PARABOLIC:
        while True:
            theta = rng.random()
            s = abs(math.sin(math.pi * theta))
            if 0.05 < s <= rmax:
                phi = DiskAutomorphism(theta, s * random_unit(rng))
                if classify(phi).tag is Kind.PARABOLIC:
                    return phi
    while True:
        phi = random_automorphism(rng, rmax)
        cls = classify(phi)
        if cls.tag is kind and abs(cls.margin) > gap:
            return phi


def random_leaf(rng, maps=()) -> ExprFun:
    leaf = Z() if rng.random() < 0.6 else ConjZ()
    if maps and rng.random() < 0.3:
        return leaf.after(maps[rng.integers(len(maps))])
    return leaf


def random_expr(rng, degree: int = 2, maps=()) -> ExprFun:
    """c0 + sum_k c_k (product of k leaves), k <= degree."""
    out: ExprFun = Const(complex(rng.normal(), rng.normal()))
    for k in range(1, degree + 1):
        term: ExprFun = Const(complex(rng.normal(), rng.normal()) / (k + 1))
        for _ in range(k):
            term = term * random_leaf(rng, maps)
        out = out + term
    return out


def random_element(rng, max_support: int = 4, max_degree: int = 3, degree: int = 2, maps=()) -> CrossedElement:
    size = int(rng.integers(1, max_support + 1))
    ns = rng.choice(np.arange(-max_degree, max_degree + 1), size=size, replace=False)
    return CrossedElement(tuple((int(n), random_expr(rng, int(rng.integers(0, degree + 1)), maps)) for n in ns))


def _rand_u(rng):
    return float(rng.random())


def random_spectrum_set(rng, model: str, max_points: int = 4) -> SpectrumSet:
    k = int(rng.integers(0, max_points + 1))
    pts = []
    flags = set()
    for _ in range(k):
        if model == "hyperbolic":
            if rng.random() < 0.4:
                pts.append(OrbitClass(_rand_u(rng), random_unit(rng)))
            else:
                pts.append(BoundaryChar(int(rng.choice([-1, 1])), random_unit(rng)))
        elif model == "parabolic":
            if rng.random() < 0.4:
                pts.append(ParabolicOrbitClass(random_point(rng, 0.99)))
            else:
                pts.append(Char(random_unit(rng)))
        elif model == "elliptic_irrational":
            if rng.random() < 0.5:
                pts.append(Fiber(1.0 - _rand_u(rng) * 0.999))
            else:
                pts.append(Char(random_unit(rng)))
        else:
            pts.append(TorusPoint(_rand_u(rng), random_unit(rng), random_unit(rng)))
    r = rng.random()
    if model == "hyperbolic" and r < 0.2:
        flags.add(ALL_BOUNDARY_CHARS)
    elif model in ("parabolic", "elliptic_irrational") and r < 0.2:
        flags.add(ALL_CHARS)
    if model == "elliptic_irrational" and rng.random() < 0.2:
        flags.add(ACCUMULATES_AT_ZERO)
    return SpectrumSet(model, frozenset(pts), frozenset(flags))
