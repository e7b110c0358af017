"""Twisted Fourier polynomials sum_n f_n U^n over continuous functions on the disk.

Coefficients are small expression trees so that precomposition with powers
of the automorphism stays exact.  The multiplication follows from
``U* f U = f o phi``::

    (f U^m)(g U^n) = f * (g o phi^-m) U^(m+n)
    (f U^n)*       = (conj(f) o phi^n) U^-n
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError
from .moebius import DiskAutomorphism, MoebiusWord, as_word, compose, power, sample_points

EXPR_TOL = 1e-10


class ExprFun:
    """Base class of coefficient expression trees."""

    def __call__(self, z):
        return self.evaluate(np.asarray(z, dtype=complex))

    def evaluate(self, z):
        raise NotImplementedError

    def __add__(self, other):
        return Add(self, lift(other))

    __radd__ = __add__

    def __mul__(self, other):
        return Mul(self, lift(other))

    def __rmul__(self, other):
        return Mul(lift(other), self)

    def __neg__(self):
        return Mul(Const(-1), self)

    def __sub__(self, other):
        return Add(self, -lift(other))

    def after(self, word) -> "ExprFun":
        """self o word."""
        w = as_word(word)
        if not w.factors:
            return self
        if isinstance(self, Precompose):
            return Precompose(self.inner, compose(self.word, w))
        if isinstance(self, Const):
            return self
        return Precompose(self, w)


@dataclass(frozen=True, eq=False)
class Const(ExprFun):
    value: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))

    def evaluate(self, z):
        return np.full(np.shape(z), self.value, dtype=complex) if np.ndim(z) else self.value + 0j


@dataclass(frozen=True, eq=False)
class Z(ExprFun):
    def evaluate(self, z):
        return z


@dataclass(frozen=True, eq=False)
class ConjZ(ExprFun):
    def evaluate(self, z):
        return np.conj(z)


@dataclass(frozen=True, eq=False)
class Add(ExprFun):
    left: ExprFun
    right: ExprFun

    def evaluate(self, z):
        return self.left.evaluate(z) + self.right.evaluate(z)


@dataclass(frozen=True, eq=False)
class Mul(ExprFun):
    left: ExprFun
    right: ExprFun

    def evaluate(self, z):
        return self.left.evaluate(z) * self.right.evaluate(z)


@dataclass(frozen=True, eq=False)
class Precompose(ExprFun):
    inner: ExprFun
    word: MoebiusWord

    def evaluate(self, z):
        return self.inner.evaluate(self.word(z))


def lift(x) -> ExprFun:
    if isinstance(x, ExprFun):
        return x
    return Const(complex(x))


def conj(f: ExprFun) -> ExprFun:
    """Pointwise complex conjugate, pushed down to the leaves."""
    if isinstance(f, Const):
        return Const(f.value.conjugate())
    if isinstance(f, Z):
        return ConjZ()
    if isinstance(f, ConjZ):
        return Z()
    if isinstance(f, Add):
        return Add(conj(f.left), conj(f.right))
    if isinstance(f, Mul):
        return Mul(conj(f.left), conj(f.right))
    if isinstance(f, Precompose):
        return Precompose(conj(f.inner), f.word)
    raise TypeError(f"unknown node {type(f).__name__}")


def depth(f: ExprFun) -> int:
    if isinstance(f, (Add, Mul)):
        return 1 + max(depth(f.left), depth(f.right))
    if isinstance(f, Precompose):
        return 1 + depth(f.inner)
    return 0


def expr_equal(f: ExprFun, g: ExprFun, tol: float = EXPR_TOL) -> bool:
    pts = sample_points(32, 32)
    return bool(np.max(np.abs(lift(f)(pts) - lift(g)(pts))) <= tol)


def expr_to_json(f: ExprFun):
    if isinstance(f, Const):
        return ["const", f.value.real, f.value.imag]
    if isinstance(f, Z):
        return ["z"]
    if isinstance(f, ConjZ):
        return ["conjz"]
    if isinstance(f, Add):
        return ["add", expr_to_json(f.left), expr_to_json(f.right)]
    if isinstance(f, Mul):
        return ["mul", expr_to_json(f.left), expr_to_json(f.right)]
    if isinstance(f, Precompose):
        return ["pre", f.word.to_json(), expr_to_json(f.inner)]
    raise TypeError(f"unknown node {type(f).__name__}")


def expr_from_json(data) -> ExprFun:
    head = data[0]
    if head == "const":
        return Const(complex(data[1], data[2]))
    if head == "z":
        return Z()
    if head == "conjz":
        return ConjZ()
    if head == "add":
        return Add(expr_from_json(data[1]), expr_from_json(data[2]))
    if head == "mul":
        return Mul(expr_from_json(data[1]), expr_from_json(data[2]))
    if head == "pre":
        return Precompose(expr_from_json(data[2]), MoebiusWord.from_json(data[1]))
    raise ValueError(f"unknown expression head {head!r}")


@dataclass(frozen=True)
class CrossedElement:
    """Finite sum of f_n U^n; ``coeffs`` is a sorted tuple of (n, f_n)."""

    coeffs: tuple = ()

    def __post_init__(self):
        merged: dict[int, ExprFun] = {}
        for n, f in self.coeffs:
            n = int(n)
            f = lift(f)
            merged[n] = merged[n] + f if n in merged else f
        object.__setattr__(self, "coeffs", tuple(sorted(merged.items())))

    @classmethod
    def from_dict(cls, d: Mapping[int, object]) -> "CrossedElement":
        return cls(tuple(d.items()))

    @property
    def support(self) -> tuple:
        return tuple(n for n, _ in self.coeffs)

    def coeff(self, n: int) -> ExprFun:
        for m, f in self.coeffs:
            if m == n:
                return f
        return Const(0)

    def width(self) -> int:
        return max((abs(n) for n in self.support), default=0)

    def __add__(self, other: "CrossedElement") -> "CrossedElement":
        return CrossedElement(self.coeffs + other.coeffs)

    def __sub__(self, other: "CrossedElement") -> "CrossedElement":
        return self + other.scale(-1)

    def scale(self, c) -> "CrossedElement":
        return CrossedElement(tuple((n, Mul(Const(c), f)) for n, f in self.coeffs))

    def equals(self, other: "CrossedElement", tol: float = EXPR_TOL) -> bool:
        ns = set(self.support) | set(other.support)
        return all(expr_equal(self.coeff(n), other.coeff(n), tol) for n in ns)

    def to_json(self) -> dict:
        return {"terms": [{"n": n, "expr": expr_to_json(f)} for n, f in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CrossedElement":
        return cls(tuple((int(t["n"]), expr_from_json(t["expr"])) for t in data["terms"]))


def unit() -> CrossedElement:
    return CrossedElement(((0, Const(1)),))


def shift(n: int = 1) -> CrossedElement:
    """U^n."""
    return CrossedElement(((n, Const(1)),))


def generator() -> CrossedElement:
    """The coordinate function z as a degree-zero element."""
    return CrossedElement(((0, Z()),))


def embed(f) -> CrossedElement:
    return CrossedElement(((0, lift(f)),))


def monomial(f, n: int) -> CrossedElement:
    return CrossedElement(((n, lift(f)),))


def multiply(a: CrossedElement, b: CrossedElement, phi: DiskAutomorphism) -> CrossedElement:
    terms = []
    for m, f in a.coeffs:
        back = power(phi, -m)
        for n, g in b.coeffs:
            terms.append((m + n, Mul(f, g.after(back))))
    return CrossedElement(tuple(terms))


def adjoint(a: CrossedElement, phi: DiskAutomorphism) -> CrossedElement:
    return CrossedElement(tuple((-n, conj(f).after(power(phi, n))) for n, f in a.coeffs))


def gauge_act(lam: complex, a: CrossedElement) -> CrossedElement:
    lam = complex(lam)
    if abs(abs(lam) - 1) > 1e-12:
        raise DomainError("gauge parameter must lie on the unit circle")
    return CrossedElement(tuple((n, Mul(Const(lam**n), f)) for n, f in a.coeffs))


def expectation(n: int, a: CrossedElement) -> ExprFun:
    """Degree-n coefficient; the gauge average of a U^-n projects exactly onto it."""
    return a.coeff(n)


def fejer_weights(k: int) -> dict[int, float]:
    if k < 0:
        raise ValueError("k must be non-negative")
    return {n: (k + 1 - abs(n)) / (k + 1) for n in range(-k, k + 1)}


def fejer(k: int, a: CrossedElement) -> CrossedElement:
    w = fejer_weights(k)
    return CrossedElement(tuple((n, Mul(Const(w[n]), f)) for n, f in a.coeffs if n in w))


def product(elems: Iterable[CrossedElement], phi: DiskAutomorphism) -> CrossedElement:
    out = unit()
    for e in elems:
        out = multiply(out, e, phi)
    return out
