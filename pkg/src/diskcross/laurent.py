"""Laurent polynomials in one variable Z restricted to the unit circle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np


@dataclass(frozen=True)
class Laurent:
    coeffs: tuple = ()  # sorted (exponent, coefficient) pairs, zeros dropped

    def __post_init__(self):
        acc: dict[int, complex] = {}
        for n, c in self.coeffs:
            acc[int(n)] = acc.get(int(n), 0j) + complex(c)
        object.__setattr__(self, "coeffs", tuple(sorted((n, c) for n, c in acc.items() if c != 0)))

    @classmethod
    def from_dict(cls, d: Mapping[int, complex]) -> "Laurent":
        return cls(tuple(d.items()))

    @classmethod
    def const(cls, c: complex) -> "Laurent":
        return cls(((0, c),))

    @classmethod
    def monomial(cls, n: int, c: complex = 1) -> "Laurent":
        return cls(((n, c),))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coeff(self, n: int) -> complex:
        return self.as_dict().get(n, 0j)

    @property
    def degrees(self) -> tuple:
        if not self.coeffs:
            return (0, 0)
        return (self.coeffs[0][0], self.coeffs[-1][0])

    def __add__(self, other: "Laurent") -> "Laurent":
        return Laurent(self.coeffs + other.coeffs)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return Laurent(self.coeffs + tuple((n, -c) for n, c in other.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return Laurent(tuple((n, c * other) for n, c in self.coeffs))
        return Laurent(tuple((m + n, a * b) for m, a in self.coeffs for n, b in other.coeffs))

    __rmul__ = __mul__

    def star(self) -> "Laurent":
        """Pointwise conjugate on the circle: conj(Z^n) = Z^-n."""
        return Laurent(tuple((-n, c.conjugate()) for n, c in self.coeffs))

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        out = np.zeros(w.shape, dtype=complex)
        for n, c in self.coeffs:
            out = out + c * w**n
        return out

    def distance(self, other: "Laurent") -> float:
        diff = self - other
        return max((abs(c) for _, c in diff.coeffs), default=0.0)

    def close_to(self, other: "Laurent", tol: float = 1e-10) -> bool:
        return self.distance(other) <= tol

    def to_json(self) -> list:
        return [{"n": n, "c": [c.real, c.imag]} for n, c in self.coeffs]
