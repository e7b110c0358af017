"""Finite matrix models of the irreducible representations.

Orbit representations act on l2(Z) with basis e_k and are truncated to the
indices -N..N.  The truncation is a compression: the shift sends e_k to
e_{k+1} and simply drops e_N, so every identity between infinite operators
survives on rows and columns away from the edge.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from scipy.linalg import toeplitz

from .crossed_product import CrossedElement
from .dynamics import orbit, rational_rotation
from .errors import KindMismatch, RationalityRequired
from .laurent import Laurent
from .moebius import DiskAutomorphism, Kind, classify, fixed_points, unit_root
from .normal_forms import elliptic_normal_form


# -- representation kinds ----------------------------------------------------


@dataclass(frozen=True)
class HyperbolicOrbit:
    x: complex


@dataclass(frozen=True)
class ParabolicOrbit:
    x: complex


@dataclass(frozen=True)
class Character:
    """One-dimensional representation: A -> fixed point, U -> exp(2 i pi theta)."""

    theta: float
    fixed_point: complex


@dataclass(frozen=True)
class EllipticCircle:
    """Orbit representation of an elliptic map along the invariant circle of given radius.

    ``radius`` and ``phase`` are polar coordinates in the linearising chart
    centred at the interior fixed point.
    """

    radius: float
    phase: float = 0.0


@dataclass(frozen=True)
class EllipticRational:
    """q x q model for rotation number p/q: U -> eta C, A -> diag of the points lam w^k."""

    p: int
    q: int
    eta: complex = 1 + 0j
    lam: complex = 1 + 0j


RepKind = Union[HyperbolicOrbit, ParabolicOrbit, Character, EllipticCircle, EllipticRational]


def kind_name(kind: RepKind) -> str:
    return type(kind).__name__


@dataclass(frozen=True)
class TruncatedRep:
    kind: RepKind
    N: int
    matrix: np.ndarray = field(repr=False)
    points: np.ndarray = field(repr=False, default=None)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def index_slice(self, half: int) -> slice:
        """Rows/columns with |k| <= half for orbit kinds."""
        return slice(self.N - half, self.N + half + 1)

    def to_json(self) -> dict:
        return {
            "kind": kind_name(self.kind),
            "N": self.N,
            "matrix": [[[v.real, v.imag] for v in row] for row in self.matrix],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "re", "im"])
        for i, j in zip(*np.nonzero(self.matrix)):
            v = self.matrix[i, j]
            w.writerow([int(i), int(j), repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()


# -- building blocks ---------------------------------------------------------


def truncated_shift(N: int, n: int = 1) -> np.ndarray:
    """Compression of U^n to indices -N..N (zero-filled at the edges)."""
    size = 2 * N + 1
    if abs(n) >= size:
        return np.zeros((size, size), dtype=complex)
    return np.eye(size, k=-n, dtype=complex)


def cyclic_shift(q: int) -> np.ndarray:
    """C e_k = e_{k+1 mod q}."""
    return np.roll(np.eye(q, dtype=complex), 1, axis=0)


def _twisted_sum(a: CrossedElement, pts: np.ndarray, shift_power) -> np.ndarray:
    size = len(pts)
    out = np.zeros((size, size), dtype=complex)
    for n, f in a.coeffs:
        out += np.asarray(f(pts), dtype=complex)[:, None] * shift_power(n)
    return out


def _orbit_matrix(a: CrossedElement, pts: np.ndarray) -> np.ndarray:
    size = len(pts)
    out = np.zeros((size, size), dtype=complex)
    for n, f in a.coeffs:
        if abs(n) >= size:
            continue
        vals = np.asarray(f(pts), dtype=complex)
        # entry [k+n, k] = f_n(x_{k+n})
        out += np.diag(vals[n:] if n >= 0 else vals[: size + n], -n)
    return out


def _check_fixed(phi: DiskAutomorphism, p: complex):
    if abs(phi(p) - p) > 1e-9:
        raise KindMismatch("character point is not fixed by the automorphism")


def rational_points(phi: DiskAutomorphism, kind: EllipticRational) -> np.ndarray:
    """Spectrum points y_k of A in the q x q model, y_{k+1} = phi(y_k)."""
    p, q = kind.p, kind.q
    if classify(phi).tag is not Kind.ELLIPTIC:
        raise KindMismatch("the q x q model needs an elliptic automorphism")
    if q <= 0:
        raise RationalityRequired("denominator must be positive")
    target = Fraction(p, q) % 1
    if phi.z0 == 0:
        frac = phi.rational if phi.rational is not None else rational_rotation(phi.theta)
        if frac is None or frac != target:
            raise RationalityRequired(f"rotation number is not {p}/{q}")
        d = kind.lam * np.array([unit_root(k * p, q) for k in range(q)])
        return d
    nf = elliptic_normal_form(phi)
    rot = (np.angle(nf.invariant) / (2 * math.pi)) % 1.0
    if min(abs(rot - float(target)), 1 - abs(rot - float(target))) > 1e-12:
        raise RationalityRequired(f"rotation number is not {p}/{q}")
    d = kind.lam * np.array([unit_root(k * p, q) for k in range(q)])
    c = fixed_points(phi).points[0]
    return (d + c) / (1 + c.conjugate() * d)


def _orbit_points(phi: DiskAutomorphism, kind: RepKind, N: int) -> np.ndarray:
    tag = classify(phi).tag
    if isinstance(kind, HyperbolicOrbit):
        if tag is not Kind.HYPERBOLIC:
            raise KindMismatch("HyperbolicOrbit needs a hyperbolic automorphism")
        x = kind.x
    elif isinstance(kind, ParabolicOrbit):
        if tag is not Kind.PARABOLIC:
            raise KindMismatch("ParabolicOrbit needs a parabolic automorphism")
        x = kind.x
    else:
        if tag is not Kind.ELLIPTIC:
            raise KindMismatch("EllipticCircle needs an elliptic automorphism")
        w = kind.radius * np.exp(1j * kind.phase)
        c = fixed_points(phi).points[0]
        x = (w + c) / (1 + c.conjugate() * w)
    return np.array(orbit(phi, x, -N, N))


def represent(a: CrossedElement, phi: DiskAutomorphism, kind: RepKind, N: int = 0) -> TruncatedRep:
    if isinstance(kind, Character):
        p = complex(kind.fixed_point)
        _check_fixed(phi, p)
        u = np.exp(2j * math.pi * kind.theta)
        val = sum(complex(f(p)) * u**n for n, f in a.coeffs)
        return TruncatedRep(kind, 0, np.array([[val]], dtype=complex), np.array([p]))
    if isinstance(kind, EllipticRational):
        pts = rational_points(phi, kind)
        C = cyclic_shift(kind.q)
        eta = complex(kind.eta)
        mat = _twisted_sum(a, pts, lambda n: eta**n * np.linalg.matrix_power(C, n % kind.q))
        return TruncatedRep(kind, 0, mat, pts)
    if not isinstance(kind, (HyperbolicOrbit, ParabolicOrbit, EllipticCircle)):
        raise KindMismatch(f"unknown representation kind {kind!r}")
    pts = _orbit_points(phi, kind, N)
    return TruncatedRep(kind, N, _orbit_matrix(a, pts), pts)


def interior(mat: np.ndarray, N: int, half: int) -> np.ndarray:
    s = slice(N - half, N + half + 1)
    return mat[s, s]


# -- covariance ----------------------------------------------------------------


def covariance_residual(phi: DiskAutomorphism, kind: RepKind, N: int = 20) -> float:
    """Size of U* A U - phi(A) in the model (interior rows only for orbit kinds)."""
    if isinstance(kind, EllipticRational):
        y = rational_points(phi, kind)
        U = kind.eta * cyclic_shift(kind.q)
        lhs = U.conj().T @ np.diag(y) @ U
        return float(np.max(np.abs(lhs - np.diag(phi(y)))))
    if isinstance(kind, Character):
        p = complex(kind.fixed_point)
        _check_fixed(phi, p)
        return float(abs(p - phi(p)))
    pts = _orbit_points(phi, kind, N)
    S = truncated_shift(N)
    lhs = S.conj().T @ np.diag(pts) @ S
    diff = lhs - np.diag(phi(pts))
    return float(np.max(np.abs(np.diag(interior(diff, N, N - 1)))))


def rational_relations(phi: DiskAutomorphism, kind: EllipticRational) -> dict:
    """Residuals of: U unitary, A normal, U* A U = phi(A) in the q x q model."""
    y = rational_points(phi, kind)
    U = kind.eta * cyclic_shift(kind.q)
    A = np.diag(y)
    eye = np.eye(kind.q)
    return {
        "unitary": float(np.max(np.abs(U.conj().T @ U - eye))),
        "normal": float(np.max(np.abs(A.conj().T @ A - A @ A.conj().T))),
        "covariance": float(np.max(np.abs(U.conj().T @ A @ U - np.diag(phi(y))))),
    }


# -- hyperbolic symbols and Toeplitz blocks -------------------------------------


@dataclass(frozen=True)
class SymbolPair:
    minus: Laurent
    plus: Laurent

    def __mul__(self, other: "SymbolPair") -> "SymbolPair":
        return SymbolPair(self.minus * other.minus, self.plus * other.plus)

    def star(self) -> "SymbolPair":
        return SymbolPair(self.minus.star(), self.plus.star())

    def distance(self, other: "SymbolPair") -> float:
        return max(self.minus.distance(other.minus), self.plus.distance(other.plus))

    def to_json(self) -> dict:
        return {"minus": self.minus.to_json(), "plus": self.plus.to_json()}


def symbol(a: CrossedElement, phi: DiskAutomorphism) -> SymbolPair:
    """Pair of Laurent symbols seen at the two ends of every orbit.

    Coefficients are evaluated at the repulsive fixed point (orbit end k -> -oo,
    contributing Z^-n) and at the attractive one (k -> +oo, contributing Z^n).
    """
    if classify(phi).tag is not Kind.HYPERBOLIC:
        raise KindMismatch("symbols are defined for hyperbolic automorphisms")
    attract, repel = fixed_points(phi).points
    minus = Laurent(tuple((-n, complex(f(repel))) for n, f in a.coeffs))
    plus = Laurent(tuple((n, complex(f(attract))) for n, f in a.coeffs))
    return SymbolPair(minus, plus)


def empirical_symbol(a: CrossedElement, phi: DiskAutomorphism, x: complex, depth: int = 400) -> SymbolPair:
    """Symbols read off the far ends of one orbit instead of the fixed points."""
    ends = orbit(phi, x, -depth, depth)
    lo, hi = ends[0], ends[-1]
    minus = Laurent(tuple((-n, complex(f(lo))) for n, f in a.coeffs))
    plus = Laurent(tuple((n, complex(f(hi))) for n, f in a.coeffs))
    return SymbolPair(minus, plus)


def toeplitz_from_symbol(sym: Laurent, size: int) -> np.ndarray:
    """Finite section [c_{i-j}] of the Toeplitz operator with the given symbol."""
    col = np.array([sym.coeff(k) for k in range(size)], dtype=complex)
    row = np.array([sym.coeff(-k) for k in range(size)], dtype=complex)
    return toeplitz(col, row)


def tail_norm(mat: np.ndarray, N: int, M: int) -> float:
    """Largest singular value of ``mat`` restricted to indices with |k| > M."""
    idx = np.array([i for i in range(2 * N + 1) if abs(i - N) > M])
    if idx.size == 0:
        return 0.0
    return float(np.linalg.norm(mat[np.ix_(idx, idx)], 2))


@dataclass(frozen=True)
class BlockDecomposition:
    toeplitz_minus: np.ndarray = field(repr=False)
    toeplitz_plus: np.ndarray = field(repr=False)
    assembly: np.ndarray = field(repr=False)
    compact_residual: np.ndarray = field(repr=False)
    N: int = 0

    def residual_tail_norm(self, M: int) -> float:
        return tail_norm(self.compact_residual, self.N, M)


def block_decompose(rep: TruncatedRep, a: CrossedElement, phi: DiskAutomorphism) -> BlockDecomposition:
    """Split l2(Z) = H- (+) H+ at 0 and subtract the Toeplitz parts given by the symbols.

    H- carries the reversed basis e_{-1}, e_{-2}, ... so that its Toeplitz
    operator has symbol ``minus``.
    """
    if not isinstance(rep.kind, HyperbolicOrbit):
        raise KindMismatch("block decomposition needs a HyperbolicOrbit truncation")
    N = rep.N
    sym = symbol(a, phi)
    t_minus = toeplitz_from_symbol(sym.minus, N)
    t_plus = toeplitz_from_symbol(sym.plus, N + 1)
    assembly = np.zeros_like(rep.matrix)
    assembly[:N, :N] = t_minus[::-1, ::-1]
    assembly[N:, N:] = t_plus
    return BlockDecomposition(t_minus, t_plus, assembly, rep.matrix - assembly, N)


# -- parabolic ---------------------------------------------------------------------


@dataclass(frozen=True)
class ParabolicStructure:
    laurent: Laurent
    residual: np.ndarray = field(repr=False)
    N: int = 0

    def tail_norm(self, M: int) -> float:
        return tail_norm(self.residual, self.N, M)

    def tail_norms(self, Ms: Sequence[int]) -> list[float]:
        return [self.tail_norm(M) for M in Ms]


def parabolic_structure_residual(rep: TruncatedRep, a: CrossedElement, phi: DiskAutomorphism) -> ParabolicStructure:
    """Split the image into a Laurent polynomial in the shift plus a remainder.

    Both ends of a parabolic orbit converge to the same fixed point, so a
    single symbol sum f_n(p) Z^n accounts for the whole non-compact part.
    """
    if not isinstance(rep.kind, ParabolicOrbit):
        raise KindMismatch("parabolic structure needs a ParabolicOrbit truncation")
    p = fixed_points(phi).points[0]
    lau = Laurent(tuple((n, complex(f(p))) for n, f in a.coeffs))
    N = rep.N
    assembly = sum((c * truncated_shift(N, n) for n, c in lau.coeffs), np.zeros_like(rep.matrix))
    return ParabolicStructure(lau, rep.matrix - assembly, N)


# -- elliptic field ----------------------------------------------------------------


@dataclass(frozen=True)
class FieldReport:
    ts: tuple
    v_content: tuple
    relation_residual: float
    constant_at_zero: tuple  # degree-n values f_n(0), i.e. the C*(U) part at t = 0

    def to_json(self) -> dict:
        return {
            "t": list(self.ts),
            "v_content": list(self.v_content),
            "relation_residual": self.relation_residual,
        }


def v_content(a: CrossedElement, t: float, J: int = 64) -> float:
    """Largest non-constant Fourier mode of the coefficients along the circle of radius t."""
    ang = np.exp(2j * math.pi * np.arange(J) / J)
    worst = 0.0
    for _, f in a.coeffs:
        vals = np.asarray(f(t * ang), dtype=complex)
        spec = np.fft.fft(vals) / J
        worst = max(worst, float(np.max(np.abs(spec[1:]))) if J > 1 else 0.0)
    return worst


def rotation_relation_residual(theta: float, N: int = 20, q: int | None = None, p: int | None = None) -> float:
    """|VU - e^{2 i pi theta} UV| in the truncated (or q x q) model."""
    if q is not None:
        V = np.diag([unit_root(k * p, q) for k in range(q)])
        U = cyclic_shift(q)
        w = unit_root(p, q)
    else:
        w = np.exp(2j * math.pi * theta)
        V = np.diag(w ** np.arange(-N, N + 1))
        U = truncated_shift(N)
    return float(np.max(np.abs(V @ U - w * U @ V)))


def elliptic_field_check(a: CrossedElement, phi: DiskAutomorphism, ts: Sequence[float] = (0.0, 0.25, 0.5, 0.75, 1.0),
                         J: int = 64, N: int = 20) -> FieldReport:
    if classify(phi).tag is not Kind.ELLIPTIC or phi.z0 != 0:
        raise KindMismatch("field check expects a rotation of the disk")
    vc = tuple(v_content(a, float(t), J) for t in ts)
    frac = phi.rational if phi.rational is not None else rational_rotation(phi.theta)
    if frac is not None:
        res = rotation_relation_residual(phi.theta, q=frac.denominator, p=frac.numerator)
    else:
        res = rotation_relation_residual(phi.theta, N=N)
    at0 = tuple((n, complex(f(0j))) for n, f in a.coeffs)
    return FieldReport(tuple(float(t) for t in ts), vc, res, at0)


# -- norms and spectra ---------------------------------------------------------------


def truncated_norm(a: CrossedElement, phi: DiskAutomorphism, kind: RepKind, N_list: Sequence[int]) -> list[float]:
    return [float(np.linalg.norm(represent(a, phi, kind, N).matrix, 2)) for N in N_list]


def truncated_spectrum(rep: TruncatedRep) -> np.ndarray:
    mat = rep.matrix
    off = mat - np.diag(np.diag(mat))
    if np.any(off != 0):
        raise KindMismatch("truncated_spectrum expects the image of a diagonal element")
    return np.diag(mat).copy()
