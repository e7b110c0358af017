"""Command-line entry point; every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import crossed_product as cp
from . import dynamics, normal_forms, operator_models as om, spectra
from .errors import DiskCrossError, DomainError
from .moebius import DiskAutomorphism, classify, fixed_points, Kind
from .sampling import random_point, rng_of

SCHEMA_VERSION = "1"

EXIT_ERROR = 1
EXIT_DOMAIN = 2
EXIT_PARSE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit({"error": {"code": "parse", "message": message}})
        sys.exit(EXIT_PARSE)


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _cx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _emit(doc: dict):
    doc = dict(doc)
    doc["schema_version"] = SCHEMA_VERSION
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _phi(args) -> DiskAutomorphism:
    return DiskAutomorphism(args.theta, complex(args.z0_re, args.z0_im))


def _add_map_args(p, theta=0.0, re=0.0, im=0.0):
    p.add_argument("--theta", type=float, default=theta)
    p.add_argument("--z0-re", type=float, default=re)
    p.add_argument("--z0-im", type=float, default=im)


def cmd_classify(args) -> dict:
    phi = _phi(args)
    cls = classify(phi, args.tol)
    out = {"class": cls.tag.value, "margin": cls.margin, "map": phi.to_json()}
    if cls.tag is not Kind.IDENTITY:
        out.update(fixed_points(phi).to_json())
    return out


def cmd_orbit(args) -> dict:
    phi = _phi(args)
    lo, hi = args.range
    pts = dynamics.orbit(phi, args.x, lo, hi)
    out = {"range": [lo, hi], "points": [_cx(z) for z in pts]}
    if args.closure:
        out["closure"] = dynamics.orbit_closure(phi, args.x, K=max(abs(lo), abs(hi))).limit_set.to_json()
    return out


def cmd_normal_form(args) -> dict:
    return normal_forms.normal_form(_phi(args)).to_json()


def cmd_conjugacy(args) -> dict:
    phi = normal_forms.hyperbolic_canonical(args.a)
    psi = normal_forms.hyperbolic_canonical(args.b)
    mu = dynamics.hyperbolic_conjugacy(phi, psi)
    rng = rng_of(args.seed)
    zs = np.array([random_point(rng, 0.99) for _ in range(args.n_points)])
    images = mu(zs)
    return {
        "a": args.a,
        "b": args.b,
        "equivariance_residual": mu.equivariance_residual(zs),
        "inverse_residual": float(np.max(np.abs(mu.inverse()(images) - zs))),
        "pairs": [[_cx(z), _cx(w)] for z, w in zip(zs, images)],
    }


def _rep_kind(args, phi):
    if args.kind == "hyperbolic":
        return om.HyperbolicOrbit(args.x)
    if args.kind == "parabolic":
        return om.ParabolicOrbit(args.x)
    if args.kind == "elliptic-circle":
        return om.EllipticCircle(abs(args.x), float(np.angle(args.x)))
    return om.EllipticRational(args.p, args.q, 1.0, args.x)


def _rep_phi(args) -> DiskAutomorphism:
    if args.theta is not None:
        return DiskAutomorphism(args.theta, complex(args.z0_re, args.z0_im))
    if args.kind == "hyperbolic":
        return normal_forms.hyperbolic_canonical(0.5)
    if args.kind == "parabolic":
        return normal_forms.PHI_PLUS
    if args.kind == "elliptic-rational":
        return DiskAutomorphism.from_rational(args.p, args.q)
    return DiskAutomorphism(2 ** 0.5 - 1)


def cmd_rep_check(args) -> dict:
    phi = _rep_phi(args)
    kind = _rep_kind(args, phi)
    out = {"kind": args.kind, "map": phi.to_json(), "x": _cx(args.x)}
    if args.kind == "elliptic-rational":
        out["relations"] = om.rational_relations(phi, kind)
        return out
    n_list = args.N_list or [args.N]
    a = cp.generator()
    a_sa = a + cp.adjoint(a, phi)
    rows = []
    for N in n_list:
        rows.append({
            "N": N,
            "covariance_residual": om.covariance_residual(phi, kind, N),
            "norm_A": om.truncated_norm(a, phi, kind, [N])[0],
            "norm_U": om.truncated_norm(cp.shift(), phi, kind, [N])[0],
            "norm_A_plus_adjoint": om.truncated_norm(a_sa, phi, kind, [N])[0],
        })
    out["table"] = rows
    return out


def _load_json(path):
    if path in (None, "-"):
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def cmd_symbol(args) -> dict:
    phi = _phi(args)
    a = cp.CrossedElement.from_json(_load_json(args.element)) if args.element else cp.generator()
    return {"map": phi.to_json(), "symbol": om.symbol(a, phi).to_json()}


def cmd_spectrum_closure(args) -> dict:
    data = _load_json(args.input)
    if args.model:
        data = dict(data, model=args.model)
    s = spectra.SpectrumSet.from_json(data)
    c = spectra.closure(s)
    return {"input_closed": spectra.is_closed(s), "closure": c.to_json()}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diskcross", description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="class, margin and fixed points")
    _add_map_args(p)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbit", help="orbit points as [re, im] pairs")
    _add_map_args(p)
    p.add_argument("--x", type=parse_complex, default=0j)
    p.add_argument("--range", type=int, nargs=2, default=[-5, 5], metavar=("LO", "HI"))
    p.add_argument("--closure", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("normal-form", help="conformal normal form and invariant")
    _add_map_args(p)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("conjugacy", help="arc-length conjugacy between two hyperbolic normal forms")
    p.add_argument("--a", type=float, default=1 / 3)
    p.add_argument("--b", type=float, default=2 / 3)
    p.add_argument("--n-points", type=int, default=200)
    p.set_defaults(func=cmd_conjugacy)

    p = sub.add_parser("rep-check", help="covariance residuals and truncated norms")
    p.add_argument("--kind", choices=["hyperbolic", "parabolic", "elliptic-circle", "elliptic-rational"],
                   default="hyperbolic")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--z0-re", type=float, default=0.0)
    p.add_argument("--z0-im", type=float, default=0.0)
    p.add_argument("--x", type=parse_complex, default=0j)
    p.add_argument("--N", type=int, default=20)
    p.add_argument("--N-list", type=int, nargs="+", default=None)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=3)
    p.set_defaults(func=cmd_rep_check)

    p = sub.add_parser("symbol", help="Toeplitz symbols of an element (hyperbolic maps)")
    _add_map_args(p, re=-0.5)
    p.add_argument("--element", default=None, help="element JSON file; defaults to the generator z")
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("spectrum-closure", help="closure of a finite spectrum description")
    p.add_argument("--model", choices=list(spectra.MODELS), default=None)
    p.add_argument("--in", dest="input", default="-")
    p.set_defaults(func=cmd_spectrum_closure)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except DiskCrossError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}})
        return EXIT_DOMAIN if isinstance(exc, DomainError) else EXIT_ERROR
    except (OSError, ValueError, KeyError) as exc:
        _emit({"error": {"code": "input", "message": str(exc)}})
        return EXIT_ERROR
    doc["command"] = args.command
    if args.verbose:
        sys.stderr.write(f"{args.command}: ok\n")
    _emit(doc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
