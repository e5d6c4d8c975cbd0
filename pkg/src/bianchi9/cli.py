"""Command-line interface.

Subcommands: theta, orbit, coeff, identify, check.  All results go to stdout
as a single JSON document; logs go to stderr.  Rationals are "num/den"
strings end to end.  Exit codes: 2 invalid parameters, 3 domain errors,
4 identification failure, 5 exceptional orbit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import modular, seeley
from .dirac import dtilde_sq_crosscheck
from .instanton import TwoParamPoint, frame_two_param_jet
from .modular import ExceptionalOrbitError, IdentificationError
from .seeley import CoeffIndex
from .theta import Characteristics, ThetaSpec, theta_eval, theta_series

log = logging.getLogger("bianchi9")

# tag for the nome convention baked into every cached series; changing the
# convention must invalidate old cache entries
NOME_TAG = "Q=exp(-2*pi*mu)"

EXIT_INVALID = 2
EXIT_DOMAIN = 3
EXIT_IDENTIFY = 4
EXIT_EXCEPTIONAL = 5


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(EXIT_INVALID) from exc


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, sort_keys=True, separators=(",", ":"))
    sys.stdout.write("\n")


def _fmt(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}" if r.denominator != 1 else str(r.numerator)


# -- cache ------------------------------------------------------------


def cache_dir(args) -> Path:
    if args.cache_dir:
        return Path(args.cache_dir)
    env = os.environ.get("SDW_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "bianchi9"


def cache_key(family: str, p: Fraction, q: Fraction, order: int, trunc: int) -> str:
    blob = json.dumps(
        [family, _fmt(p), _fmt(q), order, trunc, NOME_TAG], separators=(",", ":")
    ).encode()
    return hashlib.sha256(blob).hexdigest()


def cache_read(path: Path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None


def cache_write(path: Path, doc: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- subcommands ------------------------------------------------------


def cmd_theta(args) -> None:
    char = Characteristics(_rational(args.p), _rational(args.q))
    if args.n < 0 or args.n > 4:
        raise SystemExit(EXIT_INVALID)
    spec = ThetaSpec(char, args.n, args.dq)
    if args.series:
        _emit({"series": theta_series(spec, args.trunc).to_json()})
        return
    mu = complex(args.mu_re, args.mu_im)
    try:
        v = theta_eval(spec, mu, args.tol)
    except ValueError as exc:
        log.error("%s", exc)
        raise SystemExit(EXIT_DOMAIN) from exc
    _emit({"value": [v.real, v.imag]})


def _orbit_or_exit(args) -> modular.Orbit:
    orb = modular.orbit(_rational(args.p), _rational(args.q))
    try:
        budget = modular.valence_budget(orb)
    except ExceptionalOrbitError as exc:
        log.error("%s", exc)
        raise SystemExit(EXIT_EXCEPTIONAL) from exc
    log.debug("orbit n=%d n0=%d budget=%s", orb.n, orb.n0, budget)
    return orb


def cmd_orbit(args) -> None:
    orb = _orbit_or_exit(args)
    _emit(
        {
            "n": orb.n,
            "n0": orb.n0,
            "budget": _fmt(modular.valence_budget(orb)),
            "points": [[_fmt(pt.p), _fmt(pt.q)] for pt in orb.points],
        }
    )


def _orbit_sum_cached(args, orb, index: CoeffIndex):
    """Orbit-sum series with a disk cache keyed on the exact inputs."""
    key = cache_key("two-param-orbit-sum", Fraction(args.p), Fraction(args.q), index.order, args.trunc)
    path = cache_dir(args) / f"{key}.json"
    cached = cache_read(path)
    if cached is not None:
        log.info("cache hit %s", path)
        return cached
    log.info("cache miss; computing orbit sum (order %d, trunc %d)", index.order, args.trunc)
    result = seeley.orbit_sum(orb, index, args.trunc)
    doc = result.to_json()
    cache_write(path, doc)
    return doc


def _coeff_index(order: int) -> CoeffIndex:
    if order not in (0, 2, 4):
        raise SystemExit(EXIT_INVALID)
    return CoeffIndex(order // 2)


def cmd_coeff(args) -> None:
    orb = _orbit_or_exit(args)
    _emit(_orbit_sum_cached(args, orb, _coeff_index(args.order)))


def cmd_identify(args) -> None:
    if args.trunc < 3:
        log.error("identification needs trunc >= 3")
        raise SystemExit(EXIT_INVALID)
    orb = _orbit_or_exit(args)
    index = _coeff_index(args.order)
    result = seeley.orbit_sum(orb, index, args.trunc)
    try:
        ident = modular.identify(result, orb)
    except IdentificationError as exc:
        log.error("%s", exc)
        raise SystemExit(EXIT_IDENTIFY) from exc
    _emit(ident.to_json(index.order))


def cmd_check(args) -> None:
    if args.subject == "transforms":
        orb = _orbit_or_exit(args)
        report = modular.vv_modularity_report(
            orb, _coeff_index(args.order), samples=args.samples, tol=args.tol, seed=args.seed
        )
        _emit(report)
        return
    if args.subject == "dirac":
        pt = TwoParamPoint(_rational(args.p), _rational(args.q))
        mu = complex(args.mu_re, args.mu_im)
        try:
            frame = frame_two_param_jet(pt, mu, 1e-14)
        except ValueError as exc:
            log.error("%s", exc)
            raise SystemExit(EXIT_DOMAIN) from exc
        import random

        rng = random.Random(args.seed)
        x = (mu, 0.3 + 2.2 * rng.random(), 6.28 * rng.random(), 6.28 * rng.random())
        _emit(dtilde_sq_crosscheck(x, frame, tol=args.tol))
        return
    # subject == "crossval": exact orbit-sum series vs jet evaluation at mu
    orb = _orbit_or_exit(args)
    index = _coeff_index(args.order)
    result = seeley.orbit_sum(orb, index, args.trunc)
    mu = args.mu_re
    exact = result.representation.evaluate_mu(mu)
    direct = 0j
    for pt in orb.points:
        frame = frame_two_param_jet(TwoParamPoint(pt.p, pt.q), mu, 1e-14)
        direct += complex(seeley.coefficient(frame, index).representation.comps[0])
    scale = max(abs(direct), 1.0)
    resid = abs(exact - direct) / scale
    _emit(
        {
            "mu": mu,
            "order": index.order,
            "series_value": [exact.real, exact.imag],
            "jet_value": [direct.real, direct.imag],
            "relative_residual": resid,
            "pass": bool(resid < 1e-6),
        }
    )


# -- parser -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bianchi9")
    parser.add_argument("--cache-dir", default=None)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, trunc=True):
        sp.add_argument("--p", required=True)
        sp.add_argument("--q", required=True)
        if trunc:
            sp.add_argument("--trunc", type=int, default=6)

    t = sub.add_parser("theta", help="theta function value or nome series")
    common(t)
    t.add_argument("--n", type=int, default=0, help="mu-derivative order")
    t.add_argument("--dq", action="store_true", help="apply the q-derivative")
    t.add_argument("--series", action="store_true")
    t.add_argument("--mu-re", type=float, default=1.0)
    t.add_argument("--mu-im", type=float, default=0.0)
    t.add_argument("--tol", type=float, default=1e-10)
    t.set_defaults(func=cmd_theta)

    o = sub.add_parser("orbit", help="enumerate the orbit of a parameter point")
    common(o, trunc=False)
    o.set_defaults(func=cmd_orbit)

    c = sub.add_parser("coeff", help="exact orbit-sum heat coefficient series")
    common(c)
    c.add_argument("--order", type=int, required=True, choices=(0, 2, 4))
    c.set_defaults(func=cmd_coeff)

    i = sub.add_parser("identify", help="match an orbit sum against modular forms")
    common(i)
    i.add_argument("--order", type=int, required=True, choices=(0, 2, 4))
    i.set_defaults(func=cmd_identify)

    k = sub.add_parser("check", help="numeric structural checks")
    k.add_argument("subject", choices=("transforms", "dirac", "crossval"))
    common(k)
    k.add_argument("--order", type=int, default=4, choices=(0, 2, 4))
    k.add_argument("--samples", type=int, default=5)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--tol", type=float, default=1e-10)
    k.add_argument("--mu-re", type=float, default=1.05)
    k.add_argument("--mu-im", type=float, default=0.0)
    k.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> None:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.INFO
    )
    args.func(args)


if __name__ == "__main__":
    main()
