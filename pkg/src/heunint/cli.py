"""Command-line front end.

Exit codes: 0 success (or all checks passed), 1 a verification failure,
2 usage or domain errors. Complex parameters are written ``re`` or
``re+imi`` and separated by commas, in the family's parameter order.
"""

import argparse
import json
import sys

from . import catalog as cat
from . import verify
from .errors import HeunError
from .series import PARAM_NAMES, Family, ParamSet, Solution, canonical_solution, heun_eval

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_complex(token):
    t = token.strip()
    if not t:
        raise UsageError("empty number")
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        raise UsageError(f"malformed number {token!r}") from None


def parse_params(text, family):
    family = Family(family)
    vals = [parse_complex(t) for t in text.split(",")]
    want = len(PARAM_NAMES[family])
    if len(vals) != want:
        raise UsageError(f"{family.value} takes {want} parameters ({', '.join(PARAM_NAMES[family])}), "
                         f"got {len(vals)}")
    return ParamSet(family, vals)


def format_complex(z):
    """Inverse of :func:`parse_complex`, exact to the last bit."""
    z = complex(z)
    if z.imag == 0.0:
        return format(z.real, ".17g")
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _parse_hchoice(text):
    parts = text.split(",")
    if len(parts) != 5:
        raise UsageError("--hchoice takes m,ell,rho,k,trig")
    try:
        m, ell = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError("m and ell must be integers") from None
    try:
        return cat.HChoice(m, ell, parse_complex(parts[2]), parse_complex(parts[3]), parts[4].strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parser():
    p = argparse.ArgumentParser(prog="heunint", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="value and slope of a Heun function")
    e.add_argument("--family", required=True, choices=[f.value for f in Family])
    e.add_argument("--params", required=True)
    e.add_argument("--x", required=True, type=float)
    e.add_argument("--seeds", help="y0,y1 at --anchor instead of the canonical solution")
    e.add_argument("--anchor", type=float, default=None)

    sub.add_parser("list", help="catalog table")

    c = sub.add_parser("check", help="verify one catalog identity")
    c.add_argument("--id", required=True, choices=[i.value for i in cat.IdentityId])
    c.add_argument("--params", required=True)
    c.add_argument("--hchoice", help="m,ell,rho,k,trig for *_ELEM entries")
    c.add_argument("--seed-mode", choices=("canonical", "arbitrary"), default="canonical")
    c.add_argument("--seeds", default="1,0.3,1,-0.2", help="y0,y1[,h0,h1] for arbitrary seeds")
    c.add_argument("--protocol", choices=("derivative", "quadrature", "transcription"), default="derivative")
    c.add_argument("--branch", type=int, choices=(1, -1), default=1)

    s = sub.add_parser("suite", help="run the full verification suite")
    s.add_argument("--config", help="JSON file with SuiteConfig fields")
    s.add_argument("--out", help="write the JSON report here")

    d = sub.add_parser("dump-series", help="Taylor coefficients of the canonical solution at 0")
    d.add_argument("--family", required=True, choices=[f.value for f in Family])
    d.add_argument("--params", required=True)
    d.add_argument("--n", required=True, type=int)
    return p


def _cmd_eval(args, out):
    params = parse_params(args.params, args.family)
    if args.seeds:
        seeds = [parse_complex(t) for t in args.seeds.split(",")]
        if len(seeds) != 2:
            raise UsageError("--seeds takes y0,y1")
        anchor = args.anchor if args.anchor is not None else 0.0
        sol = Solution.from_seeds(args.family, params, anchor, *seeds)
    else:
        sol = canonical_solution(args.family, params)
    y, dy = heun_eval(sol, args.x)
    print(f"y = {format_complex(y)}", file=out)
    print(f"y' = {format_complex(dy)}", file=out)
    return EXIT_OK


def _cmd_list(args, out):
    for id, label, constraints in cat.list_identities():
        print(f"{id.value:<13}  {label:<66}  {constraints}", file=out)
    return EXIT_OK


def _cmd_check(args, out):
    e = cat.entry(args.id)
    params = parse_params(args.params, e.family)
    hc = _parse_hchoice(args.hchoice) if args.hchoice else None
    if e.needs_hchoice and hc is None:
        hc = cat.HChoice(1, 1, 0.2, 1.0, "sin")
    if args.seed_mode == "arbitrary":
        seeds = [parse_complex(t) for t in args.seeds.split(",")]
        if len(seeds) not in (2, 4):
            raise UsageError("--seeds takes y0,y1 or y0,y1,h0,h1")
        mode = cat.SeedMode.arbitrary(*seeds[:2], None, *(seeds[2:] or (1.0, 0.0)))
    else:
        mode = cat.CANONICAL
    inst = cat.instantiate(args.id, params, hc, mode, branch=args.branch)
    tol = verify.Tolerances()
    if args.protocol == "derivative":
        rep = verify.check_derivative(inst, verify.interior_grid(inst.domain, 21), tol.deriv)
    elif args.protocol == "quadrature":
        lo, hi = inst.domain
        q = 0.25 * (hi - lo)
        rep = verify.check_quadrature(inst, lo + q, hi - q, tol.quad)
    else:
        rep = verify.check_transcription(inst, verify.interior_grid(inst.domain, 7), tol.transcription)
    print(verify.dumps(verify._check_doc(rep)), file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_suite(args, out):
    config = verify.SuiteConfig()
    if args.config:
        try:
            with open(args.config) as fh:
                config = verify.SuiteConfig.from_dict(json.load(fh))
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"bad config: {exc}") from None
    report = verify.run_suite(config)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    summary = report.summary()
    print(json.dumps(summary["counts"]), file=out)
    for c in report.failures():
        print(f"FAIL {c.subject} {c.protocol} {c.mode or ''} rel_err={c.max_rel_err:.3g}", file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_dump(args, out):
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    params = parse_params(args.params, args.family)
    from .series import ode_from_family, seeds_for, taylor_coeffs

    c = taylor_coeffs(ode_from_family(args.family, params), seeds_for(args.family, params), args.n)
    for v in c[: args.n + 1]:
        print(format_complex(v), file=out)
    return EXIT_OK


COMMANDS = {
    "eval": _cmd_eval,
    "list": _cmd_list,
    "check": _cmd_check,
    "suite": _cmd_suite,
    "dump-series": _cmd_dump,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, HeunError, ValueError) as exc:
        print(f"heunint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
