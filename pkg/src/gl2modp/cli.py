"""Command-line front end.

Exit status: 0 on success, 2 when a theorem's hypotheses are not met (the
structured rejection is printed), 1 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import blz, crystab, serial, sweeps, weights
from .exactmath import ContextMismatch, InvalidContext, PrimeContext
from .smoothmodp import HypothesisRejected, NormalizationError, has_socle

EXIT_OK, EXIT_ERROR, EXIT_REJECTED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _elem_arg(ctx: PrimeContext, text: str):
    vals = _ints(text)
    return ctx.elem(vals[0] if len(vals) == 1 else vals)


def build_context(args) -> PrimeContext:
    modulus = _ints(args.modulus) if args.modulus else None
    gen2 = _ints(args.gen2) if args.gen2 else None
    return PrimeContext(args.p, args.d, modulus, gen2)


def _theta(args, which: str, p: int):
    text = getattr(args, which)
    return weights.SmoothCharZp(p) if text is None else weights.SmoothCharZp.parse(p, text)


def parse_val_ap(ctx: PrimeContext, args):
    """--val-ap is "1", "lo:hi" (open interval, empty hi for infinity) or ">x"."""
    if args.val_ap2p is not None:
        ge = args.val_ap2p == "ge"
        res = _elem_arg(ctx, args.residue) if args.residue is not None else None
        return blz.K2p1(ge, res)
    text = args.val_ap
    if text is None:
        raise UsageError("blz needs --val-ap or --val-ap2p")
    text = text.strip()
    if text.startswith(">"):
        return blz.ValAbove(Fraction(text[1:]))
    if ":" in text:
        lo, hi = text.split(":", 1)
        return blz.ValOpenInterval(Fraction(lo), Fraction(hi) if hi.strip() else None)
    if Fraction(text) != 1:
        raise UsageError("a single --val-ap value must be 1; use lo:hi or >x otherwise")
    if args.residue is None:
        raise UsageError("val(a_p) = 1 needs --residue")
    return blz.ValOne(_elem_arg(ctx, args.residue))


def _char_qpl(ctx: PrimeContext, data: dict) -> crystab.SmoothCharQpL:
    p = ctx.p
    res = data.get("residue")
    return crystab.SmoothCharQpL(
        weights.SmoothCharZp(p, int(data.get("tame", 0)), int(data.get("wild", 0)), int(data.get("level", 0))),
        Fraction(str(data.get("val", 0))),
        None if res is None else ctx.elem(res),
    )


# ---------------------------------------------------------------------------
# Subcommands: each returns (payload, text lines)


def cmd_ss_sym(ctx, args):
    ms = weights.ss_sym(ctx, args.n)
    return {"weights": ms.to_json()}, [str(w) + (f" x{m}" if m > 1 else "") for w, m in ms.items()]


def cmd_ss_closed(ctx, args):
    res = weights.ss_sym_closed(ctx, args.n)
    payload = {"n": args.n, "branch": res.branch, "leftover": res.leftover,
               "weights": res.corrected.to_json(), "literal": res.literal.to_json(),
               "deviation": res.deviation, "dimension_deficit": res.dimension_deficit}
    return payload, [f"branch {res.branch}, leftover {res.leftover}, deviation {res.deviation}",
                     "corrected: " + ", ".join(str(w) for w in res.corrected),
                     "literal:   " + ", ".join(str(w) for w in res.literal)]


def _type(ctx, args):
    return weights.TypeDescriptor(_theta(args, "theta1", ctx.p), _theta(args, "theta2", ctx.p))


def cmd_type_red(ctx, args):
    tp = _type(ctx, args)
    rep = weights.type_reduction(tp, args.k)
    payload = {"type": tp.to_json(), "k": args.k, **rep.to_json()}
    lines = [f"c = {tp.c}, complete = {rep.complete}, dimension = {rep.total_dimension}"]
    lines += [str(w) for w in rep.guaranteed]
    return payload, lines


def cmd_socle(ctx, args):
    sigma = weights.SerreWeight(ctx.p, args.r, args.a)
    kappa = serial.irrep_from_json(ctx, _json_arg(args.kappa))
    payload = {"sigma": sigma.to_json(), "kappa": serial.irrep_json(ctx, kappa),
               "has_socle": has_socle(sigma, kappa)}
    lines = [f"has_socle: {payload['has_socle']}"]
    if args.k is not None:
        region = crystab.thmQp_region(sigma, kappa, args.k, _theta(args, "theta1", ctx.p),
                                      _theta(args, "theta2", ctx.p))
        payload["region"] = region.to_json()
        lines.append(f"region: {payload['region']['relation']}, strict {region.strict}")
    return payload, lines


def cmd_pokemon(ctx, args):
    tp = _type(ctx, args)
    rep = weights.pokemon_check(tp, args.k)
    return ({"type": tp.to_json(), "k": args.k, **rep.to_json()},
            [f"hypothesis_met {rep.hypothesis_met}, covered {rep.covered}, missing {len(rep.missing)}"])


def cmd_reform(ctx, args):
    prof = crystab.GeneralWeightProfile(args.e, tuple(_ints(args.r_vec)), Fraction(args.val_eta))
    rep = crystab.reform_check(prof, Fraction(args.val_lam1), Fraction(args.val_lam2), args.steinberg)
    return rep.to_json(), [f"pass {rep.passed}; failed {list(rep.failed_conditions)}"]


def cmd_ordinary(ctx, args):
    od = crystab.ordinary_data(_char_qpl(ctx, _json_arg(args.chi1)), _char_qpl(ctx, _json_arg(args.chi2)),
                               _char_qpl(ctx, _json_arg(args.eta)), _ints(args.r_vec))
    payload = {"psi1": serial.char_json(ctx, od.psi1), "psi2": serial.char_json(ctx, od.psi2),
               "ps": serial.package_json(ctx, od.ps)}
    return payload, [f"psi1 {od.psi1!r}", f"psi2 {od.psi2!r}"]


def _lift(ctx, args, fn):
    rho = serial.galois_from_json(ctx, _json_arg(args.rho))
    wit = fn(ctx, rho, args.k, _theta(args, "theta1", ctx.p), _theta(args, "theta2", ctx.p))
    payload = crystab.witness_to_json(ctx, wit)
    return payload, [f"sigma {wit.sigma}, branch {wit.branch.kind}, strict {wit.region.strict}"] + wit.notes


def cmd_lift_check(ctx, args):
    return _lift(ctx, args, crystab.mainQp_check)


def cmd_thmb_check(ctx, args):
    return _lift(ctx, args, crystab.thmB_check)


def cmd_blz(ctx, args):
    regime = parse_val_ap(ctx, args)
    rho = blz.blz_reduce(ctx, args.k, regime)
    return ({"k": args.k, "regime": blz.regime_json(ctx, regime), "reduction": serial.galois_json(ctx, rho)},
            [repr(rho)])


def cmd_validate_example(ctx, args):
    rep = blz.validate_example(ctx, args.k)
    payload = blz.validation_json(ctx, rep)
    return payload, [f"k={args.k}: membership {rep.membership}, surjective {rep.surjective}, "
                     f"{len(rep.cases)} regimes"]


def cmd_predicted_set(ctx, args):
    ps = blz.predicted_set(ctx, args.k, _theta(args, "theta1", ctx.p), _theta(args, "theta2", ctx.p))
    payload = blz.predicted_set_json(ctx, ps)
    return payload, [repr(x) for x in ps.irreds] + [f"family {f}" for f in ps.families]


def cmd_batch(ctx, args):
    rep = sweeps.batch_validate(_json_arg(args.sweep), args.max_cases)
    lines = [f"{r['criterion']} p={r['p']}: {r['status'].upper()}" for r in rep["results"]]
    return rep, lines


COMMANDS = {
    "ss-sym": cmd_ss_sym, "ss-closed": cmd_ss_closed, "type-red": cmd_type_red,
    "socle": cmd_socle, "pokemon": cmd_pokemon, "reform": cmd_reform, "ordinary": cmd_ordinary,
    "lift-check": cmd_lift_check, "thmb-check": cmd_thmb_check, "blz": cmd_blz,
    "validate-example": cmd_validate_example, "predicted-set": cmd_predicted_set, "batch": cmd_batch,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="odd prime")
    common.add_argument("--d", type=int, default=2, help="degree of the coefficient field over F_p")
    common.add_argument("--modulus", help="monic modulus coefficients, low to high, e.g. 2,0,1")
    common.add_argument("--gen2", help="generator of F_{p^2}^x as coefficients")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")
    theta = _Parser(add_help=False)
    theta.add_argument("--theta1", help="tame[,wild[,level]]")
    theta.add_argument("--theta2", help="tame[,wild[,level]]")
    kreq = _Parser(add_help=False)
    kreq.add_argument("--k", type=int, required=True)

    parser = _Parser(prog="gl2modp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = sub.add_parser("ss-sym", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp = sub.add_parser("ss-closed", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sub.add_parser("type-red", parents=[common, theta, kreq])
    sp = sub.add_parser("socle", parents=[common, theta])
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--kappa", required=True, help="representation as JSON (or @file)")
    sp.add_argument("--k", type=int, help="also emit the valuation region for this k")
    sub.add_parser("pokemon", parents=[common, theta, kreq])
    sp = sub.add_parser("reform", parents=[common])
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--r-vec", required=True)
    sp.add_argument("--val-eta", default="0")
    sp.add_argument("--val-lam1", required=True)
    sp.add_argument("--val-lam2", required=True)
    sp.add_argument("--steinberg", action="store_true")
    sp = sub.add_parser("ordinary", parents=[common])
    for name in ("--chi1", "--chi2", "--eta"):
        sp.add_argument(name, required=True, help="JSON {tame, wild, level, val, residue}")
    sp.add_argument("--r-vec", required=True)
    for name in ("lift-check", "thmb-check"):
        sp = sub.add_parser(name, parents=[common, theta, kreq])
        sp.add_argument("--rho", required=True, help="Galois representation as JSON (or @file)")
    sp = sub.add_parser("blz", parents=[common, kreq])
    sp.add_argument("--val-ap")
    sp.add_argument("--val-ap2p", choices=("ge", "lt"))
    sp.add_argument("--residue")
    sub.add_parser("validate-example", parents=[common, kreq])
    sub.add_parser("predicted-set", parents=[common, theta, kreq])
    sp = sub.add_parser("batch", parents=[common])
    sp.add_argument("--sweep", required=True, help="sweep description as JSON (or @file)")
    sp.add_argument("--max-cases", type=int, default=sweeps.DEFAULT_MAX_CASES)
    return parser


def _emit(args, payload, lines, stdout):
    text = serial.dumps(payload) if args.format == "json" else "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        stdout.write(text + "\n")


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        ctx = build_context(args)
        payload, lines = COMMANDS[args.command](ctx, args)
    except HypothesisRejected as exc:
        _emit(args, {"rejected": exc.to_json()}, ["rejected: " + ", ".join(exc.failed)], stdout)
        return EXIT_REJECTED
    except (UsageError, InvalidContext, ContextMismatch, NormalizationError, ValueError,
            KeyError, json.JSONDecodeError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    _emit(args, payload, lines, stdout)
    return EXIT_OK


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
