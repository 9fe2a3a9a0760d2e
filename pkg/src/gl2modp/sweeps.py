"""Batch sweeps over primes and ranges, one named criterion at a time."""

from __future__ import annotations

from typing import Callable

from .blz import validate_example
from .brauer import chi_sym, of_weight_multiset, twist
from .crystab import mainQp_check, thmB_check
from .exactmath import default_context
from .galoismodp import Irred, inertia_data, normal_form
from .smoothmodp import (HypothesisRejected, ModPCharQp, canonical_form, supersingular_orbit)
from .weights import (SmoothCharZp, TypeDescriptor, pokemon_check, pokemon_hypotheses, ss_sym,
                      ss_sym_closed, weights_with_central_char)

DEFAULT_MAX_CASES = 200_000


class ResourceLimit(Exception):
    pass


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise ResourceLimit(f"more than {self.limit} cases")


def _oracle(p, opts, budget, fail):
    ctx = default_context(p)
    for n in range(0, 3 * (p + 1) + p + 1):
        budget.tick()
        if of_weight_multiset(ss_sym(p, n)) != chi_sym(ctx, n):
            fail(f"n={n}")


def _simp(p, opts, budget, fail):
    ctx = default_context(p)
    for n in range(p + 1, 3 * (p + 1) + 1):
        budget.tick()
        r = n % (p - 1)
        d = chi_sym(ctx, n) - twist(chi_sym(ctx, n - p - 1), 1) - chi_sym(ctx, r) - twist(chi_sym(ctx, p - 1 - r), r)
        if not d.is_zero():
            fail(f"n={n}")


def _conservation(p, opts, budget, fail):
    for n in range(0, 3 * (p + 1) + p + 1):
        budget.tick()
        ms = ss_sym(p, n)
        if ms.dimension != n + 1:
            fail(f"n={n}: dimension {ms.dimension}")
        if any(w.central_exponent != n % (p - 1) for w in ms.support()):
            fail(f"n={n}: central character")


def _closed(p, opts, budget, fail):
    for n in range(p + 1, 3 * (p + 1) + p + 1):
        budget.tick()
        res = ss_sym_closed(p, n)
        flagged = n % (p + 1) == p - 1
        if res.corrected != ss_sym(p, n) or res.deviation != flagged:
            fail(f"n={n}")
        if flagged and res.dimension_deficit != p - 1:
            fail(f"n={n}: deficit {res.dimension_deficit}")


def _pokemon(p, opts, budget, fail):
    triv = SmoothCharZp(p)
    ks = opts.get("k")
    jobs = []
    if p == 3:
        jobs.append((TypeDescriptor(triv, triv), range(10, 31)))
        jobs.append((TypeDescriptor(SmoothCharZp(p, 0, 1, 1), triv), range(2, 11)))
    if p == 5:
        jobs.append((TypeDescriptor(triv, triv), range(26, 41)))
    for t in range(1, p - 1):
        jobs.append((TypeDescriptor(SmoothCharZp(p, t), triv), range(p, p + 21)))
    for tp, krange in jobs:
        for k in (ks if ks is not None else krange):
            if ks is not None and pokemon_hypotheses(tp, k):
                continue
            budget.tick()
            rep = pokemon_check(tp, k)
            if not (rep.hypothesis_met and rep.covered):
                fail(f"c={tp.c} k={k}")


def _high_n(p, opts, budget, fail):
    for n in range(p * p - 1, p * p + 31):
        budget.tick()
        present = set(ss_sym(p, n).support())
        for w in weights_with_central_char(p, n):
            if (n - w.r) % 2 == 0 and w not in present:
                fail(f"n={n} {w}")


def _blz(p, opts, budget, fail):
    ctx = default_context(p, 2)
    for k in range(2, 2 * p + 2):
        budget.tick()
        rep = validate_example(ctx, k)
        if not rep.membership:
            fail(f"k={k}: membership")
        if not rep.surjective:
            fail(f"k={k}: surjectivity")


def _canon(p, opts, budget, fail):
    ctx = default_context(p, 2)
    for r in range(p):
        for lam in ctx.field.units:
            for b in range(p - 1):
                budget.tick()
                eta = ModPCharQp(lam, b)
                orbit = supersingular_orbit(r, eta)
                forms = {canonical_form(k) for k in orbit}
                c = canonical_form(orbit[0])
                if len(forms) != 1 or canonical_form(c) != c:
                    fail(f"kappa r={r} b={b}")
    for r in range(p):
        for a in range(p - 1):
            budget.tick()
            x = normal_form(Irred(p, r, a))
            y = normal_form(Irred(p, p - 1 - r, a + r))
            if x != y or normal_form(x) != x:
                fail(f"Irred r={r} a={a}")


def _llc_det(p, opts, budget, fail):
    ctx = default_context(p)
    for r in range(p):
        for a in range(p - 1):
            budget.tick()
            det = inertia_data(Irred(p, r, a)).det_exponent
            z = canonical_form(supersingular_orbit(r, ModPCharQp(ctx.field.one, a))[0]).central_character()
            if det != (z.b + 1) % (p - 1) or z.lam != 1:
                fail(f"r={r} a={a}")


def _checkers(p, opts, budget, fail):
    ctx = default_context(p)
    triv = SmoothCharZp(p)
    budget.tick()
    if p == 5:
        wit = mainQp_check(ctx, Irred(5, 1, 0), 7, triv, triv)
        if not (wit.region.strict and wit.region.nonempty()):
            fail("mainQp fixture")
        try:
            thmB_check(ctx, Irred(5, 1, 0), 4, triv, triv)
            fail("(a) fixture accepted")
        except HypothesisRejected as exc:
            if "(a)" not in exc.failed:
                fail(f"(a) fixture: {exc.failed}")


CRITERIA: dict[str, Callable] = {
    "oracle-equivalence": _oracle,
    "lemma-simp": _simp,
    "conservation": _conservation,
    "closed-form": _closed,
    "pokemon": _pokemon,
    "high-n": _high_n,
    "blz": _blz,
    "canonicalization": _canon,
    "llc-det": _llc_det,
    "checkers": _checkers,
}


def batch_validate(sweep: dict, max_cases: int = DEFAULT_MAX_CASES) -> dict:
    """Run the named criteria for every listed prime.

    Results are ordered by (criterion as listed, prime as listed).  A
    criterion that exceeds ``max_cases`` is reported with status
    "resource_limit" and the number of cases it ran.
    """
    primes = list(sweep.get("p", []))
    names = list(sweep.get("criteria", []))
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise ValueError(f"unknown criteria: {', '.join(unknown)}")
    opts = {}
    if "k" in sweep:
        kr = sweep["k"]
        opts["k"] = range(kr[0], kr[1] + 1) if isinstance(kr, list) and len(kr) == 2 else list(kr)
    results = []
    for name in names:
        for p in primes:
            budget = _Budget(max_cases)
            failures: list[str] = []
            status = "pass"
            try:
                CRITERIA[name](p, opts, budget, failures.append)
            except ResourceLimit as exc:
                status = "resource_limit"
                failures.append(str(exc))
            if status == "pass" and failures:
                status = "fail"
            results.append({"criterion": name, "p": p, "status": status,
                            "cases": min(budget.used, max_cases), "failures": failures})
    return {"results": results, "all_pass": all(r["status"] == "pass" for r in results)}
