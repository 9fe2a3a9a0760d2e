"""JSON encoders and decoders for the tagged unions."""

from __future__ import annotations

import json

from .exactmath import PrimeContext
from .galoismodp import Irred, ModPGaloisRep, Red
from .smoothmodp import (Branch, ModPCharQp, OneDim, PrincipalSeries, SmoothIrrep, Steinberg,
                         Supersingular, canonical_form)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def char_json(ctx: PrimeContext, chi: ModPCharQp) -> dict:
    return {"lambda": ctx.elem_json(chi.lam), "b": chi.b}


def char_from_json(ctx: PrimeContext, data) -> ModPCharQp:
    return ModPCharQp(ctx.elem(data.get("lambda", 1)), int(data.get("b", 0)))


def irrep_json(ctx: PrimeContext, kappa: SmoothIrrep) -> dict:
    if isinstance(kappa, OneDim):
        return {"class": "onedim", "chi": char_json(ctx, kappa.chi)}
    if isinstance(kappa, Steinberg):
        return {"class": "steinberg", "chi": char_json(ctx, kappa.chi)}
    if isinstance(kappa, PrincipalSeries):
        return {"class": "ps", "chi1": char_json(ctx, kappa.chi1), "chi2": char_json(ctx, kappa.chi2)}
    return {"class": "supersingular", "r": kappa.r, "eta": char_json(ctx, kappa.eta)}


def irrep_from_json(ctx: PrimeContext, data) -> SmoothIrrep:
    cls = data.get("class")
    if cls == "onedim":
        return OneDim(char_from_json(ctx, data["chi"]))
    if cls == "steinberg":
        return Steinberg(char_from_json(ctx, data["chi"]))
    if cls == "ps":
        return PrincipalSeries(char_from_json(ctx, data["chi1"]), char_from_json(ctx, data["chi2"]))
    if cls == "supersingular":
        return canonical_form(Supersingular(int(data["r"]), char_from_json(ctx, data.get("eta", {}))))
    raise ValueError(f"unknown representation class {cls!r}")


def package_json(ctx: PrimeContext, pkg) -> list[dict]:
    return [dict(irrep_json(ctx, m), mult=k) for m, k in pkg.items()]


def galois_json(ctx: PrimeContext, rho: ModPGaloisRep) -> dict:
    if isinstance(rho, Irred):
        return {"type": "irred", "r": rho.r, "a": rho.a}
    return {"type": "red", "psi1": char_json(ctx, rho.psi1), "psi2": char_json(ctx, rho.psi2)}


def galois_from_json(ctx: PrimeContext, data) -> ModPGaloisRep:
    kind = data.get("type")
    if kind == "irred":
        return Irred(ctx.p, int(data["r"]), int(data["a"]))
    if kind == "red":
        return Red(char_from_json(ctx, data["psi1"]), char_from_json(ctx, data["psi2"]))
    raise ValueError(f"unknown Galois representation type {kind!r}")


def branch_json(ctx: PrimeContext, branch: Branch) -> dict:
    if branch.kind == "a":
        return {"kind": "a"}
    return {"kind": "b", "lambda": ctx.elem_json(branch.lam)}
