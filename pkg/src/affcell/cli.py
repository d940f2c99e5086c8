"""Command line entry point: ``affcell <command> ...`` printing JSON."""

from __future__ import annotations

import argparse
import json
import sys

from .asymptotic import DominantTuple, gamma_tilde_product, lattice_to_weyl, pieri_product
from .cells import CellCertifier, check_star_identity, left_star, right_star, left_star_orbit, right_star_orbit
from .hecke import HeckeElt, KLCache, kl_poly, mu, ntilde_mul, t_mul
from .schur import cell_generation_check, hecke_idempotent_check, schur_mul, schur_ntilde
from .verify import SUITES, run_all
from .weyl import parse_element


def _ints(text: str) -> list[int]:
    """'2,1' or 's1,s2' -> [2, 1] / [1, 2]; empty string -> []."""
    return [int(t.strip().lstrip("s")) for t in text.split(",") if t.strip()]


def _lam(text: str) -> tuple[int, ...]:
    return tuple(_ints(text))


def _schur_key(n: int, text: str):
    """'Q|P|element', e.g. '1||s1*s0'."""
    parts = text.split("|")
    if len(parts) != 3:
        raise ValueError(f"expected Q|P|element, got {text!r}")
    return _ints(parts[0]), _ints(parts[1]), parse_element(n, parts[2])


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=False))


def cmd_kl(a):
    y, w = parse_element(a.n, a.y), parse_element(a.n, a.w)
    cache = KLCache(a.n, max(a.bound, w.length))
    _emit({"y": list(y.window), "w": list(w.window), "P": str(kl_poly(cache, y, w)), "P_json": kl_poly(cache, y, w).to_json(), "mu": mu(cache, y, w)})


def cmd_mul(a):
    x, y = parse_element(a.n, a.a), parse_element(a.n, a.b)
    if a.basis == "T":
        res = t_mul(HeckeElt.basis_element(x), HeckeElt.basis_element(y))
    else:
        cache = KLCache(a.n, max(a.bound, x.length + y.length))
        res = ntilde_mul(cache, HeckeElt.basis_element(x, "N"), HeckeElt.basis_element(y, "N"))
    _emit({"product": str(res), "json": res.to_json()})


def cmd_star(a):
    w = parse_element(a.n, a.w)
    fn = right_star if a.side == "right" else left_star
    r = fn(w, a.i)
    _emit({"w": list(w.window), "i": a.i, "side": a.side, "star": list(r.window), "length_change": r.length - w.length})


def cmd_orbit(a):
    w = parse_element(a.n, a.w)
    orb = (right_star_orbit if a.side == "right" else left_star_orbit)(w, a.bound)
    _emit({"w": list(w.window), "side": a.side, "size": len(orb), "members": [{"window": list(x.window), "witness": s.to_json()} for x, s in sorted(orb.items())]})


def cmd_check_star(a):
    u, v = parse_element(a.n, a.u), parse_element(a.n, a.v)
    cache = KLCache(a.n, a.bound + u.length + 1)
    cert = CellCertifier(cache, a.bound)
    rep = check_star_identity(cache, u, v, a.i, cert, a.bound)
    _emit(rep)
    return 1 if rep["violations"] else 0


def cmd_lattice(a):
    lam = _lam(a.lam)
    x = DominantTuple(lam, tuple(tuple(b) for b in json.loads(a.x)))
    w = lattice_to_weyl(lam, x)
    _emit({"lambda": list(lam), "x": x.to_json(), "window": list(w.window), "length": w.length})


def cmd_gamma(a):
    lam = _lam(a.lam)
    x = DominantTuple(lam, tuple(tuple(b) for b in json.loads(a.x)))
    gen = tuple(_ints(a.gen))
    table = gamma_tilde_product(lam, x, gen)
    _emit(
        {
            "lambda": list(lam),
            "x": x.to_json(),
            "gen": list(gen),
            "pieri": [z.to_json() for z in pieri_product(lam, x, gen)],
            "gamma_tilde": [{"z": z.to_json(), "coeff": str(c), "coeff_json": c.to_json()} for z, c in sorted(table.items())],
        }
    )


def cmd_schur_mul(a):
    Q1, R1, u = _schur_key(a.n, a.a)
    R2, P2, v = _schur_key(a.n, a.b)
    cache = KLCache(a.n, max(a.bound, u.length + v.length))
    res = schur_mul(cache, schur_ntilde(Q1, R1, u), schur_ntilde(R2, P2, v))
    _emit({"product": str(res), "json": res.to_json()})


def cmd_idempotent(a):
    P = _ints(a.P)
    cache = KLCache(a.n, max(a.bound, 2 * len(P) * len(P) + 2))
    rep = hecke_idempotent_check(cache, P)
    _emit(rep)
    return 0 if rep["ok"] else 1


def cmd_cell_gen(a):
    lam = _lam(a.lam)
    n = sum(lam)
    cache = KLCache(n, a.bound + 4)
    cert = CellCertifier(cache, a.bound + 4)
    rep = cell_generation_check(cache, cert, lam, a.bound)
    _emit(rep)
    return 1 if rep["violations"] else 0


def cmd_verify(a):
    suites = list(SUITES) if a.suite == "all" else [a.suite]
    reports = run_all(a.n, a.bound, suites)
    _emit({"n": a.n, "bound": a.bound, "reports": reports})
    bad = 0
    print(f"{'suite':<10} {'checked':>8} {'violations':>10}", file=sys.stderr)
    for r in reports:
        print(f"{r['suite']:<10} {r['checked']:>8} {len(r['violations']):>10}", file=sys.stderr)
        bad += len(r["violations"])
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affcell", description="Affine Hecke and q-Schur algebra computations of type A.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("kl", cmd_kl, "Kazhdan-Lusztig polynomial P_{y,w} and mu(y,w)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--bound", type=int, default=0)

    sp = add("mul", cmd_mul, "product of two basis elements")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--basis", choices=["T", "N"], default="N")
    sp.add_argument("--bound", type=int, default=0)
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("star", cmd_star, "a single star operation")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--side", choices=["left", "right"], default="right")

    sp = add("orbit", cmd_orbit, "closure under star operations")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--bound", type=int, default=6)
    sp.add_argument("--side", choices=["left", "right"], default="right")

    sp = add("check-star", cmd_check_star, "check the star identity for structure constants")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--bound", type=int, default=6)

    sp = add("lattice", cmd_lattice, "the element w(x) of a lattice point")
    sp.add_argument("--n", type=int, default=None, help="ignored; the rank is the size of lambda")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--x", required=True)

    sp = add("gamma", cmd_gamma, "normalised products with a lattice generator")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--gen", required=True)

    sp = add("schur-mul", cmd_schur_mul, "product of two Schur basis elements given as Q|P|element")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, default=0)
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("idempotent", cmd_idempotent, "idempotent identities for a parabolic subset")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--P", default="")
    sp.add_argument("--bound", type=int, default=0)

    sp = add("cell-gen", cmd_cell_gen, "factor cell elements through the cell idempotent")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--bound", type=int, default=6)

    sp = add("verify", cmd_verify, "run the verification suites")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, default=6)
    sp.add_argument("--suite", choices=["all"] + list(SUITES), default="all")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except (ValueError, LookupError, RuntimeError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
