"""Command-line front end: ``nccr <command> [subcommand] [options]``.

Output is a JSON object (``--format json``, the default) with keys ``schema``,
``command``, ``inputs``, ``result`` and ``certificates``; identical arguments
give byte-identical output.  ``--timing`` adds a ``timing_ms`` field.

Exit codes: 0 when a verdict was computed (true or false), 2 for usage and
input errors, 3 when a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
import time
from fractions import Fraction

from . import delpezzo as dp
from . import torus
from .errors import CapExceeded, NCCRError
from .groebner.ideals import (groebner_basis, ideal, local_standard_basis, normal_form,
                              quotient_dimension)
from .groebner.modules import component, cyclic_module, depth_and_cm, free_resolution
from .poly import GREVLEX, LEX, LOCAL, Polynomial, PolynomialRing
from .singularity import report as singularity_report

SCHEMA = "nccr-cli/1"
EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 2, 3


class UsageError(Exception):
    pass


# -- serialization ---------------------------------------------------------------

def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "infinite"
        return obj
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Polynomial):
        return str(obj)
    return str(obj)


def render_text(payload) -> str:
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar(v)}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, dict) and v:
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_scalar(v)}")

    walk(payload, 0)
    return "\n".join(lines) + "\n"


def _scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v == {}:
        return "{}"
    return str(v)


# -- argument helpers --------------------------------------------------------------

def _ints(text, what="integers"):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated {what}, got {text!r}")


def _weights(args):
    return torus.validate_weights(_ints(args.weights, "weights"))


def _binomial_str(p: Polynomial) -> str:
    """Lex-larger monomial first, no spaces: Y11*Y22-Y12*Y21."""
    terms = sorted(p.terms.items(), key=lambda t: LEX.key(t[0]), reverse=True)
    out = ""
    for i, (e, c) in enumerate(terms):
        mono = Polynomial(p.ring, {e: Fraction(1)})
        body = str(mono)
        coeff = abs(c)
        s = body if coeff == 1 else (str(coeff) if body == "1" else f"{coeff}*{body}")
        if i == 0:
            out += ("-" if c < 0 else "") + s
        else:
            out += ("-" if c < 0 else "+") + s
    return out or "0"


def _vector_strs(vec, rank, ring):
    return [str(Polynomial(ring, component(vec, c))) for c in range(rank)]


def _presentation_json(pres):
    return {
        "ring": list(pres.ring.names),
        "variable_degrees": list(pres.ring.weights or (1,) * pres.ring.ngens),
        "generator_degrees": list(pres.degrees),
        "relations": [_vector_strs(r, pres.rank, pres.ring) for r in pres.relations],
    }


def _surface(args):
    return dp.make_surface(args.surface)


def _class(s, text):
    text = text.strip()
    if text.lower() in ("0", "o", "zero"):
        return s.zero()
    if text.lower() in ("k", "canonical"):
        return s.canonical
    if text.lower() in ("-k", "anticanonical"):
        return -s.canonical
    if text.startswith("O(") and text.endswith(")"):
        text = text[2:-1]
    return s.divisor(*_ints(text, "class coordinates"))


def _collection(s, text):
    if text.strip().lower() == "naive":
        return dp.naive_collection(s)
    return [_class(s, part) for part in text.split(";") if part.strip()]


def _numerical(s, text):
    """``O(c1)`` for a line bundle or ``rank:c1,..:ch2``."""
    text = text.strip()
    if ":" not in text:
        return dp.line_bundle(s, _class(s, text))
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"numerical class must look like rank:c1,...:ch2, got {text!r}")
    return dp.NumericalClass(int(parts[0]), s.divisor(*_ints(parts[1])), Fraction(parts[2]))


def _numerical_json(s, e):
    return {"rank": e.rank, "c1": list(e.c1), "c1_text": s.format(e.c1), "ch2": e.ch2}


def _ring_and_polys(args):
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    weights = _ints(args.var_weights) if getattr(args, "var_weights", None) else None
    ring = PolynomialRing(names, weights)
    gens = [ring.parse(g) for g in args.gens.split(";") if g.strip()] if getattr(args, "gens", None) else []
    return ring, gens


_ORDERS = {"grevlex": GREVLEX, "lex": LEX, "local": LOCAL}


# -- commands ------------------------------------------------------------------

def cmd_mu_tau(args):
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    ring = PolynomialRing(names)
    f = ring.parse(args.poly)
    rep = singularity_report(f)
    return ({"vars": names, "poly": str(f)},
            {"milnor": rep.milnor, "tyurina": rep.tyurina, "quasi_homogeneous": rep.quasi_homogeneous},
            {"standard_basis": rep.method})


def _inv_inputs(ws, **extra):
    out = {"weights": list(ws.weights)}
    out.update(extra)
    return out


def _ws_summary(ws):
    return {"n_plus": ws.n_plus, "n_minus": ws.n_minus, "N": ws.n_cap, "sum_zero": ws.sum_zero}


def cmd_hilbert_basis(args):
    ws = _weights(args)
    hb = torus.invariant_hilbert_basis(ws)
    return (_inv_inputs(ws),
            dict(_ws_summary(ws), hilbert_basis=[ws.monomial_str(h) for h in hb]),
            {"degree_bound": torus.degree_bound(ws, 0),
             "closure_checked_to_degree": 2 * torus.degree_bound(ws, 0),
             "closure": torus.monoid_closure_check(ws, hb)})


def _toric(ws):
    yr, J = torus.toric_presentation(ws)
    hb = J.info["hilbert_basis"]
    return yr, J, {"variables": {n: ws.monomial_str(h) for n, h in zip(yr.names, hb)},
                   "variable_degrees": list(yr.weights),
                   "relations": [_binomial_str(g) for g in J.generators]}


def cmd_toric_ideal(args):
    ws = _weights(args)
    _, _, out = _toric(ws)
    return _inv_inputs(ws), out, {"degree_bound": torus.degree_bound(ws, 0)}


def cmd_covariant(args):
    ws = _weights(args)
    mod = torus.covariant_presentation(ws, args.a)
    dims = mod.graded_dims(args.D)
    lattice = [torus.weight_space_dim(ws, args.a, d) for d in range(args.D + 1)]
    return (_inv_inputs(ws, a=args.a, D=args.D),
            {"generators": [ws.monomial_str(g) for g in mod.generators],
             "presentation": _presentation_json(mod.presentation),
             "graded_dims": [dims[d] for d in range(args.D + 1)]},
            {"truncation": args.D, "degree_bound": torus.degree_bound(ws, args.a),
             "matches_weight_space_dims": [dims[d] for d in range(args.D + 1)] == lattice})


def cmd_cm_sweep(args):
    ws = _weights(args)
    lo, hi = -ws.n_plus + 1 - args.extra, ws.n_minus - 1 + args.extra
    rows = []
    for a in range(lo, hi + 1):
        cm, rep = torus.cm_check_covariant(ws, a, with_report=True)
        rows.append({"a": a, "cm": cm, "depth": rep.depth, "projective_dimension": rep.projective_dimension,
                     "dimension": rep.dimension, "in_open_range": -ws.n_plus < a < ws.n_minus})
    all_in = all(r["cm"] for r in rows if r["in_open_range"])
    return (_inv_inputs(ws, extra=args.extra), {"sweep": rows, "all_cm_in_open_range": all_in},
            {"dimension_used": ws.arity - 1, "method": "depth = arity(k[Y]) - projective dimension"})


def cmd_gorenstein(args):
    ws = _weights(args)
    rep = torus.gorenstein_check(ws, with_report=True, truncation=args.D)
    return (_inv_inputs(ws, D=args.D),
            {"gorenstein": rep.gorenstein, "numerator": list(rep.numerator),
             "denominator_degrees": list(rep.denominator_degrees)},
            {"k_polynomial": {str(k): v for k, v in rep.k_polynomial.items()},
             "codimension": rep.codimension, "series_checked_to_degree": args.D})


def cmd_quiver(args):
    ws = _weights(args)
    q = torus.nccr_quiver(ws)
    _, _, toric = _toric(ws)
    arrows = [{"from": m, "to": n, "label": ws.monomial_str(e)}
              for (m, n), es in sorted(q.arrows.items()) for e in es]
    blocks = {f"{m},{n}": [ws.monomial_str(g) for g in q.hom_blocks[(m, n)].generators]
              for m in range(q.vertex_count) for n in range(q.vertex_count)}
    dims = {f"{m},{n}": [q.graded_dims(m, n, d) for d in range(args.D + 1)]
            for m in range(q.vertex_count) for n in range(q.vertex_count)}
    lattice_ok = all(dims[f"{m},{n}"] == [torus.weight_space_dim(ws, n - m, d) for d in range(args.D + 1)]
                     for m in range(q.vertex_count) for n in range(q.vertex_count))
    return (_inv_inputs(ws, D=args.D),
            {"vertices": q.vertex_count, "arrows": arrows, "arrow_count": q.arrow_count(),
             "block_generators": blocks, "graded_dims": dims, "toric_relations": toric["relations"],
             "ring_variables": toric["variables"]},
            {"truncation": args.D, "graded_dims_match_weight_spaces": lattice_ok})


def cmd_end_check(args):
    ws = _weights(args)
    return _inv_inputs(ws, D=args.D), {"verdict": torus.end_ring_check(ws, args.D)}, {"truncation": args.D}


def cmd_bidual_check(args):
    ws = _weights(args)
    ok = torus.bidual_product_check(ws, args.a, args.b, args.D)
    return (_inv_inputs(ws, a=args.a, b=args.b, D=args.D), {"verdict": ok},
            {"truncation": args.D,
             "product_generators": [ws.monomial_str(g) for g in torus.product_generators(ws, args.a, args.b)]})


def cmd_koszul_check(args):
    ws = _weights(args)
    return (_inv_inputs(ws, a=args.a, D=args.D), {"verdict": torus.koszul_identity_check(ws, args.a, args.D)},
            {"truncation": args.D})


def cmd_lc_bound(args):
    ws = _weights(args)
    signs = [args.sign] if args.sign else ["+", "-"]
    res = {}
    for s in signs:
        b = torus.local_cohomology_weight_bound(ws, s)
        expected = -ws.n_plus if s == "+" else -ws.n_minus
        res[s] = {"bound": b, "equals_minus_N": b == expected}
    return _inv_inputs(ws), res, {"method": "per-variable maximum over the support of the top Cech cohomology"}


def cmd_surface(args):
    s = _surface(args)
    return ({"surface": s.name},
            {"picard_rank": s.picard_rank, "basis": list(s.basis_names),
             "intersection_form": [list(r) for r in s.intersection_form],
             "canonical": list(s.canonical), "canonical_text": s.format(s.canonical),
             "K_squared": s.square(s.canonical), "minus_one_class_count": len(s.minus_one_classes)},
            {"minus_one_degree_bound": 7})


def cmd_euler(args):
    s = _surface(args)
    E, F = _numerical(s, args.E), _numerical(s, args.F)
    return ({"surface": s.name, "E": _numerical_json(s, E), "F": _numerical_json(s, F)},
            {"chi": dp.euler_form(s, E, F)}, {})


def cmd_slope(args):
    s = _surface(args)
    E = _numerical(s, args.E)
    return {"surface": s.name, "E": _numerical_json(s, E)}, {"slope": dp.slope(s, E)}, {}


def cmd_mutate(args):
    s = _surface(args)
    E, F = _numerical(s, args.E), _numerical(s, args.F)
    M = dp.mutate(s, E, F, args.direction)
    return ({"surface": s.name, "E": _numerical_json(s, E), "F": _numerical_json(s, F), "direction": args.direction},
            {"class": _numerical_json(s, M), "chi_self": dp.euler_form(s, M, M)},
            {"convention": "left: chi(E,F)[E]-[F]; right: chi(E,F)[F]-[E]"})


def cmd_cohomology(args):
    s = _surface(args)
    D = _class(s, args.D)
    t = dp.line_bundle_cohomology(s, D)
    return ({"surface": s.name, "D": list(D), "D_text": s.format(D)},
            {"h0": t.h0, "h1": t.h1, "h2": t.h2}, {"chi": dp.riemann_roch(s, D)})


def _coll_json(s, coll):
    return [s.format(d) for d in coll]


def cmd_strong_check(args):
    s = _surface(args)
    coll = _collection(s, args.collection)
    r = dp.strong_collection_check(s, coll)
    witness = None
    if r.witness:
        direction, i, j, k, dim = r.witness
        witness = {"direction": direction, "i": i, "j": j, "degree": k, "dimension": dim}
    return ({"surface": s.name, "collection": _coll_json(s, coll)}, {"verdict": r.ok, "witness": witness}, {})


def _cone_witnesses(s, coll, ws):
    return [{"pair": [s.format(coll[a]), s.format(coll[b])], "a": a, "b": b, "j": j, "i": i,
             "class": s.format(coll[b] - coll[a]), "dimension": dim} for a, b, j, i, dim in ws]


def _cone(args, which):
    s = _surface(args)
    L = _class(s, args.L)
    coll = _collection(s, args.collection)
    out = {}
    certs = {}
    for name in which:
        fn = dp.tilting_cone_check if name == "tilting" else dp.crepancy_cone_check
        r = fn(s, L, coll)
        wit = _cone_witnesses(s, coll, r.witnesses)
        for w, (a, b, j, i, _) in zip(wit, r.witnesses):
            w["class"] = s.format(coll[b] - coll[a] + j * L)
        out[name] = {"verdict": r.ok, "witnesses": wit}
        certs[f"{name}_sweep_bound"] = r.bound
    inputs = {"surface": s.name, "L": s.format(L), "collection": _coll_json(s, coll)}
    if len(which) == 1:
        return inputs, out[which[0]], certs
    out["verdict"] = all(v["verdict"] for v in out.values())
    return inputs, out, certs


def cmd_tilting(args):
    return _cone(args, ["tilting"])


def cmd_crepancy(args):
    return _cone(args, ["crepancy"])


def cmd_cone_check(args):
    return _cone(args, ["tilting", "crepancy"])


def cmd_cone_props(args):
    s = _surface(args)
    L = _class(s, args.L)
    r = dp.cone_properties(s, L)
    return ({"surface": s.name, "L": s.format(L)},
            {"cm": r.cm, "rational": r.rational, "gorenstein_index": r.gorenstein_index if r.gorenstein_index is not None else "none",
             "blowup_crepant": r.blowup_crepant, "terminal": r.terminal,
             "witnesses": [{"i": i, "j": j} for i, j in r.witnesses]},
            {"sweep_bound": r.bound})


def cmd_cone_lc(args):
    s = _surface(args)
    L = _class(s, args.L)
    table = dp.cone_local_cohomology(s, L, args.i, range(args.u_min, args.u_max + 1))
    return ({"surface": s.name, "L": s.format(L), "i": args.i, "u_range": [args.u_min, args.u_max]},
            {"local_cohomology_index": args.i + 1, "dims": {str(u): v for u, v in table.items()}}, {})


def cmd_ko_report(args):
    s = _surface(args)
    coll = [_numerical(s, part) for part in args.collection.split(";") if part.strip()] \
        if args.collection.strip().lower() != "naive" else [dp.line_bundle(s, d) for d in dp.naive_collection(s)]
    r = dp.ko_slope_report(s, coll)
    return ({"surface": s.name, "collection": [_numerical_json(s, e) for e in coll]},
            {"window": list(r.window), "slopes": list(r.slopes), "monotone": r.monotone,
             "serre_identities": r.serre_identities, "vanishing": r.vanishing},
            {"mutation_convention": r.mutation_convention})


def cmd_gb_basis(args):
    ring, gens = _ring_and_polys(args)
    order = _ORDERS[args.order]
    I = ideal(ring, gens, order)
    B = local_standard_basis(I, order) if order is LOCAL else groebner_basis(I, order)
    return ({"vars": list(ring.names), "gens": [str(g) for g in gens], "order": args.order},
            {"basis": [str(g) for g in B.generators], "quotient_dimension": quotient_dimension(B)},
            dict(B.info))


def cmd_gb_nf(args):
    ring, gens = _ring_and_polys(args)
    order = _ORDERS[args.order]
    I = ideal(ring, gens, order)
    B = local_standard_basis(I, order) if order is LOCAL else groebner_basis(I, order)
    p = ring.parse(args.poly)
    r = normal_form(p, B)
    return ({"vars": list(ring.names), "gens": [str(g) for g in gens], "order": args.order, "poly": str(p)},
            {"normal_form": str(r), "member": r.is_zero()}, {"basis_size": len(B)})


def cmd_gb_resolve(args):
    ring, gens = _ring_and_polys(args)
    res = free_resolution(cyclic_module(ring, gens))
    return ({"vars": list(ring.names), "gens": [str(g) for g in gens]},
            {"betti": [{"homological_degree": i, "rank": r, "degrees": d} for i, r, d in res.betti_numbers()],
             "length": len(res.degrees) - 1},
            {"composes_to_zero": res.composes_to_zero(), "minimal": not res.has_unit_entries()})


def cmd_gb_depth(args):
    ring, gens = _ring_and_polys(args)
    rep = depth_and_cm(cyclic_module(ring, gens), args.dimension)
    return ({"vars": list(ring.names), "gens": [str(g) for g in gens]},
            {"depth": rep.depth, "cm": rep.cm, "projective_dimension": rep.projective_dimension,
             "dimension": rep.dimension},
            {"dimension_source": "supplied" if args.dimension is not None else "Hilbert series pole order"})


# -- parser ---------------------------------------------------------------------

def _common(p, top=False):
    # subcommand copies must not overwrite values given before the subcommand
    dflt = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=["json", "text"], default=dflt("json"))
    p.add_argument("--threads", type=int, default=dflt(1),
                   help="accepted for compatibility; computations are sequential")
    p.add_argument("--timing", action="store_true", default=dflt(False),
                   help="include wall time (breaks byte-stability)")


def build_parser():
    parser = argparse.ArgumentParser(prog="nccr", description="Exact computations for torus quotients, "
                                     "hypersurface germs and del Pezzo cones.")
    _common(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu-tau", help="Milnor and Tyurina numbers at the origin")
    p.add_argument("--vars", required=True)
    p.add_argument("--poly", required=True)
    _common(p)
    p.set_defaults(func=cmd_mu_tau, name="mu-tau", grammar=p)

    inv = sub.add_parser("invariants", help="torus invariants and covariants")
    isub = inv.add_subparsers(dest="sub", required=True)
    specs = [
        ("hilbert-basis", cmd_hilbert_basis, []),
        ("toric-ideal", cmd_toric_ideal, []),
        ("covariant", cmd_covariant, ["a", "D"]),
        ("cm-sweep", cmd_cm_sweep, ["extra"]),
        ("gorenstein", cmd_gorenstein, ["D"]),
        ("quiver", cmd_quiver, ["D"]),
        ("end-check", cmd_end_check, ["D"]),
        ("bidual-check", cmd_bidual_check, ["a", "b", "D"]),
        ("koszul-check", cmd_koszul_check, ["a", "D"]),
        ("lc-bound", cmd_lc_bound, ["sign"]),
    ]
    for name, fn, opts in specs:
        p = isub.add_parser(name)
        _invariant_args(p, opts)
        p.set_defaults(func=fn, name=f"invariants {name}", grammar=p)

    p = sub.add_parser("quiver", help="alias of 'invariants quiver'")
    _invariant_args(p, ["D"])
    p.set_defaults(func=cmd_quiver, name="quiver", grammar=p)

    dpp = sub.add_parser("delpezzo", help="del Pezzo lattices, cohomology and cone checks")
    dsub = dpp.add_subparsers(dest="sub", required=True)
    dspecs = [
        ("surface", cmd_surface, []),
        ("euler", cmd_euler, ["E", "F"]),
        ("slope", cmd_slope, ["E"]),
        ("mutate", cmd_mutate, ["E", "F", "direction"]),
        ("cohomology", cmd_cohomology, ["D"]),
        ("strong-check", cmd_strong_check, ["collection"]),
        ("tilting-check", cmd_tilting, ["L", "collection"]),
        ("crepancy-check", cmd_crepancy, ["L", "collection"]),
        ("cone-check", cmd_cone_check, ["L", "collection"]),
        ("cone-props", cmd_cone_props, ["L"]),
        ("cone-lc", cmd_cone_lc, ["L", "i", "u"]),
        ("ko-report", cmd_ko_report, ["collection"]),
    ]
    for name, fn, opts in dspecs:
        p = dsub.add_parser(name)
        p.add_argument("--surface", required=True, help="P2, dP1..dP8 or P1xP1")
        for o in opts:
            if o in ("E", "F"):
                p.add_argument(f"--{o}", required=True, help="O(c1,...) or rank:c1,...:ch2")
            elif o == "direction":
                p.add_argument("--direction", choices=["left", "right"], default="left")
            elif o == "D":
                p.add_argument("--D", required=True, help="comma-separated class coordinates")
            elif o == "collection":
                p.add_argument("--collection", default="naive", help="'naive' or classes separated by ';'")
            elif o == "L":
                p.add_argument("--L", default="anticanonical", help="'anticanonical' or class coordinates")
            elif o == "i":
                p.add_argument("--i", type=int, required=True)
            elif o == "u":
                p.add_argument("--u-min", type=int, default=-5)
                p.add_argument("--u-max", type=int, default=5)
        _common(p)
        p.set_defaults(func=fn, name=f"delpezzo {name}", grammar=p)

    gb = sub.add_parser("groebner", help="standard bases and resolutions")
    gsub = gb.add_subparsers(dest="sub", required=True)
    for name, fn in [("basis", cmd_gb_basis), ("nf", cmd_gb_nf), ("resolve", cmd_gb_resolve), ("depth", cmd_gb_depth)]:
        p = gsub.add_parser(name)
        p.add_argument("--vars", required=True)
        p.add_argument("--gens", required=True, help="generators separated by ';'")
        if name in ("basis", "nf"):
            p.add_argument("--order", choices=sorted(_ORDERS), default="grevlex")
        else:
            p.add_argument("--var-weights", help="positive variable degrees (default 1)")
        if name == "nf":
            p.add_argument("--poly", required=True)
        if name == "depth":
            p.add_argument("--dimension", type=int, default=None)
        _common(p)
        p.set_defaults(func=fn, name=f"groebner {name}", grammar=p)
    return parser


def _invariant_args(p, opts):
    p.add_argument("--weights", required=True, help="comma-separated integer weights, e.g. 1,1,-1,-1")
    if "a" in opts:
        p.add_argument("--a", type=int, default=1)
    if "b" in opts:
        p.add_argument("--b", type=int, default=1)
    if "D" in opts:
        p.add_argument("-D", "--D", type=int, default=torus.DEFAULT_TRUNCATION, dest="D")
    if "extra" in opts:
        p.add_argument("--extra", type=int, default=0, help="also test this many weights past each end of the range")
    if "sign" in opts:
        p.add_argument("--sign", choices=["+", "-"])
    _common(p)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    start = time.perf_counter()
    try:
        inputs, result, certs = args.func(args)
    except CapExceeded as e:
        stderr.write(f"nccr: resource cap exceeded: {e}\n")
        return EXIT_CAP
    except (UsageError, NCCRError, ValueError) as e:
        stderr.write(f"nccr {args.name}: {e}\n")
        stderr.write(args.grammar.format_usage())
        return EXIT_USAGE
    payload = {"schema": SCHEMA, "command": args.name, "inputs": inputs,
               "result": result, "certificates": certs}
    if args.timing:
        payload["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    payload = jsonable(payload)
    if args.format == "text":
        stdout.write(render_text(payload))
    else:
        stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
