"""Command-line front end.

Every subcommand emits one OutputDocument on stdout in the chosen
format.  Exit codes: 0 success, 1 usage error, 2 verification failure,
3 overflow or resource cap.
"""

from __future__ import annotations

import argparse
import sys

from . import e8, embeddings, quiver, strata
from .errors import (BadParameter, BadParity, BoundTooLarge, CheckFailed,
                     Degenerate, HkflError, NotEven, NotSymmetric, OutOfScope,
                     Overflow, TooLarge, ZeroVector)
from .lattices import (discriminant_profile, milgram_check, named_lattice,
                       q_value)
from .output import OutputDocument

_USAGE_ERRORS = (BadParameter, OutOfScope, BadParity, ZeroVector,
                 NotSymmetric, NotEven, Degenerate)
_RESOURCE_ERRORS = (BoundTooLarge, TooLarge, Overflow)


def _add_format(parser):
    parser.add_argument("--format", choices=["table", "json", "csv"],
                        default="table")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hkfl",
                                  description="lattice and fixed-locus checks")
    sub = top.add_subparsers(dest="group", required=True)

    strata_p = sub.add_parser("strata", help="stratification tables")
    strata_sub = strata_p.add_subparsers(dest="command", required=True)
    k3n = strata_sub.add_parser("k3n")
    k3n.add_argument("--n", type=int, required=True)
    k3n.add_argument("--oracle", action="store_true",
                     help="report the enumeration table instead of the closed form")
    _add_format(k3n)
    kum = strata_sub.add_parser("kummer")
    kum.add_argument("--n", type=int, required=True)
    kum.add_argument("--convention", choices=["derived", "paper"], default="derived")
    kum.add_argument("--compare-paper-formula", action="store_true")
    _add_format(kum)
    bounds = strata_sub.add_parser("bounds")
    bounds.add_argument("--kind", choices=["k3n", "kummer"], required=True)
    bounds.add_argument("--n", type=int, required=True)
    bounds.add_argument("--convention", choices=["derived", "paper"],
                        default="derived")
    _add_format(bounds)

    lat = sub.add_parser("lattice", help="named lattice reports")
    lat.add_argument("command", choices=["info", "disc", "milgram"])
    lat.add_argument("--name", required=True,
                     help="U | E8 | E8m2 | Ln:N | mukai | mukai-kummer")
    _add_format(lat)

    e8p = sub.add_parser("e8", help="root system enumeration")
    e8_sub = e8p.add_subparsers(dest="command", required=True)
    roots_p = e8_sub.add_parser("roots")
    roots_p.add_argument("--count-only", action="store_true")
    _add_format(roots_p)
    short_p = e8_sub.add_parser("short")
    short_p.add_argument("--bound", type=int, required=True)
    short_p.add_argument("--no-cache", action="store_true")
    _add_format(short_p)
    small_p = e8_sub.add_parser("small-square")
    small_p.add_argument("--bound", type=int, default=16,
                         help="positive square bound in the (-2)-rescaled lattice")
    small_p.add_argument("--no-cache", action="store_true")
    _add_format(small_p)

    emb = sub.add_parser("embed", help="gluing-data classification")
    emb_sub = emb.add_subparsers(dest="command", required=True)
    cls_p = emb_sub.add_parser("classify")
    cls_p.add_argument("--n", type=int, required=True)
    _add_format(cls_p)
    orb_p = emb_sub.add_parser("orbits")
    _add_format(orb_p)
    glue_p = emb_sub.add_parser("gluing")
    glue_p.add_argument("--n", type=int, required=True)
    glue_p.add_argument("--kind", choices=["k3n", "kummer"], required=True)
    _add_format(glue_p)

    wall_p = sub.add_parser("wall", help="wall criterion for divisibility-2 classes")
    wall_p.add_argument("--n", type=int, required=True)
    wall_p.add_argument("--square", type=int, required=True)
    wall_p.add_argument("--div", type=int, default=2)
    _add_format(wall_p)

    quiv = sub.add_parser("quiver", help="local fixed-locus model")
    quiv_sub = quiv.add_subparsers(dest="command", required=True)
    loc_p = quiv_sub.add_parser("local")
    loc_p.add_argument("--n", type=int, required=True)
    _add_format(loc_p)
    dim_p = quiv_sub.add_parser("dim")
    dim_p.add_argument("--v", required=True, metavar="A,B")
    dim_p.add_argument("--w", required=True, metavar="C,D")
    _add_format(dim_p)

    part = sub.add_parser("partitions", help="partition d-statistic")
    part.add_argument("action", nargs="?", choices=["verify"], default=None)
    part.add_argument("--n", type=int, required=True)
    part.add_argument("--histogram", action="store_true")
    _add_format(part)

    return top


def _parse_lattice_name(name: str):
    if name == "U":
        return "U", None
    if name == "E8":
        return "E8", None
    if name == "E8m2":
        return "E8", -2
    if name.startswith("Ln:"):
        try:
            return "Ln", int(name.split(":", 1)[1])
        except ValueError:
            raise BadParameter(f"bad Ln parameter in {name!r}")
    if name == "mukai":
        return "Mukai", None
    if name == "mukai-kummer":
        return "MukaiKummer", None
    raise BadParameter(f"unknown lattice name {name!r}; expected "
                       "U | E8 | E8m2 | Ln:N | mukai | mukai-kummer")


def _strata_rows(table):
    return [{"m": row.m, "dim": row.dim, "count": row.count,
             "component_type": row.component_type} for row in table.rows]


def _cmd_strata_k3n(args):
    formula = strata.strata_k3_formula(args.n)
    if args.n <= strata.ORACLE_CAP:
        oracle = strata.strata_k3_oracle(args.n)
        if formula.rows != oracle.rows:
            raise CheckFailed(f"closed form and enumeration disagree at n={args.n}",
                              lhs=formula.rows, rhs=oracle.rows)
        table = oracle if args.oracle else formula
    elif args.oracle:
        raise BadParameter(f"--oracle supports n <= {strata.ORACLE_CAP}")
    else:
        table = formula
    result = {"n": args.n, "source": "oracle" if args.oracle else "formula",
              "total": table.total(), "rows": _strata_rows(table)}
    return OutputDocument(command="strata.k3n",
                          parameters={"n": args.n, "oracle": args.oracle},
                          result=result)


def _cmd_strata_kummer(args):
    table = strata.strata_kummer_oracle(args.n, convention=args.convention)
    records = []
    result = {"n": args.n, "convention": args.convention,
              "total": table.total(), "rows": _strata_rows(table)}
    if args.convention == "paper":
        records.extend(strata.paper_convention_records(args.n))
    if args.compare_paper_formula:
        comparison, comp_records = strata.kummer_comparison(args.n)
        result["comparison"] = comparison
        records.extend(comp_records)
    return OutputDocument(command="strata.kummer",
                          parameters={"n": args.n, "convention": args.convention,
                                      "compare_paper_formula": args.compare_paper_formula},
                          result=result, discrepancies=records)


def _cmd_strata_bounds(args):
    report = strata.bounds_report(args.kind, args.n, convention=args.convention)
    result = {"kind": report.kind, "n": report.n,
              "stated_min_m": report.stated_min_m,
              "stated_max_m": report.stated_max_m,
              "actual_min_m": report.actual_min_m,
              "actual_max_m": report.actual_max_m,
              "stated_isolated_cutoff": report.stated_isolated_cutoff,
              "has_isolated": report.has_isolated,
              "within_stated_bounds": report.within_stated_bounds}
    if report.convention:
        result["convention"] = report.convention
    return OutputDocument(command="strata.bounds",
                          parameters={"kind": args.kind, "n": args.n,
                                      "convention": args.convention},
                          result=result, discrepancies=list(report.discrepancies))


def _cmd_lattice(args):
    name, param = _parse_lattice_name(args.name)
    lattice = named_lattice(name, param)
    params = {"name": args.name}
    if args.command == "info":
        pos, neg = lattice.signature()
        profile = discriminant_profile(lattice)
        result = {"label": lattice.label, "rank": lattice.rank,
                  "determinant": lattice.determinant(),
                  "signature": [pos, neg], "even": True,
                  "discriminant_orders": list(profile.orders)}
        return OutputDocument(command="lattice.info", parameters=params,
                              result=result)
    if args.command == "disc":
        profile = discriminant_profile(lattice)
        gens = []
        for i in range(profile.length):
            unit = tuple(1 if j == i else 0 for j in range(profile.length))
            gens.append({"order": profile.orders[i],
                         "lift": list(profile.generator_lifts[i]),
                         "q": q_value(profile, unit)})
        result = {"label": lattice.label, "group_order": profile.group_order(),
                  "length": profile.length, "orders": list(profile.orders),
                  "rows": gens}
        return OutputDocument(command="lattice.disc", parameters=params,
                              result=result)
    report = milgram_check(lattice)
    result = {"label": report.label, "group_order": report.group_order,
              "signature": report.signature,
              "signature_mod_8": report.signature % 8,
              "gauss_sum": report.gauss_sum, "expected": report.expected,
              "error": report.error, "ok": True}
    return OutputDocument(command="lattice.milgram", parameters=params,
                          result=result)


def _cmd_e8_roots(args):
    rs = e8.roots()
    result = {"count": len(rs), "generates_lattice": True}
    if not args.count_only:
        result["rows"] = [{"vector": list(v)} for v in rs]
    return OutputDocument(command="e8.roots",
                          parameters={"count_only": args.count_only},
                          result=result)


def _cmd_e8_short(args):
    table = e8.enumerate_short_vectors(args.bound, use_cache=not args.no_cache)
    result = {"bound": args.bound, "total": table.total(),
              "rows": [{"norm": n, "count": c} for n, c in table.counts().items()]}
    return OutputDocument(command="e8.short",
                          parameters={"bound": args.bound,
                                      "no_cache": args.no_cache},
                          result=result)


def _cmd_e8_small_square(args):
    if args.bound < 4 or args.bound % 2:
        raise BadParameter("bound must be an even integer >= 4")
    e8_bound = args.bound // 2
    if e8_bound % 2:
        e8_bound -= 1  # odd norms are empty; squares below -bound stay out
    coverage = e8.class_coverage(e8_bound, use_cache=not args.no_cache)
    covered = len(coverage.covered())
    hist = {-2 * norm: c for norm, c in coverage.min_norm_histogram().items()}
    max_min_square = -2 * coverage.max_min_norm()
    all_covered = covered == 256
    claim_holds = all_covered and max_min_square >= -16
    message = (f"all 256 classes covered at bound {args.bound} in the "
               f"(-2)-rescaled lattice" if all_covered
               else f"only {covered}/256 classes covered at bound {args.bound}")
    result = {"square_bound": -args.bound, "classes_covered": covered,
              "all_covered": all_covered,
              "claim": "every class has a representative of square >= -16",
              "claim_holds": claim_holds,
              "max_min_square": max_min_square,
              "min_square_histogram": {str(k): v for k, v in sorted(hist.items())},
              "message": message}
    return OutputDocument(command="e8.small-square",
                          parameters={"bound": args.bound,
                                      "no_cache": args.no_cache},
                          result=result)


def _cmd_embed_classify(args):
    classes = embeddings.classify_embeddings(args.n)
    rows = []
    for c in classes:
        row = {"trivial": c.datum.is_trivial()}
        if not c.datum.is_trivial():
            row.update({"h_s_generator": list(c.datum.h_s_generators[0]),
                        "h_n_generator": list(c.datum.h_n_generators[0]),
                        "orbit_size": c.orbit_size, "orbit_q": c.orbit_q,
                        "witness_vector": list(c.witness.vector),
                        "witness_square": c.witness.square,
                        "witness_divisibility": c.witness.divisibility,
                        "square_bound": c.square_bound,
                        "bound_satisfied": c.bound_satisfied})
        rows.append(row)
    return OutputDocument(command="embed.classify", parameters={"n": args.n},
                          result={"n": args.n, "count": len(classes), "rows": rows})


def _cmd_embed_orbits(args):
    dec = embeddings.discriminant_class_orbits()
    rows = [{"size": len(orbit), "q": q, "representative": list(orbit[0])}
            for orbit, q in zip(dec.orbits, dec.q_values)]
    return OutputDocument(command="embed.orbits", parameters={},
                          result={"orbit_count": len(dec.orbits), "rows": rows})


def _cmd_embed_gluing(args):
    report = embeddings.mukai_gluing_check(args.n, args.kind)
    witnesses = []
    for witness in report.witnesses:
        mapping = dict(witness)
        gens = []
        length = len(next(iter(mapping))) if mapping else 0
        for i in range(length):
            unit = tuple(1 if j == i else 0 for j in range(length))
            gens.append({"generator": list(unit), "image": list(mapping[unit])})
        witnesses.append({"generator_images": gens})
    result = {"kind": report.kind, "n": args.n, "group_order": report.group_order,
              "q_h2": str(report.q_h2), "q_v": str(report.q_v),
              "count": report.count,
              "rows": witnesses or [{"generator_images": []}]}
    return OutputDocument(command="embed.gluing",
                          parameters={"n": args.n, "kind": args.kind},
                          result=result)


def _cmd_wall(args):
    verdict = embeddings.wall_check(args.n, args.square, args.div)
    result = {"n": verdict.n, "a_square": verdict.a_square, "a_div": verdict.a_div,
              "v_square": verdict.v_square, "s": verdict.s,
              "lower": verdict.lower, "upper": verdict.upper,
              "boundary_square": verdict.boundary_square,
              "verdict": verdict.verdict}
    return OutputDocument(command="wall",
                          parameters={"n": args.n, "square": args.square,
                                      "div": args.div},
                          result=result)


def _cmd_quiver_local(args):
    comps = quiver.local_fixed_components(args.n)
    rows = [{"v1": c.v.v1, "v2": c.v.v2, "dim": c.dim, "sign": c.sign or ""}
            for c in comps]
    return OutputDocument(command="quiver.local", parameters={"n": args.n},
                          result={"n": args.n, "rows": rows})


def _cmd_quiver_dim(args):
    try:
        v = quiver.DimVector(*(int(x) for x in args.v.split(",")))
        w = quiver.DimVector(*(int(x) for x in args.w.split(",")))
    except (TypeError, ValueError):
        raise BadParameter("--v and --w take two comma-separated integers")
    result = {"v": [v.v1, v.v2], "w": [w.v1, w.v2],
              "dim": quiver.quiver_dim(v, w),
              "positive_root": quiver.is_positive_root(v)}
    return OutputDocument(command="quiver.dim",
                          parameters={"v": args.v, "w": args.w}, result=result)


def _cmd_partitions(args):
    if args.action == "verify":
        report = quiver.verify_d_range(args.n)
        result = {"n": args.n, "total_partitions": report.total_partitions,
                  "expected_d": list(report.expected),
                  "histogram": {str(k): v for k, v in report.histogram.items()},
                  "ok": True}
        return OutputDocument(command="partitions.verify",
                              parameters={"n": args.n}, result=result)
    profiles = quiver.partitions(args.n)
    hist = {}
    for p in profiles:
        hist[p.d] = hist.get(p.d, 0) + 1
    result = {"n": args.n, "count": len(profiles),
              "min_d": min(hist), "max_d": max(hist)}
    if args.histogram:
        result["rows"] = [{"d": d, "partitions": c}
                          for d, c in sorted(hist.items())]
    return OutputDocument(command="partitions",
                          parameters={"n": args.n, "histogram": args.histogram},
                          result=result)


_HANDLERS = {
    ("strata", "k3n"): _cmd_strata_k3n,
    ("strata", "kummer"): _cmd_strata_kummer,
    ("strata", "bounds"): _cmd_strata_bounds,
    ("e8", "roots"): _cmd_e8_roots,
    ("e8", "short"): _cmd_e8_short,
    ("e8", "small-square"): _cmd_e8_small_square,
    ("embed", "classify"): _cmd_embed_classify,
    ("embed", "orbits"): _cmd_embed_orbits,
    ("embed", "gluing"): _cmd_embed_gluing,
    ("quiver", "local"): _cmd_quiver_local,
    ("quiver", "dim"): _cmd_quiver_dim,
}


def run(argv, stdout=None, stderr=None) -> int:
    """Dispatch a command line; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        if args.group == "lattice":
            doc = _cmd_lattice(args)
        elif args.group == "wall":
            doc = _cmd_wall(args)
        elif args.group == "partitions":
            doc = _cmd_partitions(args)
        else:
            doc = _HANDLERS[(args.group, args.command)](args)
        stdout.write(doc.render(args.format))
        return 0
    except CheckFailed as exc:
        stderr.write(f"check failed: {exc}\n")
        return 2
    except _RESOURCE_ERRORS as exc:
        stderr.write(f"resource limit: {exc}\n")
        return 3
    except _USAGE_ERRORS as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1
    except HkflError as exc:
        stderr.write(f"error: {exc}\n")
        return 2


def main():  # pragma: no cover - thin console wrapper
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
