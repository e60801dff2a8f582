"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (invalid/incomplete fan, not
almost Fano), 2 parse or I/O failure. The Monte-Carlo seed comes from the
FUTAKI_MC_SEED environment variable (default 42).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .exact import format_rat, parse_rat
from .fano import (
    FanReconstructionError,
    NotAlmostFanoError,
    NotQGorensteinError,
    bijection_report,
)
from .fans import Fan, FanDataError, fan_from_json, fan_to_json, validate_fan
from .futaki import (
    InvalidFanError,
    analyze_fan,
    build_embedding,
    futaki_report,
    gradient_selftest,
)
from .geometry import (
    DegenerateGeometryError,
    MomentData,
    convex_hull,
    degree,
    degree_normalized_barycentre,
    moments,
    negate_moment_data,
    negate_points,
    to_off,
)
from .mckernel import KERNEL_NAME
from .montecarlo import mc_moments

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


class MathError(Exception):
    pass


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _load_fan(target) -> tuple[Fan, str]:
    """Catalog name or fan JSON path -> (fan, origin)."""
    try:
        entry = catalog.get(target)
    except KeyError:
        pass
    else:
        if entry.fan is None:
            raise InputError(f"catalog entry {target!r} carries no fan")
        return entry.fan, f"catalog:{target}"
    try:
        return fan_from_json(_read_text(target)), f"file:{target}"
    except FanDataError as e:
        raise InputError(str(e)) from e


def polytope_from_json(text):
    """Parse {"vertices": [["p/q", ...], ...]}; entries may also be ints."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InputError("polytope document needs a 'vertices' field")
    verts = doc["vertices"]
    if not isinstance(verts, list) or not verts:
        raise InputError("'vertices' must be a non-empty list")
    out = []
    for i, v in enumerate(verts):
        if not isinstance(v, list):
            raise InputError(f"vertex {i} must be a list")
        row = []
        for c in v:
            if isinstance(c, int) and not isinstance(c, bool):
                row.append(Fraction(c))
            elif isinstance(c, str):
                try:
                    row.append(parse_rat(c))
                except ValueError as e:
                    raise InputError(f"vertex {i}: {e}") from e
            else:
                raise InputError(
                    f"vertex {i} has a non-rational entry {c!r} "
                    f"(floats are not accepted)")
        out.append(tuple(row))
    return out


def polytope_to_json(points) -> str:
    doc = {"vertices": [[format_rat(c) for c in p] for p in points]}
    return json.dumps(doc, indent=2) + "\n"


def hpolytope_to_json(hp) -> str:
    doc = {"inequalities": [
        {"normal": list(nrm), "offset": format_rat(off)}
        for nrm, off in hp.inequalities]}
    return json.dumps(doc, indent=2) + "\n"


def _parse_field(text, rank):
    coeffs = []
    for part in text.split(","):
        part = part.strip()
        try:
            coeffs.append(parse_rat(part))
        except ValueError:
            try:
                coeffs.append(complex(part))
            except ValueError:
                raise InputError(
                    f"bad field coefficient {part!r} (use p/q or complex "
                    f"literals like 1+2j)") from None
    if len(coeffs) != rank:
        raise InputError(f"field needs {rank} coefficients, got {len(coeffs)}")
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# subcommands


def cmd_list(args):
    rows = []
    for e in catalog.entries():
        rows.append({
            "name": e.name,
            "kind": e.kind,
            "description": e.description,
            "fan_provenance": e.fan_provenance,
            "expected_source": e.expected_source,
            "notes": list(e.notes),
        })
    if args.json:
        print(json.dumps({"entries": rows}, indent=2))
        return EXIT_OK
    for row in rows:
        print(f"{row['name']:16} {row['kind']:9} {row['description']}")
        for note in row["notes"]:
            print(f"{'':16} note: {note}")
    return EXIT_OK


def cmd_validate(args):
    fan, origin = _load_fan(args.target)
    report = validate_fan(fan)
    if args.json:
        doc = {"target": origin, "rank": fan.rank,
               "rays": [list(r) for r in fan.rays],
               "report": report.to_dict()}
        print(json.dumps(doc, indent=2))
    else:
        print(f"fan {origin}: rank {fan.rank}, {len(fan.rays)} rays, "
              f"{len(fan.max_cones)} maximal cones")
        for flag in ("axioms_ok", "complete", "simplicial", "smooth"):
            print(f"  {flag:12} {getattr(report, flag)}")
        for v in report.violations:
            print(f"  violation [{v.kind}] {v.message}")
    return EXIT_OK if report.axioms_ok else EXIT_MATH


def _moment_section(md: MomentData, label):
    return {
        "polytope": label,
        "volume": format_rat(md.volume),
        "degree": format_rat(degree(md)),
        "centroid": [format_rat(c) for c in md.barycentre],
        "normalized_barycentre":
            [format_rat(c) for c in degree_normalized_barycentre(md)],
    }


def _comparison_section(cmp):
    doc = {
        "expected_normalized_barycentre":
            [format_rat(c) for c in cmp.expected_normalized_barycentre],
        "computed_normalized_barycentre":
            [format_rat(c) for c in cmp.computed_normalized_barycentre],
        "matches": cmp.matches,
    }
    if cmp.expected_degree is not None:
        doc["expected_degree"] = format_rat(cmp.expected_degree)
        doc["computed_degree"] = format_rat(cmp.computed_degree)
    if cmp.mc is not None:
        doc["mc_arbitration"] = {
            "samples": cmp.mc.samples,
            "seed": cmp.mc.seed,
            "volume": cmp.mc.volume,
            "volume_stderr": cmp.mc.volume_stderr,
            "first_moments": list(cmp.mc.first_moments),
            "first_moment_stderrs": list(cmp.mc.first_moment_stderrs),
            "supports": cmp.mc_supports,
        }
    return doc


def _render_analysis(doc, as_json):
    if as_json:
        print(json.dumps(doc, indent=2))
        return
    print(f"target: {doc['target']}  (route: {doc['route']})")
    for key in ("validation",):
        if key in doc:
            v = doc[key]
            print(f"  fan: axioms_ok={v['axioms_ok']} complete={v['complete']} "
                  f"simplicial={v['simplicial']} smooth={v['smooth']}")
            for f in v["violations"]:
                print(f"    violation [{f['kind']}] {f['message']}")
    if "gorenstein_index" in doc:
        print(f"  gorenstein index: {doc['gorenstein_index']}")
    md = doc.get("moments")
    if md:
        print(f"  polytope: {md['polytope']}")
        print(f"    volume                {md['volume']}")
        print(f"    degree (n! * volume)  {md['degree']}")
        print(f"    centroid              ({', '.join(md['centroid'])})")
        print(f"    normalized barycentre ({', '.join(md['normalized_barycentre'])})")
    cmp = doc.get("comparison")
    if cmp:
        if cmp["matches"]:
            print(f"  barycentre matches the published value "
                  f"({', '.join(cmp['expected_normalized_barycentre'])})")
        else:
            print(f"  MISMATCH: expected "
                  f"({', '.join(cmp['expected_normalized_barycentre'])}), "
                  f"computed ({', '.join(cmp['computed_normalized_barycentre'])})")
            mc = cmp.get("mc_arbitration")
            if mc:
                print(f"    Monte-Carlo arbitration ({mc['samples']} samples, "
                      f"seed {mc['seed']}) supports: {mc['supports']}")
    if "vertices" in doc:
        print(f"  vertices ({len(doc['vertices'])}):")
        for v in doc["vertices"]:
            print(f"    ({', '.join(v)})")
    if "facets" in doc:
        print(f"  facets ({len(doc['facets'])}):")
        for f in doc["facets"]:
            print(f"    <x, ({', '.join(str(c) for c in f['normal'])})> + "
                  f"{f['offset']} >= 0")
    fut = doc.get("futaki")
    if fut:
        print("  futaki:")
        print(f"    re_basis: {fut['re_futaki_basis']}")
        for fv in fut["fields"]:
            exact = (f" exact factor {fv['exact_factor']}"
                     if fv["exact_factor"] is not None else "")
            print(f"    field ({', '.join(fv['coeffs'])}): "
                  f"Re F = {fv['re_futaki']:.6g}{exact} sign {fv['sign']}")
    emb = doc.get("embedding")
    if emb:
        print(f"  embedding: index k={emb['k']}, lattice points "
              f"{emb['points']}, ambient projective dimension N={emb['N']}")
    st = doc.get("selftest")
    if st is not None:
        print(f"  moment-map gradient selftest: max deviation {st:.3e}")
    mc = doc.get("mc_check")
    if mc:
        print(f"  mc check ({mc['samples']} samples, seed {mc['seed']}): "
              f"volume {mc['volume']:.6f} +- {mc['volume_stderr']:.6f} "
              f"[exact {mc['exact_volume']}] -> "
              f"{'OK' if mc['within_tolerance'] else 'DISAGREES'}")
    bij = doc.get("bijection")
    if bij is not None:
        status = "exact" if bij["ok"] else "DISCREPANT"
        print(f"  covector/vertex bijection vs published list: {status}")
        for pair in bij["duplicate_cones"]:
            print(f"    duplicate cones: {pair}")
        for k in bij["covectors_not_listed"]:
            print(f"    covector not listed: ({', '.join(k)})")
        for p in bij["points_without_cone"]:
            print(f"    published point without cone: ({', '.join(p)})")


def _analysis_fan_route(fan, doc):
    report = validate_fan(fan)
    doc["validation"] = report.to_dict()
    if not report.axioms_ok:
        raise MathError("fan axioms are violated")
    if not report.complete:
        raise MathError("fan is not complete")
    try:
        analysis = analyze_fan(fan)
    except (NotQGorensteinError, InvalidFanError) as e:
        raise MathError(str(e)) from e
    except NotAlmostFanoError as e:
        raise MathError(f"not almost Fano: {e}") from e
    doc["gorenstein_index"] = analysis.gorenstein.index
    return analysis


def cmd_analyze(args):
    seed = catalog.mc_seed()
    doc = {"route": None, "target": None, "kernel": KERNEL_NAME}
    entry = None
    md_listed = None  # moments in the orientation being displayed
    poly_listed = None  # polytope carrying md_listed (for MC cross-checks)
    fan_for_embedding = None

    if args.from_vertices:
        points = polytope_from_json(_read_text(args.from_vertices))
        doc["target"] = f"file:{args.from_vertices}"
        doc["route"] = "vertices"
        try:
            poly_listed = convex_hull(points)
        except (DegenerateGeometryError, ValueError) as e:
            raise MathError(str(e)) from e
        md_listed = moments(poly_listed)
        md_anti = md_listed  # interpreted as the anticanonical polytope
    else:
        if not args.target:
            raise InputError("need a catalog name, fan file, or --from-vertices")
        try:
            entry = catalog.get(args.target)
        except KeyError:
            entry = None
        if entry is None:
            fan, origin = _load_fan(args.target)
            doc["target"] = origin
            doc["route"] = "fan"
            analysis = _analysis_fan_route(fan, doc)
            poly_listed = analysis.polytope
            md_listed = md_anti = analysis.moment_data
            fan_for_embedding = fan
        elif entry.kind == "fan" or args.from_fan:
            fan = entry.fan if entry.kind == "fan" else entry.reconciled_fan()
            doc["target"] = f"catalog:{entry.name}"
            doc["route"] = ("fan" if entry.kind == "fan"
                            else "reconciled-fan (derived)")
            analysis = _analysis_fan_route(fan, doc)
            md_anti = analysis.moment_data
            # display/compare in the orientation the expected values use
            if entry.kind == "vertices" and entry.vertices_negated:
                md_listed = negate_moment_data(md_anti)
                poly_listed = convex_hull(
                    negate_points(analysis.polytope.vertices))
            else:
                md_listed = md_anti
                poly_listed = analysis.polytope
            fan_for_embedding = fan
        else:
            doc["target"] = f"catalog:{entry.name}"
            use_derived = args.reconciled and entry.derived_vertices is not None
            doc["route"] = ("derived-vertices" if use_derived
                            else "published-vertices")
            pts = entry.vertex_list(reconciled=use_derived)
            poly_listed = convex_hull(pts)
            md_listed = moments(poly_listed)
            md_anti = (negate_moment_data(md_listed)
                       if entry.vertices_negated else md_listed)
            try:
                fan_for_embedding = entry.reconciled_fan()
            except (FanReconstructionError, FanDataError):
                fan_for_embedding = None

    doc["moments"] = _moment_section(
        md_listed,
        "as listed (negated anticanonical polytope)"
        if entry is not None and entry.kind == "vertices"
        and entry.vertices_negated else "anticanonical polytope")

    if entry is not None and entry.expected_normalized_barycentre is not None:
        cmp = catalog.compare_with_expected(
            entry, md_listed, poly_listed,
            mc_samples=args.mc_samples, seed=seed, sigmas=args.tolerance)
        doc["comparison"] = _comparison_section(cmp)

    if args.polytope:
        doc["vertices"] = [[format_rat(c) for c in v]
                           for v in poly_listed.vertices]
        doc["facets"] = [{"normal": list(f.normal),
                          "offset": format_rat(f.offset)}
                         for f in poly_listed.facets]

    if args.futaki:
        coeffs = _parse_field(args.futaki, len(md_anti.first_moments))
        doc["futaki"] = futaki_report(md_anti, fields=[coeffs]).to_dict()
    elif args.barycentre or not (args.polytope or args.embedding
                                 or args.selftest or args.mc_check):
        doc["futaki"] = futaki_report(md_anti).to_dict()

    if args.embedding or args.selftest:
        if fan_for_embedding is None:
            raise MathError("no fan available for the embedding sections")
        emb = build_embedding(fan_for_embedding)
        doc["embedding"] = {"k": emb.k, "points": emb.ambient_dim + 1,
                            "N": emb.ambient_dim}
        if args.selftest:
            doc["selftest"] = gradient_selftest(emb, trials=100, seed=seed)

    if args.mc_check:
        mc = mc_moments(poly_listed, seed=seed, samples=args.mc_samples)
        vol_ok = abs(mc.volume - float(md_listed.volume)) \
            <= args.tolerance * mc.volume_stderr if mc.volume_stderr > 0 \
            else mc.volume == float(md_listed.volume)
        mom_ok = all(
            abs(est - float(m)) <= args.tolerance * se if se > 0
            else est == float(m)
            for est, se, m in zip(mc.first_moments, mc.first_moment_stderrs,
                                  md_listed.first_moments))
        doc["mc_check"] = {
            "samples": mc.samples, "seed": mc.seed,
            "volume": mc.volume, "volume_stderr": mc.volume_stderr,
            "first_moments": list(mc.first_moments),
            "first_moment_stderrs": list(mc.first_moment_stderrs),
            "exact_volume": format_rat(md_listed.volume),
            "within_tolerance": vol_ok and mom_ok,
        }

    if (entry is not None and entry.kind == "vertices"
            and entry.fan is not None and not args.from_fan):
        try:
            bij = bijection_report(entry.fan, entry.published_vertices)
            doc["bijection"] = {
                "ok": bij.ok,
                "duplicate_cones": [list(p) for p in bij.duplicate_cones],
                "covectors_not_listed":
                    [[format_rat(c) for c in k] for k in bij.covectors_not_listed],
                "points_without_cone":
                    [[format_rat(c) for c in p] for p in bij.points_without_cone],
            }
        except (NotQGorensteinError, ValueError):
            pass

    _render_analysis(doc, args.json)
    return EXIT_OK


def cmd_export(args):
    entry = None
    try:
        entry = catalog.get(args.name)
    except KeyError:
        raise InputError(f"unknown catalog entry {args.name!r}") from None

    what = args.what
    if what == "fan":
        if entry.fan is None:
            raise InputError(f"entry {entry.name} has no fan")
        if args.format != "json":
            raise InputError("fans export as JSON only")
        payload = fan_to_json(entry.fan)
    elif what == "reconciled-fan":
        try:
            payload = fan_to_json(entry.reconciled_fan())
        except (ValueError, FanReconstructionError) as e:
            raise MathError(str(e)) from e
        if args.format != "json":
            raise InputError("fans export as JSON only")
    elif what == "polytope":
        if entry.published_vertices is not None:
            pts = entry.vertex_list(reconciled=args.reconciled)
        else:
            pts = analyze_fan(entry.fan).polytope.vertices
        if args.format == "json":
            payload = polytope_to_json(pts)
        else:
            payload = to_off(convex_hull(pts))
    else:
        raise InputError(f"unknown export target {what!r}")

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="toricfutaki",
        description="Exact anticanonical polytopes, barycentres and Futaki "
                    "invariants of almost Fano toric varieties.")
    sub = p.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="catalog listing with provenance notes")
    p_list.add_argument("--json", action="store_true")
    p_list.set_defaults(func=cmd_list)

    p_val = sub.add_parser("validate", help="check the fan axioms and flags")
    p_val.add_argument("target", help="catalog name or fan JSON path")
    p_val.add_argument("--json", action="store_true")
    p_val.set_defaults(func=cmd_validate)

    p_an = sub.add_parser("analyze", help="polytope, barycentre and Futaki data")
    p_an.add_argument("target", nargs="?",
                      help="catalog name or fan JSON path")
    p_an.add_argument("--from-vertices", metavar="FILE",
                      help="analyze a polytope JSON file directly "
                           "(skips all fan stages)")
    p_an.add_argument("--from-fan", action="store_true",
                      help="vertex-list entries: use the reconciled fan route")
    p_an.add_argument("--reconciled", action="store_true",
                      help="vertex route: prefer the derived corrected list")
    p_an.add_argument("--polytope", action="store_true",
                      help="print vertices and facets")
    p_an.add_argument("--barycentre", action="store_true",
                      help="print moment/barycentre data (default)")
    p_an.add_argument("--futaki", metavar="C1,C2,...",
                      help="evaluate Re F on the torus field with these "
                           "coefficients")
    p_an.add_argument("--embedding", action="store_true",
                      help="anticanonical embedding dimensions")
    p_an.add_argument("--selftest", action="store_true",
                      help="run the moment-map gradient selftest")
    p_an.add_argument("--mc-check", action="store_true",
                      help="cross-check exact moments by Monte Carlo")
    p_an.add_argument("--mc-samples", type=int, default=1_000_000)
    p_an.add_argument("--tolerance", type=float, default=3.0,
                      help="sigma multiplier for Monte-Carlo comparisons")
    p_an.add_argument("--json", action="store_true")
    p_an.set_defaults(func=cmd_analyze)

    p_ex = sub.add_parser("export", help="write catalog data as JSON or OFF")
    p_ex.add_argument("name")
    p_ex.add_argument("--what", choices=["fan", "reconciled-fan", "polytope"],
                      default="fan")
    p_ex.add_argument("--format", choices=["json", "off"], default="json")
    p_ex.add_argument("--reconciled", action="store_true",
                      help="polytope export: prefer the derived list")
    p_ex.add_argument("--output", "-o")
    p_ex.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except MathError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MATH
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
