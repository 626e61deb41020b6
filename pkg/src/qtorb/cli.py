"""Command line interface: ``qtorb <subcommand> <file> [options]``.

Exit codes: 0 success, 2 invalid input (syntax, schema, validation, or a
non-generic functional), 3 ``chern`` or ``index`` without a realization, 4 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import chenruan, chern, cohomology, model as mdl
from .cohomology import CohomologyConsistencyError, monomial_str
from .modelfile import (
    ModelFileError,
    build_from_file,
    format_rational,
    load_model_file,
    model_to_dict,
    parse_model,
)
from .polytope import GenericityError, PolytopeError, index_vector

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_REALIZATION = 3
EXIT_INTERNAL = 4

SUBCOMMANDS = ("validate", "pi1", "cover", "quotient", "betti", "ring", "chern",
               "chen-ruan", "index", "equiv", "report")


class MissingRealization(Exception):
    pass


def _facets(fs):
    return sorted(fs)


def _fmt_facets(fs):
    return "{" + ",".join(f"F{i + 1}" for i in sorted(fs)) + "}"


# ---------------------------------------------------------------------------
# report sections (JSON-ready dicts)


def validate_section(model) -> dict:
    return {
        "valid": True,
        "primitive": mdl.is_primitive(model),
        "vertex_dets": list(model.vertex_dets),
        "singular_faces": [
            {"facets": _facets(F.facet_set), "codim": F.codim,
             "order": model.local_group(F).order,
             "invariant_factors": list(model.local_group(F).group.invariant_factors)}
            for F in mdl.singular_faces(model)
        ],
    }


def pi1_section(model) -> dict:
    g = mdl.pi1_orb(model)
    return {"invariant_factors": list(g.invariant_factors), "order": g.order}


def cover_section(model) -> dict:
    cover, basis = mdl.universal_cover_model(model)
    return {"basis": [list(c) for c in basis.columns()],
            "lambda": [list(v) for v in cover.vectors],
            "manifold": mdl.is_manifold(cover)}


def quotient_section(model) -> dict:
    return {"manifold": mdl.is_manifold(model),
            "global_quotient": mdl.is_global_quotient(model)}


def betti_section(model) -> dict:
    even = list(cohomology.betti_numbers(model))
    full = [0] * (2 * model.rank + 1)
    for k, b in enumerate(even):
        full[2 * k] = b
    return {"betti": even, "betti_all_degrees": full}


def ring_section(model, ring, max_degree=None) -> dict:
    top = model.rank if max_degree is None else min(max_degree, model.rank)
    return {
        "dims": list(ring.dims),
        "max_degree": top,
        "basis": [[monomial_str(b) for b in ring.basis(d)] for d in range(top + 1)],
        "minimal_nonfaces": [sorted(s) for s in cohomology.minimal_nonfaces(model.polytope)],
        "linear_forms": [cohomology.linear_form_str(f) for f in cohomology.linear_forms(model)],
        "generators": ring.generator_relations(),
        "pairing": {str(d): [[format_rational(x) for x in row] for row in mat]
                    for d, mat in ring.pairing.items() if d <= top},
        "pairing_nondegenerate": ring.pairing_nondegenerate(),
        "total_chern_class": [
            {"degree": c.degree, "coords": [format_rational(x) for x in c.coords],
             "expr": ring.class_str(c)}
            for c in chern.total_chern_class(model, ring)[:top + 1]
        ],
    }


def chern_section(model, R, orientation) -> dict:
    if R is None or R.coordinates is None:
        raise MissingRealization("this model file has no realization")
    signs = chern.vertex_signs(model, R, orientation)
    ok, which = chern.almost_complex_necessary(model, R, orientation)
    return {
        "orientation": orientation,
        "sigma": [s.sigma for s in signs],
        "top_chern": format_rational(sum((Fraction(1, s.sigma) for s in signs), Fraction(0))),
        "almost_complex_necessary": ok,
        "almost_complex_orientation": which,
    }


def index_section(model, R) -> dict:
    if R is None or R.coordinates is None or R.functional is None:
        raise MissingRealization("index needs both a realization and a functional")
    return {"indices": [i for _, i in index_vector(model.polytope, R)]}


def chen_ruan_section(model) -> dict:
    sectors = chenruan.box_elements(model)
    table = chenruan.chen_ruan_betti(model, sectors)
    return {
        "sectors": [
            {"facets": _facets(s.face.facet_set), "rep": list(s.rep),
             "q": [format_rational(x) for x in s.q],
             "iota": format_rational(s.iota), "shift": format_rational(s.shift)}
            for s in sectors
        ],
        "table": {format_rational(d): b for d, b in table.entries.items()},
        "total": table.total,
    }


def report(model, R, orientation, name="", max_degree=None) -> dict:
    ring = cohomology.cohomology_ring(model)
    out = {"name": name}
    out.update(validate_section(model))
    out["pi1"] = pi1_section(model)
    out.update(quotient_section(model))
    out["cover"] = cover_section(model)
    out.update(betti_section(model))
    out["ring"] = ring_section(model, ring, max_degree)
    if R is not None and R.coordinates is not None:
        out["chern"] = chern_section(model, R, orientation)
    else:
        out["chern"] = None
    if R is not None and R.coordinates is not None and R.functional is not None:
        try:
            out["index"] = index_section(model, R)
        except GenericityError as exc:
            out["index"] = {"error": str(exc)}
    else:
        out["index"] = None
    out["chen_ruan"] = chen_ruan_section(model)
    return out


# ---------------------------------------------------------------------------
# text rendering


def _text(cmd, data, model) -> str:
    lines = []
    if cmd in ("validate", "report"):
        lines.append(f"model {data.get('name') or '(unnamed)'}: valid")
        lines.append(f"primitive: {'yes' if data['primitive'] else 'no'}")
        if data["singular_faces"]:
            lines.append("singular faces:")
            for f in data["singular_faces"]:
                grp = " + ".join(f"Z/{d}" for d in f["invariant_factors"])
                lines.append(f"  {_fmt_facets(f['facets'])} codim {f['codim']}: "
                             f"|G| = {f['order']} ({grp})")
        else:
            lines.append("singular faces: none")
    if cmd in ("pi1", "report"):
        g = data["pi1"]
        desc = " + ".join(f"Z/{d}" for d in g["invariant_factors"]) or "trivial"
        lines.append(f"orbifold fundamental group: {desc} (order {g['order']})")
    if cmd in ("quotient", "report"):
        lines.append(f"manifold: {'yes' if data['manifold'] else 'no'}")
        lines.append(f"global quotient: {'yes' if data['global_quotient'] else 'no'}")
    if cmd in ("cover", "report"):
        c = data["cover"]
        lines.append(f"universal cover basis: {c['basis']}")
        lines.append("universal cover vectors: " + ", ".join(
            f"F{i + 1}: {tuple(v)}" for i, v in enumerate(c["lambda"])))
    if cmd in ("betti", "report"):
        lines.append("betti numbers: " + " ".join(
            f"b{2 * k}={b}" for k, b in enumerate(data["betti"])) + " (odd: 0)")
    if cmd in ("ring", "report"):
        r = data["ring"]
        lines.append(f"ring dims: {r['dims']}")
        for d, b in enumerate(r["basis"]):
            lines.append(f"  H^{2 * d} basis: {', '.join(b) if b else '-'}")
        lines.append("  linear relations: " + ", ".join(r["linear_forms"]))
        lines.append("  monomial relations: " + ", ".join(
            "*".join(f"w{i + 1}" for i in s) for s in r["minimal_nonfaces"]))
        lines.append("  " + "; ".join(r["generators"]))
        lines.append("  total chern class: " + ", ".join(
            f"c{c['degree']} = {c['expr']}" for c in r["total_chern_class"]))
    if cmd in ("chern", "report") and data.get("chern"):
        c = data["chern"]
        lines.append(f"vertex signs (orientation {c['orientation']:+d}): " + ", ".join(
            f"{_fmt_facets(fs)}={s}" for fs, s in zip(model.polytope.vertex_facets, c["sigma"])))
        lines.append(f"top chern number: {c['top_chern']}")
        flag = "yes" if c["almost_complex_necessary"] else "no"
        if c["almost_complex_orientation"] is not None:
            flag += f" (orientation {c['almost_complex_orientation']:+d})"
        lines.append(f"all vertex signs positive: {flag}")
    if cmd in ("index", "report") and data.get("index"):
        i = data["index"]
        lines.append(f"vertex indices: {i['indices']}" if "indices" in i
                     else f"vertex indices: {i['error']}")
    if cmd in ("chen-ruan", "report"):
        cr = data["chen_ruan"]
        for s in cr["sectors"]:
            lines.append(f"sector on {_fmt_facets(s['facets'])}: q = ({', '.join(s['q'])}), "
                         f"shift {s['shift']}")
        lines.append("chen-ruan betti: " + ", ".join(f"{d}: {b}" for d, b in cr["table"].items()))
    if cmd == "equiv":
        if data["equivalent"]:
            lines.append(f"equivalent: theta = {data['theta']}, signs = {data['signs']}")
        else:
            lines.append("not equivalent")
    return "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qtorb", description="Invariants of quasitoric orbifolds")
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("file")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--max-degree", type=int, default=None)
    ap.add_argument("--orientation", choices=("+1", "-1", "1"), default=None)
    ap.add_argument("--allow-sign-flips", action="store_true")
    ap.add_argument("--other", help="second model file for `equiv`")
    return ap


def compute(cmd, model, R, orientation, name="", max_degree=None, other=None,
            allow_sign_flips=False) -> dict:
    if cmd == "report":
        return report(model, R, orientation, name, max_degree)
    data = {"name": name}
    if cmd == "validate":
        data.update(validate_section(model))
    elif cmd == "pi1":
        data["pi1"] = pi1_section(model)
    elif cmd == "cover":
        data["cover"] = cover_section(model)
    elif cmd == "quotient":
        data.update(quotient_section(model))
    elif cmd == "betti":
        data.update(betti_section(model))
    elif cmd == "ring":
        data["ring"] = ring_section(model, cohomology.cohomology_ring(model), max_degree)
    elif cmd == "chern":
        data["chern"] = chern_section(model, R, orientation)
    elif cmd == "index":
        data["index"] = index_section(model, R)
    elif cmd == "chen-ruan":
        data["chen_ruan"] = chen_ruan_section(model)
    elif cmd == "equiv":
        found = mdl.model_equivalent(model, other, allow_sign_flips)
        data["equivalent"] = found is not None
        data["theta"] = found[0].to_rows() if found else None
        data["signs"] = found[1] if found else None
    return data


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)

    def fail(code, kind, msg):
        if args.format == "json":
            print(json.dumps({"error": kind, "message": msg}), file=out)
        print(f"qtorb: {kind} error: {msg}", file=err)
        return code

    try:
        mf = load_model_file(args.file)
        model, R, orientation = build_from_file(mf)
        if args.orientation is not None:
            orientation = int(args.orientation)
        other = None
        if args.subcommand == "equiv":
            if not args.other:
                return fail(EXIT_INVALID, "usage", "equiv needs --other FILE")
            other = parse_model(args.other)[0]
        data = compute(args.subcommand, model, R, orientation, mf.name, args.max_degree,
                       other, args.allow_sign_flips)
    except ModelFileError as exc:
        return fail(EXIT_INVALID, exc.kind, str(exc))
    except MissingRealization as exc:
        return fail(EXIT_NO_REALIZATION, "realization", str(exc))
    except GenericityError as exc:
        return fail(EXIT_INVALID, "genericity", str(exc))
    except (PolytopeError, mdl.ModelError) as exc:
        return fail(EXIT_INVALID, "validation", str(exc))
    except CohomologyConsistencyError as exc:
        return fail(EXIT_INTERNAL, "consistency", str(exc))

    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True), file=out)
    else:
        print(_text(args.subcommand, data, model), file=out)
    return EXIT_OK


def main():
    sys.exit(run())


__all__ = ["compute", "main", "model_to_dict", "report", "run"]
