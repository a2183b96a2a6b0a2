"""Command line front end.

Exit codes: 0 success, 2 usage error, 3 resource limit, 4 violated relation,
route disagreement or failed internal check.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cob import is_extendable, parse_surface
from .cohom import DEFAULT_MAX_ORDER, h2
from .errors import InvariantError, ResourceLimitError, UsageError, Z2SchurError
from .f2la import to_bitstring
from .grp import (
    DEFAULT_COSET_LIMIT,
    abelian_names,
    abelianization_mod2,
    catalog,
    catalog_presentations,
    from_permutations,
    from_presentation,
    involutions,
    parse_presentation,
    read_permutations,
)
from .hopf import DEFAULT_COVER_LIMIT, hopf_multiplier
from .mult import bogomolov
from .relcalc import DEFAULT_SAMPLES, all_relations, check_relation, check_relations, conjectured_relation, coordinates, parse_word

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_VIOLATION = 0, 2, 3, 4

COMMANDS = ("group", "schur", "bogomolov", "hopf", "word-class", "extendable", "verify-relations", "catalog")


def catalog_names(max_order: int = 64) -> list[str]:
    names = [f"cyclic:{n}" for n in range(1, 17)]
    names += [f"dihedral:{n}" for n in range(1, 17) if 2 * n <= max_order]
    names += [f"symmetric:{n}" for n in range(1, 6)]
    names += ["quaternion:8", "klein4"]
    names += [n for n in abelian_names(min(32, max_order)) if n.count("x")]
    if max_order >= 64:
        names.append("smallgroup:64:182")
    return names


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="z2schur", description="Unoriented Schur and Bogomolov multipliers of finite groups.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--group", help="catalog name, e.g. dihedral:4 or smallgroup:64:182")
    src.add_argument("--presentation", metavar="FILE", help="presentation file (gens:/rel: lines)")
    src.add_argument("--perms", metavar="FILE", help="permutation generators, one per line")
    p.add_argument("--surface", metavar="SPEC", help='e.g. "orientable g=1 pairs=(a,b)"')
    p.add_argument("--word", metavar="SPEC", help='e.g. "O[a,c] O[ab,c]"')
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None, help="sampled instances per relation for groups above order 16")
    p.add_argument("--coset-limit", type=int, default=DEFAULT_COSET_LIMIT)
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p.add_argument("--cover-limit", type=int, default=DEFAULT_COVER_LIMIT)
    return p


def _load_group(args):
    if args.group:
        G = catalog(args.group, coset_limit=args.coset_limit)
        return G, catalog_presentations(args.group)
    if args.presentation:
        pres = parse_presentation(_read(args.presentation))
        G = from_presentation(pres, coset_limit=args.coset_limit, name=Path(args.presentation).name)
        return G, [pres]
    if args.perms:
        gens = read_permutations(_read(args.perms))
        G = from_permutations(gens, name=Path(args.perms).name, max_order=max(args.max_order, 1))
        return G, []
    raise UsageError("give one of --group, --presentation, --perms")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _check_size(G, args) -> None:
    if G.order > args.max_order:
        raise ResourceLimitError(f"group order {G.order} exceeds --max-order {args.max_order}")


def cmd_group(args):
    G, pres = _load_group(args)
    out = {
        "group": G.name,
        "order": G.order,
        "generators": [f"{n}={G.label(g)}" for n, g in zip(G.gen_names, G.gens)],
        "presentations": len(pres),
        "involutions": len(involutions(G)) if G.table is not None else None,
        "abelianization_mod2": abelianization_mod2(G) if G.table is not None else None,
    }
    return out, EXIT_OK


def cmd_schur(args):
    G, _ = _load_group(args)
    _check_size(G, args)
    B = h2(G, max_order=args.max_order)
    return {
        "group": G.name,
        "order": G.order,
        "dim_h2": B.dim,
        "dim_z2": B.z2.rank,
        "dim_b2": B.b2.rank,
    }, EXIT_OK


def cmd_bogomolov(args):
    G, _ = _load_group(args)
    _check_size(G, args)
    rep = bogomolov(G, h2(G, max_order=args.max_order))
    return rep.to_json(), EXIT_OK if rep.routes_agree else EXIT_VIOLATION


def cmd_hopf(args):
    G, pres = _load_group(args)
    if not pres:
        raise UsageError("the hopf route needs a presentation (use --group or --presentation)")
    results = []
    for p in pres:
        r = hopf_multiplier(p, coset_limit=args.coset_limit, cover_limit=args.cover_limit)
        results.append({
            "presentation": p.to_text().strip().replace("\n", "; "),
            "dim": r.dim,
            "method": r.method,
            "dim_r0": r.dim_r0,
            "cover_order": r.cover_order,
            "linear_dim": r.linear_dim,
            "generator_words": r.generator_words,
        })
    dims = {r["dim"] for r in results} | {r["linear_dim"] for r in results}
    out = {"group": G.name, "hopf": results}
    agree = len(dims) == 1
    if G.order <= args.max_order:
        dim_h2 = h2(G, max_order=args.max_order).dim
        out["dim_h2"] = dim_h2
        agree = agree and dims == {dim_h2}
    out["routes_agree"] = agree
    return out, EXIT_OK if agree else EXIT_VIOLATION


def cmd_word_class(args):
    G, _ = _load_group(args)
    _check_size(G, args)
    if not args.word:
        raise UsageError("word-class needs --word")
    w = parse_word(G, args.word)
    img = w.canonical_image()
    if img != 0:
        raise UsageError(f"word maps to {G.label(img)}, not to the identity")
    rep = bogomolov(G, h2(G, max_order=args.max_order))
    m = coordinates(w, rep.basis)
    b0 = rep.pair(m)
    out = {
        "group": G.name,
        "word": str(w),
        "m_coordinates": to_bitstring(m, rep.dim_h2),
        "trivial_in_M": m == 0,
        "b0_coordinates": to_bitstring(b0, rep.dim_b0),
        "trivial_in_B0": b0 == 0,
        "routes_agree": rep.routes_agree,
    }
    return out, EXIT_OK if rep.routes_agree else EXIT_VIOLATION


def cmd_extendable(args):
    G, _ = _load_group(args)
    _check_size(G, args)
    if not args.surface:
        raise UsageError("extendable needs --surface")
    try:
        s = parse_surface(G, args.surface)
    except InvariantError as exc:
        raise UsageError(str(exc)) from exc
    rep = bogomolov(G, h2(G, max_order=args.max_order))
    v = is_extendable(s, rep)
    out = {"group": G.name, "surface": str(s), **v.to_json(), "routes_agree": rep.routes_agree}
    return out, EXIT_OK if rep.routes_agree else EXIT_VIOLATION


def cmd_verify_relations(args):
    G, _ = _load_group(args)
    _check_size(G, args)
    B = h2(G, max_order=args.max_order)
    samples = args.samples
    if samples is None and G.order > 16:
        samples = DEFAULT_SAMPLES
    checks = check_relations(G, all_relations(), B, samples=samples, seed=args.seed)
    exp = check_relation(conjectured_relation(), G, B, samples=samples, seed=args.seed)
    failed = [c.name for c in checks if not c.ok]
    out = {
        "group": G.name,
        "seed": args.seed,
        "relations": [
            {"name": c.name, "family": c.family, "instances": c.instances, "exhaustive": c.exhaustive,
             "image_failures": c.image_failures, "extension_failures": c.extension_failures}
            for c in checks
        ],
        "total_instances": sum(c.instances for c in checks),
        "failed": failed,
        "experimental": {"name": exp.name, "instances": exp.instances, "holds": exp.ok},
    }
    return out, EXIT_VIOLATION if failed else EXIT_OK


def cmd_catalog(args):
    rows = []
    for name in catalog_names(args.max_order):
        rows.append({"name": name, "presentations": len(catalog_presentations(name))})
    return {"groups": rows}, EXIT_OK


HANDLERS = {
    "group": cmd_group,
    "schur": cmd_schur,
    "bogomolov": cmd_bogomolov,
    "hopf": cmd_hopf,
    "word-class": cmd_word_class,
    "extendable": cmd_extendable,
    "verify-relations": cmd_verify_relations,
    "catalog": cmd_catalog,
}


def _text(obj, indent: str = "") -> list[str]:
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines += _text(v, indent + "  ")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                lines.append(f"{indent}  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        elif isinstance(v, list):
            lines.append(f"{indent}{k}: " + (", ".join(str(x) for x in v) if v else "(none)"))
        else:
            lines.append(f"{indent}{k}: {v}")
    return lines


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except Z2SchurError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    if args.format == "json":
        stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        stdout.write("\n".join(_text(out)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
