"""Command-line interface.

Exit codes: 0 success (or positive verdict), 1 negative verdict, 2 input
error, 3 cap exceeded.  JSON output is the stable contract (sorted keys,
deterministic order); the text format is human-oriented and unstable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebras import FiniteAlgebra
from .category import (
    SemiinnerAutomorphismData,
    alpha,
    duality_roundtrip,
    export_category,
)
from .config import Config, load_config
from .equivalence import (
    EmbeddingCertificate,
    cross_validate_equivalence,
    geometrically_equivalent,
)
from .errors import CapExceeded, UagError
from .fields import FieldAutomorphism, automorphism_group, finite_field
from .files import (
    read_algebra,
    read_palgebra,
    read_system,
    write_palgebra,
)
from .geometry import UniverseBound, closure_on_universe, lattice, solution_set
from .palgebra import NCPoly, almost_equivalent, compile_algebra, mirror, opposite, twist
from .terms import print_term

__all__ = ["main"]


def _emit(doc, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_as_text(doc) + "\n")


def _as_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        return "\n".join(f"{pad}{k}: " + ("\n" + _as_text(v, indent + 1) if isinstance(v, (dict, list)) else str(v))
                         for k, v in sorted(doc.items()))
    if isinstance(doc, list):
        return "\n".join(f"{pad}- " + (("\n" + _as_text(v, indent + 1)) if isinstance(v, (dict, list)) else str(v))
                         for v in doc)
    return f"{pad}{doc}"


def _sigma_of(spec: str, field) -> FieldAutomorphism:
    auts = automorphism_group(field)
    if spec == "id":
        return auts[0]
    if spec == "frob":
        return auts[1 % len(auts)]
    if spec.startswith("frob^"):
        return auts[int(spec[5:]) % len(auts)]
    return auts[int(spec) % len(auts)]


def _side_doc(side) -> dict:
    if isinstance(side, EmbeddingCertificate):
        return {"type": "certificate", "exponent": side.exponent, "homs": [list(h) for h in side.homs]}
    return {"type": "counterexample", "pair": list(side.pair)}


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_solve(args, cfg: Config) -> int:
    algebra = read_algebra(args.algebra)
    system = read_system(args.system, algebra.signature)
    aset = solution_set(system, algebra, cfg.assignment_cap)
    doc = {
        "algebra": algebra.name,
        "vars": list(system.vars),
        "solutions": aset.points.as_lists(),
        "count": len(aset.points),
    }
    _emit(doc, args.format or cfg.format)
    return 0


def _cmd_closure(args, cfg: Config) -> int:
    algebra = read_algebra(args.algebra)
    system = read_system(args.system, algebra.signature)
    bound = UniverseBound(args.depth or cfg.depth, max(cfg.max_vars, len(system.vars)),
                          args.max_pairs or cfg.max_pairs)
    pairs = closure_on_universe(system, algebra, bound, cfg.assignment_cap)
    sig = algebra.signature
    doc = {
        "algebra": algebra.name,
        "bound": bound.as_dict(),
        "pairs": [[print_term(e.lhs, sig), print_term(e.rhs, sig)] for e in pairs],
    }
    _emit(doc, args.format or cfg.format)
    return 0


def _cmd_lattice(args, cfg: Config) -> int:
    algebra = read_algebra(args.algebra)
    vars = tuple(args.vars)
    lat = lattice(vars, algebra, point_cap=cfg.lattice_point_cap, clone_cap=cfg.clone_cap)
    fmt = args.format or cfg.format
    edges = lat.covering_edges()
    if fmt == "dot":
        lines = ["digraph lattice {"]
        for i in range(len(lat)):
            lines.append(f'  n{i} [label="{lat.points_of(i)}"];')
        for i, j in edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        sys.stdout.write("\n".join(lines) + "\n")
        return 0
    doc = {
        "algebra": algebra.name,
        "vars": list(vars),
        "nodes": [{"id": i, "points": [list(v) for v in lat.points_of(i)]} for i in range(len(lat))],
        "edges": [list(e) for e in edges],
    }
    _emit(doc, fmt)
    return 0


def _cmd_equiv(args, cfg: Config) -> int:
    h1 = read_algebra(args.algebra1)
    h2 = read_algebra(args.algebra2)
    verdict = geometrically_equivalent(h1, h2, cfg.hom_cap)
    doc = {
        "algebras": [h1.name, h2.name],
        "equivalent": verdict.equivalent,
        "forward": _side_doc(verdict.forward),
        "backward": _side_doc(verdict.backward),
    }
    if args.cross_validate:
        bound = UniverseBound(args.depth or cfg.depth, args.vars or cfg.max_vars, cfg.max_pairs)
        rep = cross_validate_equivalence(h1, h2, bound, cfg.system_size, cfg.assignment_cap)
        sig = h1.signature
        doc["cross_validation"] = {
            "agree": rep.agree,
            "systems_checked": rep.systems_checked,
            "pairs_checked": rep.pairs_checked,
            "bound": rep.bound.as_dict(),
            "distinguishing": None
            if rep.distinguishing is None
            else {
                "system": [[print_term(e.lhs, sig), print_term(e.rhs, sig)] for e in rep.distinguishing[0].equations],
                "vars": list(rep.distinguishing[0].vars),
                "pair": [print_term(rep.distinguishing[1].lhs, sig), print_term(rep.distinguishing[1].rhs, sig)],
            },
        }
    _emit(doc, args.format or cfg.format)
    return 0 if verdict.equivalent else 1


def _cmd_twist(args, cfg: Config) -> int:
    a = read_palgebra(args.palgebra)
    sigma = _sigma_of(args.sigma, a.base)
    out = write_palgebra(twist(a, sigma))
    if args.output:
        open(args.output, "w").write(out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_opposite(args, cfg: Config) -> int:
    a = read_palgebra(args.palgebra)
    out = write_palgebra(opposite(a))
    if args.output:
        open(args.output, "w").write(out)
    else:
        sys.stdout.write(out)
    return 0


def _parse_poly(text: str, base) -> NCPoly:
    monomials = []
    for chunk in text.split("+"):
        coeff = 1
        word = []
        toks = chunk.split()
        if not toks:
            raise UagError("empty monomial")
        for i, tok in enumerate(toks):
            if tok.startswith("x"):
                word.append(int(tok[1:]))
            else:
                if i != 0:
                    raise UagError(f"coefficient {tok!r} must lead its monomial")
                coeff = int(tok)
        monomials.append((coeff % base.q, tuple(word)))
    return NCPoly(base, tuple(monomials))


def _format_poly(p: NCPoly) -> str:
    if not p.monomials:
        return "0"
    chunks = []
    for coeff, word in p.monomials:
        toks = ([str(coeff)] if (coeff != 1 or not word) else []) + [f"x{i}" for i in word]
        chunks.append(" ".join(toks))
    return " + ".join(chunks)


def _cmd_mirror(args, cfg: Config) -> int:
    base = finite_field(args.field)
    poly = _parse_poly(args.poly, base)
    _emit({"input": _format_poly(poly), "mirror": _format_poly(mirror(poly))}, args.format or cfg.format)
    return 0


def _cmd_aequiv(args, cfg: Config) -> int:
    a1 = read_palgebra(args.palgebra1)
    a2 = read_palgebra(args.palgebra2)
    verdict = almost_equivalent(a1, a2, cfg.compile_cap, cfg.hom_cap)
    doc = {
        "algebras": [a1.name, a2.name],
        "equivalent": verdict.equivalent,
        "sigma": None if verdict.sigma is None else verdict.sigma.name,
        "opposite_used": verdict.opposite_used,
    }
    _emit(doc, args.format or cfg.format)
    return 0 if verdict.equivalent else 1


def _cmd_category_export(args, cfg: Config) -> int:
    algebra = read_algebra(args.algebra)
    graph = export_category(list(range(1, args.max_vars + 1)), algebra, args.depth,
                            point_cap=cfg.lattice_point_cap)
    fmt = args.format or cfg.format
    if fmt == "dot":
        sys.stdout.write(graph.to_dot() + "\n")
    else:
        sys.stdout.write(graph.to_json() + "\n")
    return 0


def _cmd_category_alpha(args, cfg: Config) -> int:
    a = read_palgebra(args.palgebra)
    sigma = _sigma_of(args.sigma, a.base)
    h1 = compile_algebra(a, cfg.compile_cap)
    h2 = compile_algebra(twist(a, sigma), cfg.compile_cap)
    system = read_system(args.system, h1.signature)
    entry = alpha(SemiinnerAutomorphismData(sigma), system.vars, system, h1, h2,
                  cfg.bound(), cfg.seed, cfg.assignment_cap)
    sig = h1.signature
    doc = {
        "sigma": sigma.name,
        "vars": list(system.vars),
        "source_system": [[print_term(e.lhs, sig), print_term(e.rhs, sig)] for e in system.equations],
        "image_system": [[print_term(e.lhs, sig), print_term(e.rhs, sig)] for e in entry.image_system.equations],
        "transport_agrees": entry.transport_agrees,
        "tau_formula_agrees": entry.tau_formula_agrees,
        "pairs_checked": entry.pairs_checked,
    }
    _emit(doc, args.format or cfg.format)
    return 0 if entry.transport_agrees and entry.tau_formula_agrees else 1


def _cmd_category_duality(args, cfg: Config) -> int:
    algebra = read_algebra(args.algebra)
    system = read_system(args.system, algebra.signature)
    aset = solution_set(system, algebra, cfg.assignment_cap)
    rep = duality_roundtrip(system.vars, aset, algebra, cfg.bound(), cfg.assignment_cap)
    doc = {
        "algebra": algebra.name,
        "roundtrip_exact": rep.roundtrip_exact,
        "window_agrees": rep.window_agrees,
        "quotient_size": rep.quotient_size,
        "fingerprint": rep.fingerprint,
    }
    _emit(doc, args.format or cfg.format)
    return 0 if rep.roundtrip_exact else 1


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="uag", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file (falls back to $UAG_CONFIG)")
        p.add_argument("--format", choices=("json", "text", "dot"), default=None)
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("solve", help="solution set of an equation system")
    p.add_argument("algebra")
    p.add_argument("system")
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("closure", help="double-closure window of a system")
    p.add_argument("algebra")
    p.add_argument("system")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--max-pairs", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("lattice", help="lattice of algebraic sets")
    p.add_argument("algebra")
    p.add_argument("--vars", nargs="+", required=True)
    common(p)
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("equiv", help="decide geometric equivalence")
    p.add_argument("algebra1")
    p.add_argument("algebra2")
    p.add_argument("--cross-validate", action="store_true")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--vars", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("twist", help="twist a structure algebra by a field automorphism")
    p.add_argument("palgebra")
    p.add_argument("--sigma", required=True, help="id, frob, frob^k, or an integer power")
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=_cmd_twist)

    p = sub.add_parser("opposite", help="opposite of an associative structure algebra")
    p.add_argument("palgebra")
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=_cmd_opposite)

    p = sub.add_parser("mirror", help="mirror of a noncommutative polynomial")
    p.add_argument("poly")
    p.add_argument("--field", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_mirror)

    p = sub.add_parser("aequiv", help="almost geometric equivalence of structure algebras")
    p.add_argument("palgebra1")
    p.add_argument("palgebra2")
    common(p)
    p.set_defaults(func=_cmd_aequiv)

    cat = sub.add_parser("category", help="category-level exports and checks")
    csub = cat.add_subparsers(dest="subcommand", required=True)

    p = csub.add_parser("export", help="object/morphism graph")
    p.add_argument("algebra")
    p.add_argument("--max-vars", type=int, default=1)
    p.add_argument("--depth", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_category_export)

    p = csub.add_parser("alpha", help="transport a closed congruence along a twist")
    p.add_argument("palgebra")
    p.add_argument("system")
    p.add_argument("--sigma", required=True)
    common(p)
    p.set_defaults(func=_cmd_category_alpha)

    p = csub.add_parser("duality", help="(X,A) <-> W/A' roundtrip report")
    p.add_argument("algebra")
    p.add_argument("system")
    common(p)
    p.set_defaults(func=_cmd_category_duality)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        return args.func(args, cfg)
    except CapExceeded as err:
        sys.stderr.write(f"error: {err}\n")
        return 3
    except (UagError, OSError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
