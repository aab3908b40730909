"""Command-line interface: ``gpdcoset <command> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import Iterable

from .action import cauchy_frobenius_check
from .builder import ExpressionError, build, gen_random
from .coset import double_coset_size_corrected, double_coset_size_formula, double_cosets, left_cosets, x_hk_action
from .groupoid import (FiniteGroupoid, GroupoidError, connected_components, index,
                       iso_subgroupoid, validate)
from .linrep import (char_inner_product, char_inner_product_componentwise, character,
                     nat_space_dim, permutation_rep, trivial_rep)
from .scalars import format_scalar
from .textio import (ParseError, ValidationError, load_groupoid,
                     parse_gset, parse_groupoid, parse_subgroupoid, read_text,
                     serialize_groupoid, serialize_subgroupoid)
from .verify import parse_corpus, subgroupoid_from_spec, verify_instance


class Output:
    """Text lines or JSON records, chosen by ``--format``."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, line: str, **record):
        if self.fmt == "records":
            self.stream.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            self.stream.write(line + "\n")


def load_groupoid_arg(arg: str, check: bool = True) -> FiniteGroupoid:
    """A file path when one exists, otherwise a builder expression."""
    if os.path.isfile(arg):
        return parse_groupoid(read_text(arg), arg, check=check)
    return build(arg, load_groupoid)


def load_sub_file(path: str, parent: FiniteGroupoid):
    return parse_subgroupoid(read_text(path), parent, path)


def sub_arg(G: FiniteGroupoid, spec: str):
    return subgroupoid_from_spec(G, spec, load_sub_file)


def _q(v) -> str:
    return format_scalar(v)


# --- commands -----------------------------------------------------------------

def cmd_validate(args, out: Output) -> int:
    G = load_groupoid_arg(args.groupoid, check=False)
    bad = validate(G)
    for v in bad:
        out.emit(f"violation {v}", kind="violation", axiom=v.axiom,
                 witness=list(v.witness), detail=v.detail)
    out.emit("valid" if not bad else f"invalid ({len(bad)} violations)",
             kind="summary", valid=not bad, violations=len(bad))
    return 1 if bad else 0


def cmd_info(args, out: Output) -> int:
    G = load_groupoid_arg(args.groupoid)
    comps = connected_components(G)
    iso = iso_subgroupoid(G)
    out.emit(f"objects = {G.object_count}", kind="info", key="objects", value=G.object_count)
    out.emit(f"morphisms = {G.morphism_count}", kind="info", key="morphisms", value=G.morphism_count)
    out.emit(f"components = {len(comps)}", kind="info", key="components", value=len(comps))
    out.emit(f"iso bundle morphisms = {len(iso.morphisms)}", kind="info",
             key="iso_bundle_morphisms", value=len(iso.morphisms))
    for x in G.objects:
        order = len(G.hom(x, x))
        out.emit(f"isotropy {x}: order {order}", kind="isotropy", object=x, order=order)
    return 0


def cmd_components(args, out: Output) -> int:
    G = load_groupoid_arg(args.groupoid)
    for i, c in enumerate(connected_components(G).components):
        objs = sorted(c.objects)
        out.emit(f"component {i}: " + " ".join(map(str, objs)), kind="component",
                 index=i, objects=objs, morphisms=len(c.morphisms))
    return 0


def cmd_index(args, out: Output) -> int:
    G = load_groupoid_arg(args.groupoid)
    r = index(G, sub_arg(G, args.h))
    ok = r.formula == r.index
    out.emit(f"index = {r.index}", kind="index", index=r.index, per_object=list(r.per_object))
    out.emit(f"formula = {r.formula_text()} = {_q(r.formula)}", kind="formula",
             text=r.formula_text(), value=_q(r.formula), agrees=ok)
    return 0 if ok else 1


def _resolve_gset(args, G):
    if args.gset:
        return parse_gset(read_text(args.gset), G, args.gset), f"gset {args.gset}"
    if args.h and args.k:
        H, K = sub_arg(G, args.h), sub_arg(G, args.k)
        return x_hk_action(G, H, K).gset, "X_HK"
    if args.h:
        return left_cosets(G, sub_arg(G, args.h)), "G/H"
    raise ValueError("cf needs --gset, --h, or both --h and --k")


def cmd_cf(args, out: Output) -> int:
    G = load_groupoid_arg(args.groupoid)
    X, what = _resolve_gset(args, G)
    rep = cauchy_frobenius_check(X)
    out.emit(f"orbits = {rep.orbits}", kind="cf", key="orbits", value=rep.orbits, gset=what)
    out.emit(f"fixed-point average = {_q(rep.cf)}", kind="cf", key="cf", value=_q(rep.cf))
    out.emit(f"fixed-point average (per component) = {_q(rep.cf_componentwise)}",
             kind="cf", key="cf_componentwise", value=_q(rep.cf_componentwise))
    return 0


def cmd_double_cosets(args, out: Output) -> int:
    G = load_groupoid_arg(args.groupoid)
    H, K = sub_arg(G, args.h), sub_arg(G, args.k)
    part = double_cosets(G, H, K)
    out.emit(f"double cosets = {len(part)}", kind="count", value=len(part))
    for b in part.blocks:
        g = b[0]
        lit = double_coset_size_formula(G, H, K, g)
        cor = double_coset_size_corrected(G, H, K, g)
        out.emit(f"block {g}: " + " ".join(map(str, b)) + f"  (size {len(b)}, formula {lit}, corrected {cor})",
                 kind="block", representative=g, members=list(b), size=len(b),
                 formula=lit, corrected=cor)
    return 0


def cmd_characters(args, out: Output) -> int:
    G = load_groupoid_arg(args.groupoid)
    reps = {"Tri": trivial_rep(G)}
    if args.h:
        reps["C[G/H]"] = permutation_rep(left_cosets(G, sub_arg(G, args.h)))
    if args.k:
        reps["C[G/K]"] = permutation_rep(left_cosets(G, sub_arg(G, args.k)))
    for name, R in reps.items():
        chi = character(R)
        for g in G.morphisms:
            if G.is_endo(g):
                out.emit(f"chi_{name}({g}) = {_q(chi[g])}", kind="character", rep=name,
                         morphism=g, value=_q(chi[g]))
    names = list(reps)
    for i, a in enumerate(names):
        for b in names[i:]:
            ip = char_inner_product(reps[a], reps[b])
            ipc = char_inner_product_componentwise(reps[a], reps[b])
            d = nat_space_dim(reps[a], reps[b])
            out.emit(f"<{a},{b}> = {_q(ip)}  per-component = {_q(ipc)}  intertwiners = {d}",
                     kind="pairing", left=a, right=b, inner_product=_q(ip),
                     inner_product_componentwise=_q(ipc), nat_dim=d)
    return 0


def default_corpus_path() -> str:
    return str(resources.files("gpdcoset") / "data" / "corpus.txt")


def cmd_verify(args, out: Output) -> int:
    if args.corpus is not None:
        path = args.corpus or default_corpus_path()
        entries = parse_corpus(read_text(path), os.path.dirname(path), load_groupoid, load_sub_file)
        jobs = [(e.groupoid, e.h, e.k, e.label) for e in entries]
    else:
        if not (args.groupoid and args.h and args.k):
            raise ValueError("verify needs a groupoid with --h and --k, or --corpus")
        G = load_groupoid_arg(args.groupoid)
        H, K = sub_arg(G, args.h), sub_arg(G, args.k)
        jobs = [(G, H, K, f"{args.groupoid} {args.h} {args.k}")]
    for _, H, K, label in jobs:
        if not (H.wide and K.wide):
            raise GroupoidError(f"{label}: H and K must be wide")
    failed = 0
    total = 0
    for G, H, K, label in jobs:
        for row in verify_instance(G, H, K, label):
            total += 1
            failed += not row.ok
            if row.ok and args.failures_only:
                continue
            out.emit(f"{row.status:4} {row.check}  [{row.instance}]  expected={row.expected} actual={row.actual}",
                     kind="row", **row.as_record())
    out.emit(f"{total - failed}/{total} checks OK", kind="summary", total=total, failed=failed)
    return 1 if failed else 0


def cmd_gen(args, out: Output) -> int:
    inst = gen_random(args.seed, args.max_objects, args.max_group_order)
    text = serialize_groupoid(inst.groupoid)
    h_spec = "closure:" + ",".join(map(str, inst.h_seeds))
    k_spec = "closure:" + ",".join(map(str, inst.k_seeds))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "G.gpd"), "w", encoding="utf-8") as f:
            f.write(text)
        for name, S in (("H.sub", inst.h), ("K.sub", inst.k)):
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as f:
                f.write(serialize_subgroupoid(S, "G.gpd"))
    if out.fmt == "records":
        out.emit("", kind="instance", seed=args.seed, expression=inst.expression,
                 h=h_spec, k=k_spec, groupoid=text)
    else:
        out.stream.write(f"# expression: {inst.expression}\n# h: {h_spec}\n# k: {k_spec}\n{text}")
    return 0


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="sub_format", choices=("text", "records"),
                        help="plain text or JSON lines")
    common.add_argument("--seed", dest="sub_seed", type=int, help="random seed (gen)")

    p = argparse.ArgumentParser(prog="gpdcoset",
                                description="Finite groupoids, double cosets and their counting identities.")
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="plain text or JSON lines")
    p.add_argument("--seed", type=int, default=0, help="random seed (gen)")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_, groupoid=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if groupoid:
            sp.add_argument("groupoid", help="groupoid file or builder expression, e.g. 'product(sym(3),pair(2))'")
        sp.set_defaults(func=func)
        return sp

    cmd("validate", cmd_validate, "check the groupoid axioms")
    cmd("info", cmd_info, "object, morphism and isotropy counts")
    cmd("components", cmd_components, "connected components")
    cmd("index", cmd_index, "index of a wide subgroupoid").add_argument("--h", required=True)
    sp = cmd("cf", cmd_cf, "orbit count against the fixed-point average")
    sp.add_argument("--gset", help="G-set file")
    sp.add_argument("--h", help="use G/H, or X_HK together with --k")
    sp.add_argument("--k")
    sp = cmd("double-cosets", cmd_double_cosets, "list the blocks of H\\G/K")
    sp.add_argument("--h", required=True)
    sp.add_argument("--k", required=True)
    sp = cmd("characters", cmd_characters, "characters and their pairings")
    sp.add_argument("--h")
    sp.add_argument("--k")
    sp = sub.add_parser("verify", parents=[common], help="run every identity on an instance or a corpus")
    sp.add_argument("groupoid", nargs="?")
    sp.add_argument("--h")
    sp.add_argument("--k")
    sp.add_argument("--corpus", nargs="?", const="", default=None,
                    help="corpus file (the shipped corpus when no path is given)")
    sp.add_argument("--failures-only", action="store_true", help="print only failing rows")
    sp.set_defaults(func=cmd_verify)
    sp = cmd("gen", cmd_gen, "seeded random instance", groupoid=False)
    sp.add_argument("--max-objects", type=int, default=4)
    sp.add_argument("--max-group-order", type=int, default=6)
    sp.add_argument("--out", help="directory for G.gpd, H.sub and K.sub")
    return p


INPUT_ERRORS = (ParseError, ValidationError, ExpressionError, GroupoidError, OSError, ValueError,
                IndexError, KeyError)


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    if args.sub_format is not None:
        args.format = args.sub_format
    if args.sub_seed is not None:
        args.seed = args.sub_seed
    out = Output(args.format)
    try:
        return args.func(args, out)
    except INPUT_ERRORS as e:
        msg = str(e) if not isinstance(e, KeyError) else f"unknown index {e}"
        print(f"gpdcoset: error: {msg}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
