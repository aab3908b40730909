"""Run every counting identity on one instance ``(G, H, K)`` and report.

Each identity appears in its literal form.  Where the literal form fails on
some groupoids, a second row with the ``/corrected`` or ``/componentwise``
suffix checks the repaired statement, so a report shows both.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .action import cauchy_frobenius_check, orbit_stabilizer_check, orbits
from .builder import build, gen_random
from .coset import (comma_component_count, comma_iso_check, double_cosets, left_cosets,
                    size_formula_check, x_hk_action)
from .fnspace import invariant_function_space, st_check, theta_iso_check, ts_check, y_rep
from .groupoid import (FiniteGroupoid, NotWideError, Subgroupoid, closure, connected_components,
                       discrete, index, iso_subgroupoid, is_connected, structure_decomposition,
                       validate, whole)
from .linrep import (char_inner_product, char_inner_product_componentwise, character,
                     induce_rep, induced_coset_bijection, nat_space_dim, permutation_rep,
                     trivial_rep, validate_rep)
from .scalars import format_scalar


@dataclass(frozen=True)
class Row:
    check: str
    instance: str
    expected: str
    actual: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    @property
    def status(self) -> str:
        return "OK" if self.ok else "FAIL"

    def as_record(self) -> dict:
        return {"check": self.check, "instance": self.instance, "expected": self.expected,
                "actual": self.actual, "status": self.status}


def _s(v) -> str:
    if isinstance(v, (Fraction, int)) or hasattr(v, "im"):
        return format_scalar(v)
    return str(v)


def subgroupoid_from_spec(G: FiniteGroupoid, spec: str,
                          loader: Callable[[str, FiniteGroupoid], Subgroupoid] | None = None) -> Subgroupoid:
    """``discrete``, ``full``, ``iso``, ``closure:a,b,...`` (wide closure)
    or a subgroupoid file path handled by ``loader``."""
    if spec == "discrete":
        return discrete(G)
    if spec == "full":
        return whole(G)
    if spec == "iso":
        return iso_subgroupoid(G)
    if spec.startswith("closure:"):
        body = spec[len("closure:"):]
        seeds = [int(t) for t in body.split(",") if t.strip()] if body else []
        return closure(G, seeds, make_wide=True)
    if loader is None:
        raise ValueError(f"unknown subgroupoid spec {spec!r}")
    return loader(spec, G)


def verify_instance(G: FiniteGroupoid, H: Subgroupoid, K: Subgroupoid, label: str) -> list[Row]:
    if not (H.wide and K.wide):
        raise NotWideError("verification needs wide H and K")
    rows: list[Row] = []

    def add(check, expected, actual):
        rows.append(Row(check, label, _s(expected), _s(actual)))

    add("groupoid-axioms", 0, len(validate(G)))

    comps = connected_components(G)
    bad = 0
    for c in comps.components:
        sub = c.as_groupoid()
        bad += len(structure_decomposition(sub, 0).check())
    add("structure-decomposition", 0, bad)
    if is_connected(G):
        for name, S in (("H", H), ("K", K)):
            r = index(G, S)
            add(f"index-formula[{name}]", r.index, r.formula)

    LH, LK = left_cosets(G, H), left_cosets(G, K)
    X = x_hk_action(G, H, K)
    for name, Xs in (("G/H", LH), ("X_HK", X.gset)):
        rep = cauchy_frobenius_check(Xs)
        add(f"cauchy-frobenius[{name}]", rep.orbits, rep.cf)
        add(f"cauchy-frobenius/componentwise[{name}]", rep.orbits, rep.cf_componentwise)
        add(f"orbit-stabilizer[{name}]", 0, len(orbit_stabilizer_check(Xs)))

    part = double_cosets(G, H, K)
    ndc = len(part)
    add("double-cosets=orbits[X_HK]", ndc, len(orbits(X.gset)))
    m = G.morphism_count
    add("double-coset-size", m, m - len(size_formula_check(G, H, K)))
    add("double-coset-size/corrected", m, m - len(size_formula_check(G, H, K, corrected=True)))
    add("comma-isomorphism", 0, len(comma_iso_check(G, H, K)))
    add("comma-components", ndc, comma_component_count(G, H, K))

    TriH = trivial_rep(H.as_groupoid())
    TriK = trivial_rep(K.as_groupoid())
    IndH, IndK = induce_rep(G, H, TriH), induce_rep(G, K, TriK)
    CH, CK = permutation_rep(LH), permutation_rep(LK)
    for name, S, Ind, C in (("H", H, IndH, CH), ("K", K, IndK, CK)):
        add(f"induced-gset=cosets[{name}]", 0, len(induced_coset_bijection(G, S)[1]))
        add(f"induced-rep-functorial[{name}]", 0, len(validate_rep(Ind)))
        chi_i, chi_c = character(Ind).values, character(C).values
        add(f"induced-character=coset-character[{name}]", m,
            sum(1 for a, b in zip(chi_i, chi_c) if a == b))

    space = invariant_function_space(G, H, K)
    add("invariant-function-dim", ndc, space.constraint_dim)
    for name, S in (("H", H), ("K", K)):
        add(f"theta-natural-iso[{name}]", 0, len(theta_iso_check(G, S)))
    add("T-after-S", 0, len(ts_check(G, H, K)))
    add("S-after-T", 0, len(st_check(G, H, K)))
    add("T-after-S/corrected", 0, len(ts_check(G, H, K, corrected=True)))
    add("S-after-T/corrected", 0, len(st_check(G, H, K, corrected=True)))

    YH, YK = y_rep(G, H), y_rep(G, K)
    add("nat-dim[Y_H,Y_K]", ndc, nat_space_dim(YH, YK))
    add("nat-dim[C[G/H],C[G/K]]", ndc, nat_space_dim(CH, CK))
    add("character-count[Ind Tri_H,Ind Tri_K]", ndc, char_inner_product(IndH, IndK))
    add("character-count/componentwise[Ind Tri_H,Ind Tri_K]", ndc,
        char_inner_product_componentwise(IndH, IndK))

    reps = {"Tri": trivial_rep(G), "C[G/H]": CH, "C[G/K]": CK, "Y_H": YH, "Y_K": YK}
    for n1, R1 in reps.items():
        for n2, R2 in reps.items():
            d = nat_space_dim(R1, R2)
            add(f"nat-dim=inner-product[{n1},{n2}]", d, char_inner_product(R1, R2))
            add(f"nat-dim=inner-product/componentwise[{n1},{n2}]", d,
                char_inner_product_componentwise(R1, R2))
    return rows


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    groupoid: FiniteGroupoid
    h: Subgroupoid
    k: Subgroupoid


def parse_corpus(text: str, base_dir: str, groupoid_loader, sub_loader) -> list[CorpusEntry]:
    """One instance per line: ``<expr> <H-spec> <K-spec>`` or
    ``random <seed> <max-objects> <max-group-order>``.  Paths resolve
    against ``base_dir``."""
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "random":
            seed, mo, mg = (int(t) for t in parts[1:4])
            inst = gen_random(seed, mo, mg)
            out.append(CorpusEntry(f"random({seed},{mo},{mg})", inst.groupoid, inst.h, inst.k))
            continue
        if len(parts) != 3:
            raise ValueError(f"corpus line {n}: expected '<expr> <H> <K>'")
        expr, hs, ks = parts

        def here(p):
            return p if os.path.isabs(p) else os.path.join(base_dir, p)

        G = build(expr, lambda p: groupoid_loader(here(p)))

        def sub(spec):
            return subgroupoid_from_spec(G, spec, lambda p, P: sub_loader(here(p), P))

        out.append(CorpusEntry(line, G, sub(hs), sub(ks)))
    return out
