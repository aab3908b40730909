"""Builder expressions and seeded random instances.

Grammar::

    expr := pair(n) | cyclic(n) | sym(n)
          | product(expr, expr) | coproduct(expr, expr) | file(path)
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable

from .groupoid import (FiniteGroupoid, Subgroupoid, closure, coproduct, cyclic_group,
                       pair_groupoid, product, symmetric_group)


class ExpressionError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<name>[a-z]+)|(?P<num>\d+)|(?P<punct>[(),]))")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        out.append(m.group(m.lastgroup))
        pos = m.end()
    return out


_ATOMS: dict[str, Callable[[int], FiniteGroupoid]] = {
    "pair": pair_groupoid,
    "cyclic": cyclic_group,
    "sym": symmetric_group,
}
_BINARY = {"product": product, "coproduct": coproduct}


def build(text: str, loader: Callable[[str], FiniteGroupoid] | None = None) -> FiniteGroupoid:
    """Evaluate a builder expression; ``file(path)`` goes through ``loader``."""
    file_args: list[str] = []

    # file(...) paths may contain characters outside the token grammar
    def stash(m):
        file_args.append(m.group(1).strip())
        return f"file({len(file_args) - 1})"

    toks = _tokens(re.sub(r"file\(([^()]*)\)", stash, text.strip()))
    pos = 0

    def expect(t):
        nonlocal pos
        if pos >= len(toks) or toks[pos] != t:
            got = toks[pos] if pos < len(toks) else "end of input"
            raise ExpressionError(f"expected {t!r}, got {got!r}")
        pos += 1

    def number() -> int:
        nonlocal pos
        if pos >= len(toks) or not toks[pos].isdigit():
            raise ExpressionError("expected a number")
        pos += 1
        return int(toks[pos - 1])

    def expr() -> FiniteGroupoid:
        nonlocal pos
        if pos >= len(toks):
            raise ExpressionError("unexpected end of expression")
        name = toks[pos]
        pos += 1
        expect("(")
        if name in _ATOMS:
            n = number()
            expect(")")
            if n < 1:
                raise ExpressionError(f"{name}({n}) needs n >= 1")
            return _ATOMS[name](n)
        if name in _BINARY:
            a = expr()
            expect(",")
            b = expr()
            expect(")")
            return _BINARY[name](a, b)
        if name == "file":
            i = number()
            expect(")")
            if loader is None:
                raise ExpressionError("file() needs a loader")
            return loader(file_args[i])
        raise ExpressionError(f"unknown constructor {name!r}")

    G = expr()
    if pos != len(toks):
        raise ExpressionError(f"trailing input starting at {toks[pos]!r}")
    return G


@dataclass(frozen=True)
class RandomInstance:
    groupoid: FiniteGroupoid
    h: Subgroupoid
    k: Subgroupoid
    expression: str
    h_seeds: tuple[int, ...]
    k_seeds: tuple[int, ...]


def gen_random(seed: int, max_objects: int = 4, max_group_order: int = 6) -> RandomInstance:
    """A groupoid built from 1-3 blocks ``product(group, pair(k))`` and two
    wide subgroupoids generated by 0-2 random morphisms each.

    Every finite groupoid is isomorphic to such a disjoint union, so this
    reaches every isomorphism type within the bounds.
    """
    if max_objects < 1 or max_group_order < 1:
        raise ValueError("bounds must be at least 1")
    rng = random.Random(seed)
    ncomp = rng.randint(1, min(3, max_objects))
    left = max_objects
    groups = [f"cyclic({d})" for d in range(1, max_group_order + 1)]
    if max_group_order >= 6:
        groups.append("sym(3)")
    parts = []
    for i in range(ncomp):
        k = rng.randint(1, left - (ncomp - i - 1))
        left -= k
        parts.append(f"product({rng.choice(groups)},pair({k}))")
    expr = parts[0]
    for p in parts[1:]:
        expr = f"coproduct({expr},{p})"
    G = build(expr)
    h_seeds = tuple(sorted(rng.sample(range(G.morphism_count), min(rng.randint(0, 2), G.morphism_count))))
    k_seeds = tuple(sorted(rng.sample(range(G.morphism_count), min(rng.randint(0, 2), G.morphism_count))))
    return RandomInstance(G, closure(G, h_seeds, make_wide=True), closure(G, k_seeds, make_wide=True),
                          expr, h_seeds, k_seeds)
