"""Line-oriented text formats for groupoids, subgroupoids, G-sets,
representations, invariant functions, natural transformations and
double-coset partitions.

``serialize_*`` output is canonical, so ``serialize(parse(text)) == text``
for any text produced by ``serialize``.
"""

from __future__ import annotations

import os
from typing import Callable, Iterator, Sequence

from .action import GSet
from .coset import DoubleCosetPartition
from .groupoid import FiniteGroupoid, GroupoidError, Subgroupoid, Violation, validate
from .linrep import NaturalTransformation, Representation
from .scalars import Scalar, format_scalar, parse_scalar


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = f"{path or '<text>'}:{line}: " if line is not None else (f"{path}: " if path else "")
        super().__init__(where + message)


class ValidationError(ValueError):
    def __init__(self, violations: list[Violation], path: str | None = None):
        self.violations = violations
        head = f"{path}: " if path else ""
        shown = "; ".join(map(str, violations[:10]))
        more = f" (+{len(violations) - 10} more)" if len(violations) > 10 else ""
        super().__init__(f"{head}groupoid axioms violated: {shown}{more}")


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _naturals(s: str, n: int, path) -> list[int]:
    try:
        vals = [int(t) for t in s.split()]
    except ValueError:
        raise ParseError(f"expected natural numbers, got {s!r}", n, path) from None
    if any(v < 0 for v in vals):
        raise ParseError("negative value", n, path)
    return vals


class _Keyed:
    """Collects ``key: value`` headers, rejecting duplicates."""

    def __init__(self, path):
        self.path = path
        self.values: dict[str, tuple[int, str]] = {}

    def put(self, key: str, value: str, n: int):
        if key in self.values:
            raise ParseError(f"duplicate key {key!r} (first on line {self.values[key][0]})", n, self.path)
        self.values[key] = (n, value)

    def need(self, key: str) -> tuple[int, str]:
        if key not in self.values:
            raise ParseError(f"missing key {key!r}", None, self.path)
        return self.values[key]

    def naturals(self, key: str, count: int | None = None) -> list[int]:
        n, v = self.need(key)
        vals = _naturals(v, n, self.path)
        if count is not None and len(vals) != count:
            raise ParseError(f"{key}: expected {count} entries, got {len(vals)}", n, self.path)
        return vals


def _split_key(line: str, n: int, path) -> tuple[str, str]:
    if ":" not in line:
        raise ParseError(f"expected 'key: value', got {line!r}", n, path)
    k, v = line.split(":", 1)
    return k.strip(), v.strip()


# --- groupoids ----------------------------------------------------------------

def parse_groupoid(text: str, path: str | None = None, check: bool = True) -> FiniteGroupoid:
    keys = _Keyed(path)
    table: dict[tuple[int, int], int] = {}
    compose_line = None
    for n, line in _lines(text):
        if compose_line is not None and ":" not in line:
            parts = _naturals(line, n, path)
            if len(parts) != 3:
                raise ParseError("compose lines need '<g2> <g1> <result>'", n, path)
            g2, g1, r = parts
            if (g2, g1) in table:
                raise ParseError(f"duplicate compose entry for pair ({g2}, {g1})", n, path)
            table[g2, g1] = r
            continue
        k, v = _split_key(line, n, path)
        if k == "compose":
            if v:
                raise ParseError("'compose:' takes no inline value", n, path)
            if compose_line is not None:
                raise ParseError(f"duplicate key 'compose' (first on line {compose_line})", n, path)
            compose_line = n
            continue
        if k not in ("objects", "morphisms", "dom", "cod", "id", "inv"):
            raise ParseError(f"unknown key {k!r}", n, path)
        keys.put(k, v, n)
    if compose_line is None:
        raise ParseError("missing key 'compose'", None, path)
    (obj,) = keys.naturals("objects", 1)
    (mor,) = keys.naturals("morphisms", 1)
    dom, cod = keys.naturals("dom", mor), keys.naturals("cod", mor)
    ident, inv = keys.naturals("id", obj), keys.naturals("inv", mor)
    for name, seq, bound in (("dom", dom, obj), ("cod", cod, obj), ("id", ident, mor), ("inv", inv, mor)):
        for i, x in enumerate(seq):
            if x >= bound:
                raise ParseError(f"{name}[{i}] = {x} out of range", keys.need(name)[0], path)
    for (g2, g1), r in table.items():
        if max(g2, g1, r) >= mor:
            raise ParseError(f"compose entry ({g2}, {g1}) -> {r} out of range", compose_line, path)
    for g1 in range(mor):
        for g2 in range(mor):
            if cod[g1] == dom[g2] and (g2, g1) not in table:
                raise ParseError(f"missing compose entry for composable pair ({g2}, {g1})",
                                 compose_line, path)
    try:
        G = FiniteGroupoid(obj, tuple(dom), tuple(cod), tuple(ident), tuple(inv), table)
    except GroupoidError as e:
        raise ParseError(str(e), None, path) from None
    if check:
        bad = validate(G)
        if bad:
            raise ValidationError(bad, path)
    return G


def serialize_groupoid(G: FiniteGroupoid) -> str:
    out = [f"objects: {G.object_count}", f"morphisms: {G.morphism_count}",
           "dom: " + " ".join(map(str, G.dom)), "cod: " + " ".join(map(str, G.cod)),
           "id: " + " ".join(map(str, G.identity)), "inv: " + " ".join(map(str, G.inverse)),
           "compose:"]
    out += [f"{g2} {g1} {r}" for (g2, g1), r in sorted(G.table.items())]
    return "\n".join(out) + "\n"


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def load_groupoid(path: str) -> FiniteGroupoid:
    return parse_groupoid(read_text(path), path)


def _resolve(ref: str, path: str | None) -> str:
    if path and not os.path.isabs(ref):
        return os.path.join(os.path.dirname(path), ref)
    return ref


def _base_from_header(keys: _Keyed, key: str, base, path, loader: Callable):
    if base is not None:
        return base
    n, ref = keys.need(key)
    try:
        return loader(_resolve(ref, path))
    except OSError as e:
        raise ParseError(f"cannot read {ref!r}: {e.strerror}", n, path) from None


# --- subgroupoids -------------------------------------------------------------

def parse_subgroupoid(text: str, parent: FiniteGroupoid | None = None,
                      path: str | None = None, loader: Callable = load_groupoid) -> Subgroupoid:
    """``parent: <file>`` (optional when ``parent`` is given), ``objects:``
    and ``morphisms:`` index lists."""
    keys = _Keyed(path)
    for n, line in _lines(text):
        k, v = _split_key(line, n, path)
        if k not in ("parent", "objects", "morphisms"):
            raise ParseError(f"unknown key {k!r}", n, path)
        keys.put(k, v, n)
    P = _base_from_header(keys, "parent", parent, path, loader)
    objs, mors = keys.naturals("objects"), keys.naturals("morphisms")
    try:
        return Subgroupoid(P, frozenset(objs), frozenset(mors))
    except GroupoidError as e:
        raise ParseError(str(e), keys.need("morphisms")[0], path) from None


def serialize_subgroupoid(H: Subgroupoid, parent_ref: str | None = None) -> str:
    out = [f"parent: {parent_ref}"] if parent_ref else []
    out += ["objects: " + " ".join(map(str, sorted(H.objects))),
            "morphisms: " + " ".join(map(str, sorted(H.morphisms)))]
    return "\n".join(out) + "\n"


# --- G-sets -------------------------------------------------------------------

def _indexed_key(k: str, word: str, n: int, path) -> int | None:
    if not k.startswith(word + " "):
        return None
    try:
        return int(k[len(word) + 1:])
    except ValueError:
        raise ParseError(f"bad index in {k!r}", n, path) from None


def parse_gset(text: str, base: FiniteGroupoid | None = None, path: str | None = None,
               loader: Callable = load_groupoid) -> GSet:
    keys = _Keyed(path)
    acts: dict[int, tuple[int, list[int]]] = {}
    for n, line in _lines(text):
        k, v = _split_key(line, n, path)
        g = _indexed_key(k, "act", n, path)
        if g is not None:
            if g in acts:
                raise ParseError(f"duplicate key 'act {g}'", n, path)
            acts[g] = (n, _naturals(v, n, path))
        elif k in ("gset over", "sizes"):
            keys.put(k, v, n)
        else:
            raise ParseError(f"unknown key {k!r}", n, path)
    G = _base_from_header(keys, "gset over", base, path, loader)
    sizes = keys.naturals("sizes", G.object_count)
    action = []
    for g in G.morphisms:
        if g not in acts:
            raise ParseError(f"missing 'act {g}'", None, path)
        action.append(tuple(acts[g][1]))
    extra = sorted(set(acts) - set(G.morphisms))
    if extra:
        raise ParseError(f"'act {extra[0]}' refers to no morphism", acts[extra[0]][0], path)
    return GSet(G, tuple(sizes), tuple(action))


def serialize_gset(X: GSet, base_ref: str = "-") -> str:
    out = [f"gset over: {base_ref}", "sizes: " + " ".join(map(str, X.carrier_size))]
    out += [f"act {g}: " + " ".join(map(str, a)) for g, a in enumerate(X.action)]
    return "\n".join(out) + "\n"


# --- matrices, representations, functions --------------------------------------

def _format_row(row: Sequence[Scalar]) -> str:
    return " ".join(format_scalar(v) for v in row)


def _parse_row(line: str, n: int, path) -> tuple[Scalar, ...]:
    try:
        return tuple(parse_scalar(t) for t in line.split())
    except ValueError as e:
        raise ParseError(str(e), n, path) from None


def _matrix_blocks(text: str, word: str, path) -> tuple[_Keyed, dict[int, tuple[int, list]]]:
    keys = _Keyed(path)
    blocks: dict[int, tuple[int, list]] = {}
    current = None
    for n, line in _lines(text):
        if ":" not in line:
            if current is None:
                raise ParseError("matrix row outside a block", n, path)
            current.append(_parse_row(line, n, path))
            continue
        k, v = _split_key(line, n, path)
        idx = _indexed_key(k, word, n, path)
        if idx is None:
            keys.put(k, v, n)
            current = None
            continue
        if idx in blocks:
            raise ParseError(f"duplicate key '{word} {idx}'", n, path)
        if v:
            raise ParseError(f"'{word} {idx}:' takes no inline value", n, path)
        current = []
        blocks[idx] = (n, current)
    return keys, blocks


def parse_rep(text: str, base: FiniteGroupoid | None = None, path: str | None = None,
              loader: Callable = load_groupoid) -> Representation:
    keys, blocks = _matrix_blocks(text, "mat", path)
    unknown = set(keys.values) - {"rep over", "dims"}
    if unknown:
        k = min(unknown)
        raise ParseError(f"unknown key {k!r}", keys.values[k][0], path)
    G = _base_from_header(keys, "rep over", base, path, loader)
    dims = keys.naturals("dims", G.object_count)
    mats = []
    for g in G.morphisms:
        if g not in blocks:
            raise ParseError(f"missing 'mat {g}'", None, path)
        n, rows = blocks[g]
        r, c = dims[G.cod[g]], dims[G.dom[g]]
        if len(rows) != r or any(len(row) != c for row in rows):
            raise ParseError(f"mat {g}: expected a {r}x{c} matrix", n, path)
        mats.append(tuple(rows))
    return Representation(G, tuple(dims), tuple(mats))


def serialize_rep(R: Representation, base_ref: str = "-") -> str:
    out = [f"rep over: {base_ref}", "dims: " + " ".join(map(str, R.dim))]
    for g, M in enumerate(R.mat):
        out.append(f"mat {g}:")
        out += [_format_row(row) for row in M]
    return "\n".join(out) + "\n"


def parse_function(text: str, path: str | None = None) -> tuple[Scalar, ...]:
    keys = _Keyed(path)
    for n, line in _lines(text):
        k, v = _split_key(line, n, path)
        if k != "fn":
            raise ParseError(f"unknown key {k!r}", n, path)
        keys.put(k, v, n)
    n, v = keys.need("fn")
    return _parse_row(v, n, path)


def serialize_function(phi: Sequence[Scalar]) -> str:
    return "fn: " + _format_row(phi) + "\n"


def parse_nat(text: str, path: str | None = None) -> NaturalTransformation:
    """Blocks ``nat <x>:`` for objects ``0..n-1`` with matrix rows beneath."""
    keys, blocks = _matrix_blocks(text, "nat", path)
    if keys.values:
        k = min(keys.values)
        raise ParseError(f"unknown key {k!r}", keys.values[k][0], path)
    if sorted(blocks) != list(range(len(blocks))):
        raise ParseError("nat blocks must cover objects 0..n-1", None, path)
    return NaturalTransformation(tuple(tuple(blocks[x][1]) for x in range(len(blocks))))


def serialize_nat(phi: NaturalTransformation) -> str:
    out = []
    for x, M in enumerate(phi.components):
        out.append(f"nat {x}:")
        out += [_format_row(row) for row in M]
    return "\n".join(out) + "\n"


def serialize_partition(part: DoubleCosetPartition) -> str:
    return "".join(f"block {b[0]}: " + " ".join(map(str, b)) + "\n" for b in part.blocks)


def parse_partition(text: str, path: str | None = None) -> list[tuple[int, ...]]:
    blocks = []
    for n, line in _lines(text):
        k, v = _split_key(line, n, path)
        rep = _indexed_key(k, "block", n, path)
        if rep is None:
            raise ParseError(f"unknown key {k!r}", n, path)
        members = tuple(_naturals(v, n, path))
        if not members or members[0] != rep or list(members) != sorted(members):
            raise ParseError("block members must be sorted and start with the representative", n, path)
        blocks.append(members)
    return blocks
