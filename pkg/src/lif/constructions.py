"""Clique expressions over a single symmetric binary relation ``R``.

With ``n`` variables, ``build_alpha_2n`` selects the pairs of valuations
whose ``2n`` values are pairwise distinct and pairwise ``R``-connected in
both directions.  ``build_alpha_exists_3n`` composes it with itself and is
nonempty exactly when the graph has a ``3n``-clique; it uses only the ``n``
declared variables, which is what makes composition primitive in the
bounded-variable regime.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, product
from typing import Iterable

from .errors import LIFError
from .semantics import Domain, Interpretation
from .syntax import (
    Atom,
    Compose,
    CylL,
    CylR,
    Difference,
    Expression,
    Id,
    Intersect,
    SelL,
    SelLR,
    SelR,
    Union,
    Universe,
    Vocabulary,
)

CLIQUE_VOCAB = Vocabulary({"R": (2, 2)})


@dataclass(frozen=True)
class CliqueSpec:
    n: int = 2
    relation: str = "R"
    var_prefix: str = "x"
    vocabulary: Vocabulary = field(default=CLIQUE_VOCAB, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise LIFError(f"clique constructions need n >= 2, got {self.n}")
        if dict(self.vocabulary.entries) != {self.relation: (2, 2)}:
            raise LIFError(f"vocabulary must be exactly {{{self.relation}/2 in 2}}")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"{self.var_prefix}{i}" for i in range(1, self.n + 1))

    @property
    def universe(self) -> Universe:
        return Universe(self.variables)


def _cl(vs: Iterable[str], e: Expression) -> Expression:
    vs = frozenset(vs)
    return CylL(vs, e) if vs else e


def _cr(vs: Iterable[str], e: Expression) -> Expression:
    vs = frozenset(vs)
    return CylR(vs, e) if vs else e


def _big(op, parts: list[Expression]) -> Expression:
    return reduce(op, parts)


def build_all(spec: CliqueSpec) -> Expression:
    v = spec.variables
    return CylL(frozenset(v), CylR(frozenset(v), Id()))


def _edge(spec: CliqueSpec, x: str, y: str) -> Expression:
    """Diagonal pairs whose ``x`` and ``y`` values are joined both ways."""
    r = spec.relation
    return Intersect(Atom(r, (x, y), ()), Atom(r, (y, x), ()))


def _r_left(spec: CliqueSpec, x: str, y: str) -> Expression:
    v = set(spec.variables)
    return _cl(v - {x, y}, _cr(v, _edge(spec, x, y)))


def _r_right(spec: CliqueSpec, x: str, y: str) -> Expression:
    v = set(spec.variables)
    return _cl(v, _cr(v - {x, y}, _edge(spec, x, y)))


def _r_cross(spec: CliqueSpec, x: str, y: str) -> Expression:
    """Pairs whose left ``x`` and right ``y`` values are joined both ways."""
    v = set(spec.variables)
    if x != y:
        return _cl(v - {x}, _cr(v - {y}, _edge(spec, x, y)))
    # left x against right x: route through a second variable w, then
    # copy right w into right x and forget w
    w = next(u for u in spec.variables if u != x)
    cross = _cl(v - {x}, _cr(v - {w}, _edge(spec, x, w)))
    return _cr(v - {x}, SelR(x, w, cross))


def build_alpha_eq(spec: CliqueSpec) -> Expression:
    """Pairs in which two of the ``2n`` listed values coincide."""
    every = build_all(spec)
    v = spec.variables
    parts: list[Expression] = []
    for x, y in combinations(v, 2):
        parts.append(SelL(x, y, every))
        parts.append(SelR(x, y, every))
    for x, y in product(v, repeat=2):
        parts.append(SelLR(x, y, every))
    return _big(Union, parts)


def build_alpha_neq(spec: CliqueSpec) -> Expression:
    return Difference(build_all(spec), build_alpha_eq(spec))


def build_alpha_2n(spec: CliqueSpec) -> Expression:
    v = spec.variables
    parts = [build_alpha_neq(spec)]
    for x, y in combinations(v, 2):
        parts.append(_r_left(spec, x, y))
        parts.append(_r_right(spec, x, y))
    for x, y in product(v, repeat=2):
        parts.append(_r_cross(spec, x, y))
    return _big(Intersect, parts)


def build_alpha_exists_3n(spec: CliqueSpec) -> Expression:
    a = build_alpha_2n(spec)
    return Intersect(Compose(a, a), a)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: frozenset[frozenset]  # undirected, no self-loops

    def interpretation(self, relation: str = "R") -> Interpretation:
        pairs = set()
        for e in self.edges:
            a, b = tuple(e)
            pairs.add((a, b))
            pairs.add((b, a))
        return Interpretation({relation: frozenset(pairs)})

    @property
    def domain(self) -> Domain:
        return Domain(self.vertices)

    def has_clique(self, k: int) -> bool:
        return any(
            all(frozenset(p) in self.edges for p in combinations(c, 2))
            for c in combinations(self.vertices, k)
        )


def make_graph(vertices: Iterable, edges: Iterable[Iterable]) -> Graph:
    """Symmetrize ``edges`` and drop self-loops."""
    verts = list(dict.fromkeys(vertices))
    es = set()
    for e in edges:
        a, b = tuple(e)
        for x in (a, b):
            if x not in verts:
                verts.append(x)
        if a != b:
            es.add(frozenset((a, b)))
    if not verts:
        raise LIFError("graph has no vertices")
    return Graph(tuple(verts), frozenset(es))


def complete_graph(k: int, start: int = 1) -> Graph:
    vs = range(start, start + k)
    return make_graph(vs, combinations(vs, 2))


def load_graph(text: str) -> Graph:
    """Read ``{"vertices": [...], "edges": [[u, v], ...]}`` or one ``u v`` edge per line."""
    stripped = text.strip()
    if stripped.startswith("{"):
        obj = json.loads(stripped)
        if "edges" not in obj:
            raise LIFError("graph JSON needs an 'edges' list")
        return make_graph(obj.get("vertices", []), obj["edges"])
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise LIFError(f"line {lineno}: expected 'u v'")
        edges.append(tuple(int(p) if p.lstrip("-").isdigit() else p for p in parts))
    return make_graph([], edges)
