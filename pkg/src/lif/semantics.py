"""Exact evaluation of expressions as binary relations on valuations (BRVs).

A BRV over a universe of ``n`` variables and a domain of ``d`` values is kept as
a boolean tensor of shape ``(d,) * 2n``: the first ``n`` axes index the left
valuation, the last ``n`` the right one, both in universe order.  Set
operations are elementwise, composition is a boolean matrix product,
cylindrification is ``any`` over the cylindrified axes, and selections are
masks.  Pairs are always reported in lexicographic order (universe order, then
domain order), so every output is reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Any, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import ArityError, LIFError, MismatchError, UniverseError, UnknownModuleError
from .syntax import (
    Atom,
    Compose,
    Converse,
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
    as_universe,
    variables,
)

# refuse to materialize BRVs with more cells than this
MAX_CELLS = 1 << 26

Valuation = tuple  # domain values aligned with universe order
Pair = tuple[Valuation, Valuation]


@dataclass(frozen=True)
class Domain:
    elements: tuple

    def __post_init__(self):
        els = tuple(self.elements)
        if not els:
            raise LIFError("domain must be nonempty")
        if len(set(els)) != len(els):
            raise LIFError(f"duplicate domain elements in {els}")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(els)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, value) -> int:
        try:
            return self._index[value]
        except KeyError:
            raise LIFError(f"value {value!r} is not in the domain {list(self.elements)}") from None


def as_domain(d: "Domain | Sequence") -> Domain:
    return d if isinstance(d, Domain) else Domain(tuple(d))


@dataclass(frozen=True)
class Interpretation:
    """One finite relation per module name; tuples list inputs then outputs."""

    relations: Mapping[str, frozenset[tuple]]

    def __post_init__(self):
        rels = {name: frozenset(tuple(t) for t in ts) for name, ts in self.relations.items()}
        object.__setattr__(self, "relations", rels)

    def __getitem__(self, name: str) -> frozenset[tuple]:
        try:
            return self.relations[name]
        except KeyError:
            raise UnknownModuleError(f"interpretation has no relation for {name!r}") from None

    def __hash__(self) -> int:
        return hash(tuple(sorted((k, tuple(sorted(v, key=repr))) for k, v in self.relations.items())))

    def check(self, vocab: Vocabulary, domain: Domain | None = None) -> None:
        for name in vocab:
            for t in self[name]:
                if len(t) != vocab.arity(name):
                    raise ArityError(f"tuple {t} of {name} has length {len(t)}, expected {vocab.arity(name)}")
                if domain is not None:
                    for v in t:
                        domain.index(v)

    def to_json(self, domain: Domain | None = None) -> dict:
        out: dict[str, Any] = {
            "relations": {k: [list(t) for t in sorted(v)] for k, v in sorted(self.relations.items())}
        }
        if domain is not None:
            out["domain"] = list(domain.elements)
        return out


def load_interpretation(data: str | Mapping) -> tuple[Interpretation, Domain | None]:
    """Read the ``{"domain": [...], "relations": {...}}`` interchange format."""
    obj = json.loads(data) if isinstance(data, str) else data
    if not isinstance(obj, Mapping) or "relations" not in obj:
        raise LIFError("interpretation JSON needs a 'relations' object")
    rels = {name: frozenset(tuple(t) for t in ts) for name, ts in obj["relations"].items()}
    domain = as_domain(obj["domain"]) if "domain" in obj else None
    return Interpretation(rels), domain


# ---------------------------------------------------------------------------
# BRV


class BRV:
    """An immutable finite binary relation on valuations."""

    __slots__ = ("universe", "domain", "table")

    def __init__(self, universe: Universe, domain: Domain, table: np.ndarray):
        n, d = len(universe), len(domain)
        shape = (d,) * (2 * n)
        if table.shape != shape:
            table = np.broadcast_to(table, shape)
        table = np.ascontiguousarray(table, dtype=bool)
        table.flags.writeable = False
        self.universe = universe
        self.domain = domain
        self.table = table

    # constructors
    @classmethod
    def empty(cls, universe, domain) -> "BRV":
        u, dom = as_universe(universe), as_domain(domain)
        _check_size(u, dom)
        return cls(u, dom, np.zeros((len(dom),) * (2 * len(u)), dtype=bool))

    @classmethod
    def full(cls, universe, domain) -> "BRV":
        u, dom = as_universe(universe), as_domain(domain)
        _check_size(u, dom)
        return cls(u, dom, np.ones((len(dom),) * (2 * len(u)), dtype=bool))

    @classmethod
    def diagonal(cls, universe, domain) -> "BRV":
        u, dom = as_universe(universe), as_domain(domain)
        _check_size(u, dom)
        return cls(u, dom, _inertia_mask(len(u), len(dom), range(len(u))))

    @classmethod
    def from_pairs(cls, universe, domain, pairs: Iterable[Pair]) -> "BRV":
        u, dom = as_universe(universe), as_domain(domain)
        _check_size(u, dom)
        t = np.zeros((len(dom),) * (2 * len(u)), dtype=bool)
        for v1, v2 in pairs:
            if len(v1) != len(u) or len(v2) != len(u):
                raise UniverseError("valuation length does not match the universe")
            t[tuple(dom.index(a) for a in v1) + tuple(dom.index(b) for b in v2)] = True
        return cls(u, dom, t)

    # views
    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def matrix(self) -> np.ndarray:
        v = len(self.domain) ** self.n
        return self.table.reshape(v, v)

    def pairs(self) -> list[Pair]:
        els = self.domain.elements
        n = self.n
        out = []
        for idx in np.argwhere(self.table):
            vals = tuple(els[i] for i in idx)
            out.append((vals[:n], vals[n:]))
        return out

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs())

    def __len__(self) -> int:
        return int(self.table.sum())

    def __bool__(self) -> bool:
        return bool(self.table.any())

    def __contains__(self, pair: Pair) -> bool:
        v1, v2 = pair
        idx = tuple(self.domain.index(a) for a in v1) + tuple(self.domain.index(b) for b in v2)
        return bool(self.table[idx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BRV):
            return NotImplemented
        return (
            self.universe == other.universe
            and self.domain == other.domain
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.domain, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"BRV(universe={list(self.universe)}, domain={list(self.domain)}, pairs={len(self)})"

    def as_dicts(self) -> list[tuple[dict, dict]]:
        vs = self.universe.vars
        return [(dict(zip(vs, a)), dict(zip(vs, b))) for a, b in self.pairs()]

    def _like(self, table: np.ndarray) -> "BRV":
        return BRV(self.universe, self.domain, table)


def _check_size(u: Universe, dom: Domain) -> None:
    cells = len(dom) ** (2 * len(u))
    if cells > MAX_CELLS or 2 * len(u) > 64:
        raise LIFError(
            f"BRV over {len(u)} variables and {len(dom)} values has {cells} cells; too large to materialize"
        )


def _grid(ndim: int, axis: int, d: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = d
    return np.arange(d).reshape(shape)


def _inertia_mask(n: int, d: int, idxs: Iterable[int]) -> np.ndarray:
    """Mask of pairs that agree on the variables at positions ``idxs``."""
    mask = np.ones((1,) * (2 * n), dtype=bool)
    for i in idxs:
        mask = mask & (_grid(2 * n, i, d) == _grid(2 * n, n + i, d))
    return np.broadcast_to(mask, (d,) * (2 * n))


def _same_space(a: BRV, b: BRV) -> None:
    if a.universe != b.universe or a.domain != b.domain:
        raise MismatchError("BRVs are over different universes or domains")


# ---------------------------------------------------------------------------
# combinators


def brv_union(a: BRV, b: BRV) -> BRV:
    _same_space(a, b)
    return a._like(a.table | b.table)


def brv_intersect(a: BRV, b: BRV) -> BRV:
    _same_space(a, b)
    return a._like(a.table & b.table)


def brv_difference(a: BRV, b: BRV) -> BRV:
    _same_space(a, b)
    return a._like(a.table & ~b.table)


def brv_compose(a: BRV, b: BRV) -> BRV:
    _same_space(a, b)
    # float32 matmul counts witnesses exactly for any realistic size
    prod = a.matrix.astype(np.float32) @ b.matrix.astype(np.float32)
    return a._like((prod > 0).reshape(a.table.shape))


def brv_converse(a: BRV) -> BRV:
    n = a.n
    return a._like(a.table.transpose(tuple(range(n, 2 * n)) + tuple(range(n))))


def brv_cyl(a: BRV, side: str, zs: Iterable[str]) -> BRV:
    """Existential relaxation of the ``side`` ('left'/'right') valuation on ``zs``."""
    if side not in ("left", "right", "l", "r"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    offset = 0 if side in ("left", "l") else a.n
    axes = tuple(sorted(offset + a.universe.index(z) for z in set(zs)))
    if not axes:
        return a
    return a._like(a.table.any(axis=axes, keepdims=True))


def brv_select(a: BRV, kind: str, x: str, y: str) -> BRV:
    """Keep pairs with ``v1(x)=v1(y)`` (l), ``v2(x)=v2(y)`` (r) or ``v1(x)=v2(y)`` (lr)."""
    n, d = a.n, len(a.domain)
    i, j = a.universe.index(x), a.universe.index(y)
    match kind:
        case "l":
            ax, ay = i, j
        case "r":
            ax, ay = n + i, n + j
        case "lr":
            ax, ay = i, n + j
        case _:
            raise ValueError(f"selection kind must be l, r or lr, not {kind!r}")
    if ax == ay:
        return a
    return a._like(a.table & (_grid(2 * n, ax, d) == _grid(2 * n, ay, d)))


def brv_atom(
    relation: Iterable[tuple],
    inputs: Sequence[str],
    outputs: Sequence[str],
    universe,
    domain,
) -> BRV:
    """Pairs whose input reading on the left and output reading on the right form
    a tuple of ``relation``, with the two valuations agreeing outside the outputs."""
    u, dom = as_universe(universe), as_domain(domain)
    _check_size(u, dom)
    n, d = len(u), len(dom)
    ar = len(inputs) + len(outputs)
    rel = np.zeros((d,) * ar, dtype=bool)
    for t in relation:
        if len(t) != ar:
            raise ArityError(f"tuple {t} has length {len(t)}, expected {ar}")
        rel[tuple(dom.index(v) for v in t)] = True
    axes = [u.index(x) for x in inputs] + [n + u.index(y) for y in outputs]
    if ar:
        member = rel[tuple(_grid(2 * n, ax, d) for ax in axes)]
    else:
        member = np.array(bool(rel[()])).reshape((1,) * (2 * n))
    written = {u.index(y) for y in outputs}
    inert = _inertia_mask(n, d, (i for i in range(n) if i not in written))
    return BRV(u, dom, member & inert)


# ---------------------------------------------------------------------------
# evaluation


def evaluate(expr: Expression, interp: Interpretation, universe, domain) -> BRV:
    u, dom = as_universe(universe), as_domain(domain)
    for v in sorted(variables(expr)):
        if v not in u:
            raise UniverseError(f"variable {v!r} of the expression is outside the universe {list(u)}")
    _check_size(u, dom)
    return _eval(expr, interp, u, dom)


def _eval(e: Expression, interp: Interpretation, u: Universe, dom: Domain) -> BRV:
    match e:
        case Id():
            return BRV.diagonal(u, dom)
        case Atom(name=name, inputs=xs, outputs=ys):
            return brv_atom(interp[name], xs, ys, u, dom)
        case Union(left=l, right=r):
            return brv_union(_eval(l, interp, u, dom), _eval(r, interp, u, dom))
        case Intersect(left=l, right=r):
            return brv_intersect(_eval(l, interp, u, dom), _eval(r, interp, u, dom))
        case Difference(left=l, right=r):
            return brv_difference(_eval(l, interp, u, dom), _eval(r, interp, u, dom))
        case Compose(left=l, right=r):
            return brv_compose(_eval(l, interp, u, dom), _eval(r, interp, u, dom))
        case Converse(child=c):
            return brv_converse(_eval(c, interp, u, dom))
        case CylL(vars=z, child=c):
            return brv_cyl(_eval(c, interp, u, dom), "left", z)
        case CylR(vars=z, child=c):
            return brv_cyl(_eval(c, interp, u, dom), "right", z)
        case SelL(x=x, y=y, child=c):
            return brv_select(_eval(c, interp, u, dom), "l", x, y)
        case SelR(x=x, y=y, child=c):
            return brv_select(_eval(c, interp, u, dom), "r", x, y)
        case SelLR(x=x, y=y, child=c):
            return brv_select(_eval(c, interp, u, dom), "lr", x, y)
    raise TypeError(f"not an expression: {e!r}")


def equivalent_on(e1: Expression, e2: Expression, interp: Interpretation, universe, domain) -> bool:
    return evaluate(e1, interp, universe, domain) == evaluate(e2, interp, universe, domain)


def all_valuations(universe, domain) -> Iterator[Valuation]:
    u, dom = as_universe(universe), as_domain(domain)
    return product(dom.elements, repeat=len(u))


def restrict(a: BRV, keep: Iterable[str]) -> frozenset[tuple[tuple, tuple]]:
    """Project every pair onto the variables in ``keep`` (universe order)."""
    idx = [a.universe.index(v) for v in a.universe.ordered(keep)]
    return frozenset((tuple(v1[i] for i in idx), tuple(v2[i] for i in idx)) for v1, v2 in a.pairs())


def brv_union_all(brvs: Iterable[BRV]) -> BRV:
    return reduce(brv_union, brvs)
