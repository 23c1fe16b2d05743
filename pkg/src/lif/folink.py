"""Bridge between first-order logic and LIF.

``fo_to_lif`` embeds an FO formula over a relational vocabulary (every input
arity zero) as an expression whose semantics is the diagonal of its
satisfying valuations.  ``lif_to_fo`` goes the other way: an expression over
``n`` variables becomes a formula over the copies ``x1..xn`` (left valuation)
and ``y1..yn`` (right valuation), using the third copy ``z1..zn`` only to
quantify the intermediate valuation of a composition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Mapping

from .errors import ArityError, LIFError, LIFSyntaxError
from .semantics import Domain, Interpretation, as_domain
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
)

# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Formula", ...]


@dataclass(frozen=True)
class And:
    children: tuple["Formula", ...]


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    child: "Formula"


Formula = Eq | Rel | Or | And | Not | Exists


def conj(*fs: Formula) -> Formula:
    """Flattened conjunction; a single conjunct is returned as is."""
    flat: list[Formula] = []
    for f in fs:
        flat.extend(f.children if isinstance(f, And) else (f,))
    if not flat:
        raise ValueError("empty conjunction")
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*fs: Formula) -> Formula:
    flat: list[Formula] = []
    for f in fs:
        flat.extend(f.children if isinstance(f, Or) else (f,))
    if not flat:
        raise ValueError("empty disjunction")
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def formula_variables(phi: Formula) -> frozenset[str]:
    """Every variable occurring in ``phi``, free or bound."""
    match phi:
        case Eq(left=a, right=b):
            return frozenset({a, b})
        case Rel(args=xs):
            return frozenset(xs)
        case Or(children=cs) | And(children=cs):
            return frozenset().union(*(formula_variables(c) for c in cs))
        case Not(child=c):
            return formula_variables(c)
        case Exists(var=v, child=c):
            return formula_variables(c) | {v}
    raise TypeError(f"not a formula: {phi!r}")


def free_variables(phi: Formula) -> frozenset[str]:
    match phi:
        case Eq(left=a, right=b):
            return frozenset({a, b})
        case Rel(args=xs):
            return frozenset(xs)
        case Or(children=cs) | And(children=cs):
            return frozenset().union(*(free_variables(c) for c in cs))
        case Not(child=c):
            return free_variables(c)
        case Exists(var=v, child=c):
            return free_variables(c) - {v}
    raise TypeError(f"not a formula: {phi!r}")


def fo_depth(phi: Formula) -> int:
    match phi:
        case Eq() | Rel():
            return 0
        case Or(children=cs) | And(children=cs):
            return 1 + max(fo_depth(c) for c in cs)
        case Not(child=c) | Exists(child=c):
            return 1 + fo_depth(c)
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# finite model checking


def fo_evaluate(phi: Formula, interp: Interpretation, valuation: Mapping[str, object], domain) -> bool:
    """Tarskian satisfaction; quantifiers range over ``domain``."""
    dom = as_domain(domain)
    missing = free_variables(phi) - valuation.keys()
    if missing:
        raise LIFError(f"unbound variable(s) {sorted(missing)}")
    return _sat(phi, interp, dict(valuation), dom)


def _sat(phi: Formula, interp: Interpretation, nu: dict, dom: Domain) -> bool:
    match phi:
        case Eq(left=a, right=b):
            return nu[a] == nu[b]
        case Rel(name=r, args=xs):
            return tuple(nu[x] for x in xs) in interp[r]
        case Or(children=cs):
            return any(_sat(c, interp, nu, dom) for c in cs)
        case And(children=cs):
            return all(_sat(c, interp, nu, dom) for c in cs)
        case Not(child=c):
            return not _sat(c, interp, nu, dom)
        case Exists(var=v, child=c):
            saved = nu.get(v, _UNSET)
            try:
                for d in dom.elements:
                    nu[v] = d
                    if _sat(c, interp, nu, dom):
                        return True
                return False
            finally:
                if saved is _UNSET:
                    del nu[v]
                else:
                    nu[v] = saved
    raise TypeError(f"not a formula: {phi!r}")


_UNSET = object()


# ---------------------------------------------------------------------------
# FO -> LIF


def fo_to_lif(phi: Formula, vocab: Vocabulary | None = None) -> Expression:
    """An expression denoting ``{(v, v) | v satisfies phi}``.

    Relation atoms become atoms with all positions on the output side, so
    every module must have input arity zero.
    """
    if vocab is not None:
        for name in vocab:
            if vocab.input_arity(name) != 0:
                raise ArityError(f"{name} has input arity {vocab.input_arity(name)}; FO embedding needs 0")
    return _fo2lif(phi, vocab)


def _fo2lif(phi: Formula, vocab: Vocabulary | None) -> Expression:
    match phi:
        case Eq(left=x, right=y):
            return SelR(x, y, Id())
        case Rel(name=r, args=xs):
            if vocab is not None and vocab.arity(r) != len(xs):
                raise ArityError(f"{r} expects {vocab.arity(r)} argument(s), got {len(xs)}")
            return Intersect(Id(), Atom(r, (), tuple(xs)))
        case Or(children=cs):
            return reduce(Union, (_fo2lif(c, vocab) for c in cs))
        case And(children=cs):
            return reduce(Intersect, (_fo2lif(c, vocab) for c in cs))
        case Not(child=c):
            return Difference(Id(), _fo2lif(c, vocab))
        case Exists(var=x, child=c):
            zx = frozenset({x})
            return SelLR(x, x, CylL(zx, CylR(zx, _fo2lif(c, vocab))))
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# LIF -> FO

COPIES = ("x", "y", "z")


def copy_name(copy: str, i: int) -> str:
    """Name of the ``copy`` of the ``i``-th universe variable (0-based ``i``)."""
    return f"{copy}{i + 1}"


def lif_to_fo(alpha: Expression, universe) -> Formula:
    """Formula ``phi`` with ``(v1, v2)`` in ``alpha`` iff ``phi`` holds when
    ``x_i`` takes ``v1`` of the i-th variable and ``y_i`` takes ``v2`` of it."""
    u = as_universe(universe)
    return _lif2fo(alpha, u, "x", "y")


def _third(a: str, b: str) -> str:
    return next(c for c in COPIES if c not in (a, b))


def _lif2fo(e: Expression, u: Universe, a: str, b: str) -> Formula:
    n = len(u)
    ca = lambda v: copy_name(a, u.index(v))  # noqa: E731
    cb = lambda v: copy_name(b, u.index(v))  # noqa: E731
    match e:
        case Id():
            return conj(*(Eq(copy_name(a, i), copy_name(b, i)) for i in range(n)))
        case Atom(name=m, inputs=xs, outputs=ys):
            rel = Rel(m, tuple(ca(x) for x in xs) + tuple(cb(y) for y in ys))
            keep = [v for v in u.vars if v not in set(ys)]
            return conj(rel, *(Eq(ca(v), cb(v)) for v in keep))
        case Union(left=l, right=r):
            return disj(_lif2fo(l, u, a, b), _lif2fo(r, u, a, b))
        case Intersect(left=l, right=r):
            return conj(_lif2fo(l, u, a, b), _lif2fo(r, u, a, b))
        case Difference(left=l, right=r):
            return conj(_lif2fo(l, u, a, b), Not(_lif2fo(r, u, a, b)))
        case Compose(left=l, right=r):
            w = _third(a, b)
            body: Formula = conj(_lif2fo(l, u, a, w), _lif2fo(r, u, w, b))
            for i in reversed(range(n)):
                body = Exists(copy_name(w, i), body)
            return body
        case Converse(child=c):
            return _lif2fo(c, u, b, a)
        case CylL(vars=z, child=c):
            body = _lif2fo(c, u, a, b)
            for v in reversed(u.ordered(z)):
                body = Exists(ca(v), body)
            return body
        case CylR(vars=z, child=c):
            body = _lif2fo(c, u, a, b)
            for v in reversed(u.ordered(z)):
                body = Exists(cb(v), body)
            return body
        case SelLR(x=x, y=y, child=c):
            return conj(_lif2fo(c, u, a, b), Eq(ca(x), cb(y)))
        case SelL(x=x, y=y, child=c):
            return conj(_lif2fo(c, u, a, b), Eq(ca(x), ca(y)))
        case SelR(x=x, y=y, child=c):
            return conj(_lif2fo(c, u, a, b), Eq(cb(x), cb(y)))
    raise TypeError(f"not an expression: {e!r}")


def pair_valuation(universe, v1, v2) -> dict:
    """FO valuation of the x- and y-copies for the pair ``(v1, v2)``."""
    u = as_universe(universe)
    nu = {copy_name("x", i): v1[i] for i in range(len(u))}
    nu.update({copy_name("y", i): v2[i] for i in range(len(u))})
    return nu


# ---------------------------------------------------------------------------
# s-expression syntax

_SEXP_TOKEN = re.compile(r"[()]|[^\s()]+")
_FO_KEYWORDS = {"and", "or", "not", "exists", "="}


def parse_fo(text: str) -> Formula:
    """Parse ``(exists x (and (R x) (= x y)))`` style formulas."""
    toks = [(m.group(), m.start()) for m in _SEXP_TOKEN.finditer(text)]
    pos = 0

    def err(msg: str, at: int | None = None):
        where = toks[at][1] if at is not None and at < len(toks) else len(text)
        raise LIFSyntaxError(msg, *_lc(text, where))

    def sexp():
        nonlocal pos
        if pos >= len(toks):
            err("unexpected end of input")
        tok, _ = toks[pos]
        if tok == ")":
            err("unexpected ')'", pos)
        pos += 1
        if tok != "(":
            return tok
        items = []
        while True:
            if pos >= len(toks):
                err("missing ')'")
            if toks[pos][0] == ")":
                pos += 1
                return items
            items.append(sexp())

    tree = sexp()
    if pos != len(toks):
        err(f"trailing input {toks[pos][0]!r}", pos)
    return _build(tree, err)


def _lc(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _atom_name(x, err) -> str:
    if not isinstance(x, str) or x in _FO_KEYWORDS:
        err(f"expected a variable, found {x!r}")
    return x


def _build(t, err) -> Formula:
    if not isinstance(t, list) or not t:
        err(f"expected a formula, found {t!r}")
    head, *rest = t
    if not isinstance(head, str):
        err("formula head must be a symbol")
    if head == "=":
        if len(rest) != 2:
            err("'=' takes two variables")
        return Eq(_atom_name(rest[0], err), _atom_name(rest[1], err))
    if head in ("and", "or"):
        if not rest:
            err(f"'{head}' needs at least one argument")
        cs = tuple(_build(c, err) for c in rest)
        return cs[0] if len(cs) == 1 else (And if head == "and" else Or)(cs)
    if head == "not":
        if len(rest) != 1:
            err("'not' takes one argument")
        return Not(_build(rest[0], err))
    if head == "exists":
        if len(rest) != 2:
            err("'exists' takes a variable and a formula")
        return Exists(_atom_name(rest[0], err), _build(rest[1], err))
    return Rel(head, tuple(_atom_name(x, err) for x in rest))


def render_fo(phi: Formula) -> str:
    match phi:
        case Eq(left=a, right=b):
            return f"(= {a} {b})"
        case Rel(name=r, args=xs):
            return f"({' '.join((r,) + tuple(xs))})"
        case Or(children=cs):
            return f"(or {' '.join(render_fo(c) for c in cs)})"
        case And(children=cs):
            return f"(and {' '.join(render_fo(c) for c in cs)})"
        case Not(child=c):
            return f"(not {render_fo(c)})"
        case Exists(var=v, child=c):
            return f"(exists {v} {render_fo(c)})"
    raise TypeError(f"not a formula: {phi!r}")
