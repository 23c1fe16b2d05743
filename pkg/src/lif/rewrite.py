"""Semantics-preserving rewrites.

* ``expand_redundant`` removes derived operators (right/left selection,
  intersection, right cylindrification) in favour of the core ones.
* ``compose_io_disjoint`` replaces ``a ; b`` by a composition-free expression
  when ``b`` has disjoint syntactic inputs and outputs.
* ``build_move`` expresses the right move operator with selections and
  cylindrifications.
* ``eliminate_compositions`` combines the two, renaming the outputs of the
  second operand to fresh variables whenever it is not io-disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .analysis import is_io_disjoint, syn_io
from .errors import FreshVariableError, PreconditionError
from .semantics import BRV
from .syntax import (
    FRESH_MARK,
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
    as_universe,
    has_compose,
    variables,
)

ALL_DERIVED = frozenset({"sel_r", "sel_l", "intersect", "cyl_r"})


# ---------------------------------------------------------------------------
# redundant operators


def expand_step(e: Expression, ops: Iterable[str] = ALL_DERIVED) -> Expression:
    """Rewrite the top-level node by its defining equation if its operator is in ``ops``.

    Derived operators introduced by the equation itself are expanded too when
    they are in ``ops``; the operands are left untouched.
    """
    ops = frozenset(ops)
    match e:
        case Intersect(left=a, right=b) if "intersect" in ops:
            return Difference(a, Difference(a, b))
        case SelR(x=x, y=y, child=a) if "sel_r" in ops:
            if x == y:
                return a
            zx = frozenset({x})
            inner = CylL(zx, SelLR(x, y, SelLR(x, x, CylL(zx, a))))
            return expand_step(Intersect(a, inner), ops)
        case SelL(x=x, y=y, child=a) if "sel_l" in ops:
            if x == y:
                return a
            zx = frozenset({x})
            inner = expand_step(CylR(zx, SelLR(y, x, SelLR(x, x, expand_step(CylR(zx, a), ops)))), ops)
            return expand_step(Intersect(a, inner), ops)
        case CylR(vars=z, child=a) if "cyl_r" in ops:
            return Converse(CylL(z, Converse(a)))
    return e


def expand_redundant(e: Expression, ops: Iterable[str] = ALL_DERIVED) -> Expression:
    """Bottom-up expansion of every operator named in ``ops``.

    The default removes all four derived operators, leaving id, atoms, union,
    difference, composition, converse, left cylindrification and
    left-to-right selection.
    """
    ops = frozenset(ops)
    unknown = ops - ALL_DERIVED
    if unknown:
        raise ValueError(f"cannot expand {sorted(unknown)}; choose from {sorted(ALL_DERIVED)}")
    return _expand(e, ops)


def _expand(e: Expression, ops: frozenset[str]) -> Expression:
    return expand_step(_map_children(e, lambda c: _expand(c, ops)), ops)


def _map_children(e: Expression, f) -> Expression:
    match e:
        case Union(left=l, right=r):
            return Union(f(l), f(r))
        case Intersect(left=l, right=r):
            return Intersect(f(l), f(r))
        case Difference(left=l, right=r):
            return Difference(f(l), f(r))
        case Compose(left=l, right=r):
            return Compose(f(l), f(r))
        case Converse(child=c):
            return Converse(f(c))
        case CylL(vars=z, child=c):
            return CylL(z, f(c))
        case CylR(vars=z, child=c):
            return CylR(z, f(c))
        case SelL(x=x, y=y, child=c):
            return SelL(x, y, f(c))
        case SelR(x=x, y=y, child=c):
            return SelR(x, y, f(c))
        case SelLR(x=x, y=y, child=c):
            return SelLR(x, y, f(c))
    return e


def redundancy_identities(a: Expression, x: str, y: str) -> list[tuple[str, Expression, Expression]]:
    """The defining equations of the derived operators, instantiated at ``a``, ``x``, ``y``."""
    zx = frozenset({x})
    return [
        ("cyl_r_via_conv", CylR(zx, a), Converse(CylL(zx, Converse(a)))),
        ("cyl_l_via_conv", CylL(zx, a), Converse(CylR(zx, Converse(a)))),
        ("sel_r", SelR(x, y, a), Intersect(a, CylL(zx, SelLR(x, y, SelLR(x, x, CylL(zx, a)))))),
        ("sel_l", SelL(x, y, a), Intersect(a, CylR(zx, SelLR(y, x, SelLR(x, x, CylR(zx, a)))))),
        ("sel_l_via_conv", SelL(x, y, a), Converse(SelR(x, y, Converse(a)))),
    ]


# ---------------------------------------------------------------------------
# composition of io-disjoint operands


def _cyl(cls, zs: frozenset[str], child: Expression) -> Expression:
    return cls(zs, child) if zs else child


def compose_io_disjoint(alpha: Expression, beta: Expression) -> Expression:
    """Composition-free equivalent of ``alpha ; beta``; requires ``beta`` io-disjoint."""
    if not is_io_disjoint(beta):
        r = syn_io(beta)
        raise PreconditionError(
            f"second operand is not io-disjoint (shared variables {sorted(r.inputs & r.outputs)}); "
            "use eliminate_compositions"
        )
    return Intersect(
        _cyl(CylR, syn_io(beta).outputs, alpha),
        _cyl(CylL, syn_io(alpha).outputs, beta),
    )


# ---------------------------------------------------------------------------
# move operator


def _check_move_tuples(xbar: Sequence[str], ybar: Sequence[str]) -> None:
    if len(xbar) != len(ybar):
        raise PreconditionError("move tuples must have the same length")
    if len(set(xbar)) != len(xbar) or len(set(ybar)) != len(ybar):
        raise PreconditionError("move tuples must consist of distinct variables")
    if set(xbar) & set(ybar):
        raise PreconditionError("move tuples must be disjoint")


def build_move(xbar: Sequence[str], ybar: Sequence[str], child: Expression) -> Expression:
    """``sel_lr{xbar=xbar} cyl_r{xbar} sel_r{xbar=ybar} cyl_r{ybar}(child)``.

    On every pair this copies the right values of ``xbar`` into ``ybar`` and
    restores ``xbar`` to its left values.
    """
    xbar, ybar = tuple(xbar), tuple(ybar)
    _check_move_tuples(xbar, ybar)
    if not xbar:
        return child
    e: Expression = CylR(frozenset(ybar), child)
    for x, y in reversed(list(zip(xbar, ybar))):
        e = SelR(x, y, e)
    e = CylR(frozenset(xbar), e)
    for x in reversed(xbar):
        e = SelLR(x, x, e)
    return e


def move_right(b: BRV, xbar: Sequence[str], ybar: Sequence[str]) -> BRV:
    """The right move computed pair by pair from its definition."""
    _check_move_tuples(xbar, ybar)
    u = b.universe
    xi = [u.index(x) for x in xbar]
    yi = [u.index(y) for y in ybar]
    out = set()
    for v1, v2 in b.pairs():
        new = list(v2)
        for i, j in zip(xi, yi):
            new[j] = v2[i]
            new[i] = v1[i]
        out.add((v1, tuple(new)))
    return BRV.from_pairs(u, b.domain, out)


# ---------------------------------------------------------------------------
# full composition elimination


@dataclass
class FreshVarSupply:
    base: Universe
    counter: int = 0
    issued: list[str] = field(default_factory=list)
    limit: int | None = None  # cap on issued variables (bounded-variable regime)

    def __post_init__(self):
        self.base = as_universe(self.base)

    def fresh(self, stem: str) -> str:
        if self.limit is not None and len(self.issued) >= self.limit:
            raise FreshVariableError(
                f"fresh variables exhausted: at most {self.limit} extra variable(s) allowed"
            )
        stem = stem.split(FRESH_MARK, 1)[0]
        while True:
            name = f"{stem}{FRESH_MARK}{self.counter}"
            self.counter += 1
            if name not in self.base and name not in self.issued:
                break
        self.issued.append(name)
        return name

    @property
    def universe(self) -> Universe:
        return self.base.extend(self.issued)


def eliminate_compositions(expr: Expression, supply: FreshVarSupply) -> tuple[Expression, Universe]:
    """Rewrite ``expr`` into an equivalent expression without composition.

    Compositions are removed innermost-leftmost.  When the right operand
    ``b`` is io-disjoint the direct formula applies; otherwise the outputs
    ``xs`` of ``b`` are first moved to fresh variables ``ys``::

        mv{ys -> xs}( compose_io_disjoint(a, mv{xs -> ys}(b)) )

    Returns the rewritten expression and the universe extended with every
    fresh variable issued.
    """
    missing = variables(expr) - set(supply.base.vars) - set(supply.issued)
    if missing:
        raise PreconditionError(f"variables {sorted(missing)} are not in the base universe")
    out = _elim(expr, supply)
    assert not has_compose(out)
    return out, supply.universe


def _elim(e: Expression, supply: FreshVarSupply) -> Expression:
    e = _map_children(e, lambda c: _elim(c, supply))
    if not isinstance(e, Compose):
        return e
    alpha, beta = e.left, e.right
    if is_io_disjoint(beta):
        return compose_io_disjoint(alpha, beta)
    u = supply.universe
    xs = u.ordered(syn_io(beta).outputs)
    ys = tuple(supply.fresh(x) for x in xs)
    moved = build_move(xs, ys, beta)
    return build_move(ys, xs, compose_io_disjoint(alpha, moved))
