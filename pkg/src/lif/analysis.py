"""Compositional syntactic inputs and outputs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

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
)


@dataclass(frozen=True)
class IOReport:
    inputs: frozenset[str]
    outputs: frozenset[str]

    @property
    def fvars(self) -> frozenset[str]:
        return self.inputs | self.outputs

    def to_json(self) -> dict:
        return {
            "inputs": sorted(self.inputs),
            "outputs": sorted(self.outputs),
            "fvars": sorted(self.fvars),
        }


EMPTY = frozenset()


@lru_cache(maxsize=1 << 14)
def syn_io(e: Expression) -> IOReport:
    match e:
        case Id():
            return IOReport(EMPTY, EMPTY)
        case Atom(inputs=xs, outputs=ys):
            return IOReport(frozenset(xs), frozenset(ys))
        case Union(left=l, right=r) | Intersect(left=l, right=r) | Difference(left=l, right=r):
            a, b = syn_io(l), syn_io(r)
            ins = a.inputs | b.inputs | (a.outputs ^ b.outputs)
            if isinstance(e, Union):
                outs = a.outputs | b.outputs
            elif isinstance(e, Intersect):
                outs = a.outputs & b.outputs
            else:
                outs = a.outputs
            return IOReport(ins, outs)
        case Compose(left=l, right=r):
            a, b = syn_io(l), syn_io(r)
            return IOReport(a.inputs | (b.inputs - a.outputs), a.outputs | b.outputs)
        case Converse(child=c):
            a = syn_io(c)
            return IOReport(a.outputs | a.inputs, a.outputs)
        case CylL(vars=z, child=c):
            a = syn_io(c)
            return IOReport(a.inputs - z, a.outputs | z)
        case CylR(vars=z, child=c):
            a = syn_io(c)
            return IOReport(a.inputs, a.outputs | z)
        case SelLR(x=x, y=y, child=c):
            a = syn_io(c)
            if x == y and y not in a.outputs:
                ins = a.inputs
            elif x != y and y not in a.outputs:
                ins = a.inputs | {x, y}
            else:
                ins = a.inputs | {x}
            outs = a.outputs - {x} if x == y else a.outputs
            return IOReport(frozenset(ins), frozenset(outs))
        case SelL(x=x, y=y, child=c):
            a = syn_io(c)
            ins = a.inputs if x == y else a.inputs | {x, y}
            return IOReport(ins, a.outputs)
        case SelR(x=x, y=y, child=c):
            a = syn_io(c)
            ins = a.inputs if x == y else a.inputs | ({x, y} - a.outputs)
            return IOReport(ins, a.outputs)
    raise TypeError(f"not an expression: {e!r}")


def inputs(e: Expression) -> frozenset[str]:
    return syn_io(e).inputs


def outputs(e: Expression) -> frozenset[str]:
    return syn_io(e).outputs


def fvars(e: Expression) -> frozenset[str]:
    return syn_io(e).fvars


def is_io_disjoint(e: Expression) -> bool:
    r = syn_io(e)
    return not (r.inputs & r.outputs)
