#!/usr/bin/env python3
"""Show why eliminating a self-composition needs a fresh variable.

P1(x;x) increments x.  Composing it with itself adds two, but the direct
intersection formula only applies when the right operand has no variable
that is both input and output, so it gives the wrong answer here.  Renaming
through a fresh variable fixes that.
"""

from lif.errors import PreconditionError
from lif.rewrite import FreshVarSupply, compose_io_disjoint, eliminate_compositions
from lif.semantics import Domain, Interpretation, evaluate, restrict
from lif.syntax import Universe, parse_expression, parse_vocabulary, render

vocab = parse_vocabulary("P1/2 in 1\n")
succ = Interpretation({"P1": {(0, 1), (1, 2), (2, 3)}})
dom = Domain((0, 1, 2, 3))
u = Universe(("x",))


def show(label, expr, universe):
    pairs = sorted(restrict(evaluate(expr, succ, universe, dom), ["x"]))
    print(f"{label:10s} {render(expr)}\n{'':10s} -> {[(p[0], q[0]) for p, q in pairs]}")


twice = parse_expression("P1(x;x) ; P1(x;x)", vocab)
show("composed", twice, u)

naive = parse_expression("cyl_r{x}(P1(x;x)) & cyl_l{x}(P1(x;x))", vocab)
show("naive", naive, u)

try:
    compose_io_disjoint(twice.left, twice.right)
except PreconditionError as exc:
    print(f"{'':10s} (direct formula refuses: {exc})")

supply = FreshVarSupply(u)
out, ext = eliminate_compositions(twice, supply)
print(f"fresh variables: {supply.issued}")
show("rewritten", out, ext)
