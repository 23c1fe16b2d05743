"""Reference evaluator over explicit sets of valuation pairs.

Deliberately slow and literal: every operator is a comprehension over all
valuations, with no shared code from the package besides the AST classes.
"""

from itertools import product

from lif.syntax import (
    Atom,
    Compose,
    Converse,
    CylL,
    CylR,
    Difference,
    Id,
    Intersect,
    SelL,
    SelLR,
    SelR,
    Union,
)


def valuations(universe, domain):
    return [dict(zip(universe, vs)) for vs in product(domain, repeat=len(universe))]


def key(nu, universe):
    return tuple(nu[v] for v in universe)


def agree_outside(a, b, zs, universe):
    return all(a[v] == b[v] for v in universe if v not in zs)


def naive_eval(e, rels, universe, domain):
    """Set of ``(tuple, tuple)`` pairs, valuations listed in ``universe`` order."""
    vals = valuations(universe, domain)
    k = lambda nu: key(nu, universe)  # noqa: E731

    def ev(e):
        if isinstance(e, Id):
            return {(k(n), k(n)) for n in vals}
        if isinstance(e, Atom):
            out = set()
            for n1 in vals:
                for n2 in vals:
                    t = tuple(n1[x] for x in e.inputs) + tuple(n2[y] for y in e.outputs)
                    if t in rels[e.name] and agree_outside(n1, n2, set(e.outputs), universe):
                        out.add((k(n1), k(n2)))
            return out
        if isinstance(e, Union):
            return ev(e.left) | ev(e.right)
        if isinstance(e, Intersect):
            return ev(e.left) & ev(e.right)
        if isinstance(e, Difference):
            return ev(e.left) - ev(e.right)
        if isinstance(e, Compose):
            a, b = ev(e.left), ev(e.right)
            return {(p, r) for p, q in a for q2, r in b if q == q2}
        if isinstance(e, Converse):
            return {(q, p) for p, q in ev(e.child)}
        if isinstance(e, (CylL, CylR)):
            a = ev(e.child)
            out = set()
            for n1 in vals:
                for n2 in vals:
                    for m in vals:
                        if not agree_outside(m, n1 if isinstance(e, CylL) else n2, e.vars, universe):
                            continue
                        probe = (k(m), k(n2)) if isinstance(e, CylL) else (k(n1), k(m))
                        if probe in a:
                            out.add((k(n1), k(n2)))
                            break
            return out
        pos = {v: i for i, v in enumerate(universe)}
        a = ev(e.child)
        i, j = pos[e.x], pos[e.y]
        if isinstance(e, SelL):
            return {(p, q) for p, q in a if p[i] == p[j]}
        if isinstance(e, SelR):
            return {(p, q) for p, q in a if q[i] == q[j]}
        if isinstance(e, SelLR):
            return {(p, q) for p, q in a if p[i] == q[j]}
        raise TypeError(e)

    return ev(e)
