"""Brute-force, per-interpretation semantic checks.

Semantic inputs and outputs are undecidable in general, so everything here is
relative to a finite family of interpretations: ``witness_outputs`` and
``witness_inputs`` return under-approximations of the semantic sets, each
variable backed by a concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .semantics import BRV, Interpretation, as_domain, evaluate
from .syntax import Expression, Universe, as_universe


@dataclass(frozen=True)
class WitnessReport:
    variable: str
    interpretation: int  # index into the supplied family
    pair: tuple[tuple, tuple]
    value: object = None  # the substituted value d, input witnesses only

    def to_json(self, universe: Universe) -> dict:
        v1, v2 = self.pair
        out = {
            "variable": self.variable,
            "interpretation": self.interpretation,
            "pair": [dict(zip(universe.vars, v1)), dict(zip(universe.vars, v2))],
        }
        if self.value is not None:
            out["value"] = self.value
        return out


@dataclass
class Witnesses:
    variables: frozenset[str] = frozenset()
    reports: dict[str, WitnessReport] = field(default_factory=dict)
    interpretations_checked: int = 0


def _decode(a: BRV, idx: Sequence[int]) -> tuple[tuple, tuple]:
    els = a.domain.elements
    vals = tuple(els[i] for i in idx)
    return vals[: a.n], vals[a.n :]


# ---------------------------------------------------------------------------
# per-BRV primitives


def changed_variable_witness(a: BRV, v: str) -> tuple[tuple, tuple] | None:
    """Some pair of ``a`` with a different value for ``v`` on each side."""
    n, d = a.n, len(a.domain)
    i = a.universe.index(v)
    left = np.arange(d).reshape([d if k == i else 1 for k in range(2 * n)])
    right = np.arange(d).reshape([d if k == n + i else 1 for k in range(2 * n)])
    hits = np.argwhere(a.table & (left != right))
    return _decode(a, hits[0]) if len(hits) else None


def _project_right(a: BRV, keep: Iterable[str]) -> tuple[np.ndarray, list[int]]:
    """Existentially drop right-side axes outside ``keep``; return the tensor and kept positions."""
    n = a.n
    kept = sorted(a.universe.index(v) for v in set(keep))
    drop = tuple(n + i for i in range(n) if i not in kept)
    return (a.table.any(axis=drop) if drop else a.table), kept


def input_witness(a: BRV, v: str, agree_on: Iterable[str]):
    """Find ``(pair, d)`` such that no pair starting at ``v1[v:d]`` agrees with ``v2``
    on ``agree_on``.  Returns ``None`` when there is no such witness in ``a``."""
    n, d = a.n, len(a.domain)
    proj, kept = _project_right(a, agree_on)
    i = a.universe.index(v)
    for k in range(d):
        moved = np.take(proj, [k], axis=i)  # proj at v1[v:k], broadcast over v1(v)
        hits = np.argwhere(proj & ~moved)
        if len(hits):
            head = hits[0]
            v1_idx = tuple(head[:n])
            # recover a full right valuation consistent with the projected one
            right = a.table[v1_idx]
            for pos, val in zip(kept, head[n:]):
                right = np.take(right, [val], axis=pos)
            j = np.argwhere(right)[0]
            v2_idx = [int(x) for x in j]
            for pos, val in zip(kept, head[n:]):
                v2_idx[pos] = int(val)
            return _decode(a, v1_idx + tuple(v2_idx)), a.domain.elements[k]
    return None


def brv_determines(a: BRV, xs: Iterable[str], ys: Iterable[str]) -> bool:
    """Whether agreement with the left valuation on ``xs`` suffices to reproduce
    the right valuation on ``ys``."""
    proj, _ = _project_right(a, ys)
    xi = {a.universe.index(x) for x in xs}
    free = tuple(i for i in range(a.n) if i not in xi)
    if not free:
        return True
    return bool(np.array_equal(proj.all(axis=free), proj.any(axis=free)))


def brv_inertial_on(a: BRV, xs: Iterable[str]) -> bool:
    return all(changed_variable_witness(a, x) is None for x in set(xs))


def brv_inertially_cylindrified(a: BRV, xs: Iterable[str]) -> bool:
    n, d = a.n, len(a.domain)
    idx = sorted(a.universe.index(x) for x in set(xs))
    if not idx:
        return True
    k = len(idx)
    rest = [i for i in range(n) if i not in idx] + [n + i for i in range(n) if i not in idx]
    t = a.table.transpose(idx + [n + i for i in idx] + rest)
    grids = [np.arange(d).reshape([d if j == m else 1 for j in range(k)]) for m in range(k)]
    diag = t[tuple(grids + grids)]  # shape (d,)*k + rest, X-values equal on both sides
    if diag.sum() != a.table.sum():
        return False  # some X variable changes value
    over = tuple(range(k))
    return bool(np.array_equal(diag.all(axis=over), diag.any(axis=over)))


# ---------------------------------------------------------------------------
# expression-level checks over interpretation families


def witness_outputs(
    expr: Expression,
    interps: Sequence[Interpretation],
    universe,
    domain,
    stop_at: Iterable[str] | None = None,
) -> Witnesses:
    """Variables that some interpretation in ``interps`` lets ``expr`` change.

    With ``stop_at`` the scan ends as soon as every variable in it is found.
    """
    u, dom = as_universe(universe), as_domain(domain)
    target = frozenset(stop_at) if stop_at is not None else None
    found: dict[str, WitnessReport] = {}
    checked = 0
    for k, D in enumerate(interps):
        checked += 1
        a = evaluate(expr, D, u, dom)
        if not a:
            continue
        for v in u.vars:
            if v in found:
                continue
            w = changed_variable_witness(a, v)
            if w is not None:
                found[v] = WitnessReport(v, k, w)
        if target is not None and target <= found.keys():
            break
    return Witnesses(frozenset(found), dict(sorted(found.items())), checked)


def witness_inputs(
    expr: Expression,
    interps: Sequence[Interpretation],
    universe,
    domain,
    outputs: Iterable[str] | None = None,
    stop_at: Iterable[str] | None = None,
) -> Witnesses:
    """Variables whose left value provably matters for the outputs.

    ``outputs`` is the agreement set; by default it is ``witness_outputs`` over
    the same family.  Agreeing on a smaller set than the true semantic outputs
    only makes a counterexample harder to find, so every reported variable is a
    genuine semantic input.
    """
    u, dom = as_universe(universe), as_domain(domain)
    interps = list(interps)
    if outputs is None:
        outputs = witness_outputs(expr, interps, u, dom).variables
    outputs = frozenset(outputs)
    target = frozenset(stop_at) if stop_at is not None else None
    found: dict[str, WitnessReport] = {}
    checked = 0
    for k, D in enumerate(interps):
        checked += 1
        a = evaluate(expr, D, u, dom)
        if not a:
            continue
        for v in u.vars:
            if v in found:
                continue
            w = input_witness(a, v, outputs)
            if w is not None:
                pair, value = w
                found[v] = WitnessReport(v, k, pair, value)
        if target is not None and target <= found.keys():
            break
    return Witnesses(frozenset(found), dict(sorted(found.items())), checked)


def determines(expr: Expression, interp: Interpretation, xs, ys, universe, domain) -> bool:
    return brv_determines(evaluate(expr, interp, universe, domain), xs, ys)


def inertially_cylindrified(expr: Expression, interp: Interpretation, xs, universe, domain) -> bool:
    return brv_inertially_cylindrified(evaluate(expr, interp, universe, domain), xs)


def has_inertia_outside(a: BRV, zs: Iterable[str]) -> bool:
    zs = set(zs)
    return brv_inertial_on(a, [v for v in a.universe.vars if v not in zs])
