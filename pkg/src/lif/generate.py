"""Seeded random generators for vocabularies, expressions, interpretations and formulas."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from math import comb, prod
from typing import Iterator, Sequence

from . import folink as fo
from .semantics import Domain, Interpretation
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
)

VAR_NAMES = ("x", "y", "z", "w", "v", "u")
MODULE_NAMES = ("P", "Q", "S", "T")


@dataclass(frozen=True)
class GenConfig:
    max_vars: int = 3
    max_domain: int = 3
    max_modules: int = 2
    max_arity: int = 3
    max_depth: int = 5
    max_rel_size: int = 3
    leaf_prob: float = 0.3


@dataclass(frozen=True)
class Instance:
    """One randomly drawn expression together with everything needed to evaluate it."""

    vocab: Vocabulary
    universe: Universe
    domain: Domain
    expr: Expression


def random_vocabulary(rng: random.Random, cfg: GenConfig = GenConfig(), iar_zero: bool = False) -> Vocabulary:
    k = rng.randint(1, cfg.max_modules)
    entries = {}
    for name in MODULE_NAMES[:k]:
        ar = rng.randint(0, cfg.max_arity)
        entries[name] = (ar, 0 if iar_zero else rng.randint(0, ar))
    return Vocabulary(entries)


def random_universe(rng: random.Random, cfg: GenConfig = GenConfig()) -> Universe:
    return Universe(VAR_NAMES[: rng.randint(1, cfg.max_vars)])


def random_domain(rng: random.Random, cfg: GenConfig = GenConfig()) -> Domain:
    return Domain(tuple(range(1, rng.randint(1, cfg.max_domain) + 1)))


def random_atom(rng: random.Random, vocab: Vocabulary, universe: Universe) -> Atom:
    name = rng.choice(list(vocab))
    ar, iar = vocab.arity(name), vocab.input_arity(name)
    vs = [rng.choice(universe.vars) for _ in range(ar)]
    return Atom(name, tuple(vs[:iar]), tuple(vs[iar:]))


def _var_subset(rng: random.Random, universe: Universe) -> frozenset[str]:
    k = rng.randint(1, len(universe))
    return frozenset(rng.sample(universe.vars, k))


_UNARY = ("conv", "cyl_l", "cyl_r", "sel_l", "sel_r", "sel_lr")
_BINARY = ("union", "intersect", "difference", "compose")


def apply_unary(rng: random.Random, op: str, child: Expression, universe: Universe) -> Expression:
    if op == "conv":
        return Converse(child)
    if op in ("cyl_l", "cyl_r"):
        return (CylL if op == "cyl_l" else CylR)(_var_subset(rng, universe), child)
    x, y = rng.choice(universe.vars), rng.choice(universe.vars)
    return {"sel_l": SelL, "sel_r": SelR, "sel_lr": SelLR}[op](x, y, child)


def apply_binary(op: str, left: Expression, right: Expression) -> Expression:
    return {"union": Union, "intersect": Intersect, "difference": Difference, "compose": Compose}[op](left, right)


def random_expression(
    rng: random.Random,
    vocab: Vocabulary,
    universe: Universe,
    max_depth: int = 5,
    leaf_prob: float = 0.3,
    binary_ops: Sequence[str] = _BINARY,
    min_depth: int = 0,
) -> Expression:
    if max_depth <= 0 or (min_depth <= 0 and rng.random() < leaf_prob):
        return Id() if rng.random() < 0.15 else random_atom(rng, vocab, universe)
    sub = lambda: random_expression(rng, vocab, universe, max_depth - 1, leaf_prob, binary_ops, min_depth - 1)  # noqa: E731
    if rng.random() < 0.5:
        return apply_unary(rng, rng.choice(_UNARY), sub(), universe)
    op = rng.choice(binary_ops)
    return apply_binary(op, sub(), sub())


def random_instance(rng: random.Random, cfg: GenConfig = GenConfig()) -> Instance:
    vocab = random_vocabulary(rng, cfg)
    universe = random_universe(rng, cfg)
    domain = random_domain(rng, cfg)
    expr = random_expression(rng, vocab, universe, cfg.max_depth, cfg.leaf_prob, min_depth=1)
    return Instance(vocab, universe, domain, expr)


# ---------------------------------------------------------------------------
# interpretations


def random_relation(rng: random.Random, arity: int, domain: Domain, max_size: int) -> frozenset[tuple]:
    space = list(product(domain.elements, repeat=arity))
    k = rng.randint(0, min(max_size, len(space)))
    return frozenset(rng.sample(space, k))


def random_interpretation(rng: random.Random, vocab: Vocabulary, domain: Domain, max_size: int = 3) -> Interpretation:
    return Interpretation({m: random_relation(rng, vocab.arity(m), domain, max_size) for m in vocab})


def random_family(rng: random.Random, vocab: Vocabulary, domain: Domain, count: int, max_size: int = 3) -> list[Interpretation]:
    return [random_interpretation(rng, vocab, domain, max_size) for _ in range(count)]


def small_relations(arity: int, domain: Domain, max_size: int) -> list[frozenset[tuple]]:
    """All relations with at most ``max_size`` tuples, smallest first, in a fixed order."""
    space = list(product(domain.elements, repeat=arity))
    out = []
    for k in range(min(max_size, len(space)) + 1):
        out.extend(frozenset(c) for c in combinations(space, k))
    return out


def count_small_relations(arity: int, domain_size: int, max_size: int) -> int:
    n = domain_size**arity
    return sum(comb(n, k) for k in range(min(max_size, n) + 1))


def default_family(
    vocab: Vocabulary,
    domain: Domain,
    max_size: int = 2,
    budget: int = 10_000,
    seed: int = 0,
) -> Iterator[Interpretation]:
    """Every interpretation whose relations have at most ``max_size`` tuples.

    When there are more than ``budget`` of them, a deterministic sample of
    ``budget`` distinct ones (drawn with ``seed``) is produced instead.
    """
    names = list(vocab)
    per = [small_relations(vocab.arity(m), domain, max_size) for m in names]
    total = prod(len(p) for p in per)
    if total <= budget:
        for combo in product(*per):
            yield Interpretation(dict(zip(names, combo)))
        return
    rng = random.Random(seed)
    for flat in sorted(rng.sample(range(total), budget)):
        combo = []
        for rels in reversed(per):
            flat, r = divmod(flat, len(rels))
            combo.append(rels[r])
        yield Interpretation(dict(zip(names, reversed(combo))))


def family_size(vocab: Vocabulary, domain: Domain, max_size: int = 2, budget: int = 10_000) -> int:
    total = prod(count_small_relations(vocab.arity(m), len(domain), max_size) for m in vocab)
    return min(total, budget)


# ---------------------------------------------------------------------------
# precision shapes


def atom_shapes(name: str, arity: int, universe: Universe) -> list[Atom]:
    out = []
    for iar in range(arity + 1):
        for vs in product(universe.vars, repeat=arity):
            out.append(Atom(name, vs[:iar], vs[iar:]))
    return out


def precision_shapes(
    rng: random.Random,
    universe: Universe,
    count: int = 200,
    max_arity: int = 2,
    extra_atomic_arity: int = 3,
    extra_atomic: int = 10,
) -> list[Expression]:
    """A sample of atoms, unary operators on an atom, and binary operators on
    two atoms with distinct module names.

    Atoms have arity at most ``max_arity`` so that every relation with at most
    two tuples can be enumerated; ``extra_atomic`` further plain atoms of
    arity ``extra_atomic_arity`` are added.
    """
    p_atoms = [a for ar in range(max_arity + 1) for a in atom_shapes("P", ar, universe)]
    q_atoms = [a for ar in range(max_arity + 1) for a in atom_shapes("Q", ar, universe)]
    shapes: list[Expression] = []
    seen = set()

    def add(e):
        if e not in seen:
            seen.add(e)
            shapes.append(e)

    n_atomic = max(1, count // 5)
    n_unary = max(1, (count - n_atomic - extra_atomic) // 2)
    n_binary = count - n_atomic - n_unary - extra_atomic
    for a in rng.sample(p_atoms, min(n_atomic, len(p_atoms))):
        add(a)
    big = atom_shapes("P", extra_atomic_arity, universe)
    for a in rng.sample(big, min(extra_atomic, len(big))):
        add(a)
    while len(shapes) < n_atomic + extra_atomic + n_unary:
        add(apply_unary_single(rng, rng.choice(_UNARY), rng.choice(p_atoms), universe))
    while len(shapes) < n_atomic + extra_atomic + n_unary + n_binary:
        add(apply_binary(rng.choice(_BINARY), rng.choice(p_atoms), rng.choice(q_atoms)))
    return shapes


def apply_unary_single(rng: random.Random, op: str, child: Expression, universe: Universe) -> Expression:
    """Like ``apply_unary`` but cylindrifies a single variable."""
    if op in ("cyl_l", "cyl_r"):
        return (CylL if op == "cyl_l" else CylR)(frozenset({rng.choice(universe.vars)}), child)
    return apply_unary(rng, op, child, universe)


def shape_vocabulary(e: Expression) -> Vocabulary:
    """The vocabulary implied by the atoms of a shape."""
    entries = {}
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            entries[node.name] = (len(node.inputs) + len(node.outputs), len(node.inputs))
        for attr in ("left", "right", "child"):
            if hasattr(node, attr):
                stack.append(getattr(node, attr))
    return Vocabulary(entries) if entries else Vocabulary({"P": (0, 0)})


# ---------------------------------------------------------------------------
# FO formulas


def random_formula(rng: random.Random, vocab: Vocabulary, variables: Sequence[str], depth: int = 3) -> fo.Formula:
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.35:
            return fo.Eq(rng.choice(variables), rng.choice(variables))
        name = rng.choice(list(vocab))
        return fo.Rel(name, tuple(rng.choice(variables) for _ in range(vocab.arity(name))))
    kind = rng.choice(("and", "or", "not", "exists"))
    if kind == "not":
        return fo.Not(random_formula(rng, vocab, variables, depth - 1))
    if kind == "exists":
        return fo.Exists(rng.choice(variables), random_formula(rng, vocab, variables, depth - 1))
    cs = (random_formula(rng, vocab, variables, depth - 1), random_formula(rng, vocab, variables, depth - 1))
    return (fo.And if kind == "and" else fo.Or)(cs)
