"""Randomized and exhaustive property suites.

Each suite is deterministic given its seed and returns a ``SuiteReport``
whose JSON form contains no timing information, so reruns are
byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import folink as fo
from .analysis import is_io_disjoint, syn_io
from .errors import PreconditionError
from .constructions import CliqueSpec, build_alpha_exists_3n, complete_graph, make_graph
from .generate import (
    GenConfig,
    default_family,
    precision_shapes,
    random_domain,
    random_expression,
    random_family,
    random_formula,
    random_instance,
    random_interpretation,
    random_universe,
    random_vocabulary,
    shape_vocabulary,
    small_relations,
)
from .oracle import (
    brv_determines,
    brv_inertially_cylindrified,
    changed_variable_witness,
    witness_inputs,
    witness_outputs,
)
from .rewrite import (
    FreshVarSupply,
    build_move,
    compose_io_disjoint,
    eliminate_compositions,
    move_right,
    redundancy_identities,
)
from .semantics import BRV, Domain, Interpretation, brv_difference, brv_intersect, evaluate, restrict
from .syntax import Atom, Compose, Intersect, Universe, Vocabulary, has_compose, render

MAX_RECORDED = 10


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int = 0
    checks: int = 0
    violations: int = 0
    examples: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def fail(self, **info) -> None:
        self.violations += 1
        if len(self.examples) < MAX_RECORDED:
            self.examples.append(info)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "checks": self.checks,
            "violations": self.violations,
            "ok": self.ok,
            "examples": self.examples,
            **({"details": self.details} if self.details else {}),
        }


def _interp_json(d: Interpretation) -> dict:
    return d.to_json()["relations"]


# ---------------------------------------------------------------------------
# semantic invariants over random expressions


def _per_interpretation_suite(name: str, check: Callable[[BRV, object], str | None]):
    def suite(seed: int = 0, count: int = 1000, interps: int = 10, cfg: GenConfig = GenConfig()) -> SuiteReport:
        rng = random.Random(seed)
        rep = SuiteReport(name, seed)
        for _ in range(count):
            inst = random_instance(rng, cfg)
            io = syn_io(inst.expr)
            rep.cases += 1
            for _ in range(interps):
                d = random_interpretation(rng, inst.vocab, inst.domain, cfg.max_rel_size)
                a = evaluate(inst.expr, d, inst.universe, inst.domain)
                rep.checks += 1
                problem = check(a, io)
                if problem is not None:
                    rep.fail(
                        expr=render(inst.expr),
                        universe=list(inst.universe.vars),
                        domain=list(inst.domain.elements),
                        relations=_interp_json(d),
                        problem=problem,
                    )
        return rep

    suite.__name__ = f"{name.replace('-', '_')}_suite"
    return suite


def _inertia_check(a: BRV, io) -> str | None:
    for v in a.universe.vars:
        if v in io.outputs:
            continue
        w = changed_variable_witness(a, v)
        if w is not None:
            return f"{v} changes on {w}"
    return None


def _determinacy_check(a: BRV, io) -> str | None:
    return None if brv_determines(a, io.inputs, io.outputs) else "inputs do not determine outputs"


def _free_variable_check(a: BRV, io) -> str | None:
    rest = [v for v in a.universe.vars if v not in io.fvars]
    return None if brv_inertially_cylindrified(a, rest) else f"not inertially cylindrified on {rest}"


inertia_suite = _per_interpretation_suite("inertia", _inertia_check)
determinacy_suite = _per_interpretation_suite("determinacy", _determinacy_check)
free_variable_suite = _per_interpretation_suite("free-variable", _free_variable_check)


def soundness_suite(seed: int = 0, count: int = 500, family: int = 20, cfg: GenConfig = GenConfig()) -> SuiteReport:
    """Witnessed semantic outputs/inputs never exceed the syntactic ones."""
    rng = random.Random(seed)
    rep = SuiteReport("soundness", seed)
    for _ in range(count):
        inst = random_instance(rng, cfg)
        fam = random_family(rng, inst.vocab, inst.domain, family, cfg.max_rel_size)
        io = syn_io(inst.expr)
        outs = witness_outputs(inst.expr, fam, inst.universe, inst.domain)
        ins = witness_inputs(inst.expr, fam, inst.universe, inst.domain, outputs=outs.variables)
        rep.cases += 1
        rep.checks += 2
        extra_o = outs.variables - io.outputs
        extra_i = ins.variables - io.inputs
        if extra_o or extra_i:
            rep.fail(
                expr=render(inst.expr),
                universe=list(inst.universe.vars),
                domain=list(inst.domain.elements),
                outputs_beyond_syntactic=sorted(extra_o),
                inputs_beyond_syntactic=sorted(extra_i),
            )
    return rep


# ---------------------------------------------------------------------------
# precision


PRECISION_UNIVERSE = Universe(("x", "y", "z"))
PRECISION_DOMAIN = Domain((1, 2, 3))


def precision_suite(seed: int = 0, count: int = 200, budget: int = 10_000, max_size: int = 2) -> SuiteReport:
    """Every syntactic output and input of a simple shape has a concrete witness."""
    rng = random.Random(seed)
    rep = SuiteReport("precision", seed)
    u, dom = PRECISION_UNIVERSE, PRECISION_DOMAIN
    for shape in precision_shapes(rng, u, count):
        vocab = shape_vocabulary(shape)
        io = syn_io(shape)
        fam = list(default_family(vocab, dom, max_size=max_size, budget=budget, seed=seed))
        outs = witness_outputs(shape, fam, u, dom, stop_at=io.outputs)
        # agreement on the syntactic outputs: every one of them is witnessed above
        # (otherwise the shape already fails), so this is the semantic output set
        ins = witness_inputs(shape, fam, u, dom, outputs=outs.variables, stop_at=io.inputs)
        rep.cases += 1
        rep.checks += len(io.outputs) + len(io.inputs)
        miss_o, miss_i = io.outputs - outs.variables, io.inputs - ins.variables
        if miss_o or miss_i:
            rep.fail(
                expr=render(shape),
                missing_output_witnesses=sorted(miss_o),
                missing_input_witnesses=sorted(miss_i),
                interpretations=len(fam),
            )
    return rep


# ---------------------------------------------------------------------------
# redundancy equations


def redundancy_suite(seed: int = 0, max_arity: int = 2) -> SuiteReport:
    """Exhaustive check of the redundancy equations over two variables and two values.

    ``A`` ranges over every atom of a single module of arity at most
    ``max_arity`` (every input-arity split and argument tuple) under every
    relation; ``B`` in ``A & B = A \\ (A \\ B)`` ranges over the atoms of the
    same module.
    """
    rep = SuiteReport("redundancy", seed)
    u, dom = Universe(("x", "y")), Domain((1, 2))
    pairs = [(x, y) for x in u.vars for y in u.vars]
    for ar in range(max_arity + 1):
        for iar in range(ar + 1):
            atoms = [Atom("M", vs[:iar], vs[iar:]) for vs in product(u.vars, repeat=ar)]
            for rel in small_relations(ar, dom, len(dom) ** ar):
                d = Interpretation({"M": rel})
                vals = {a: evaluate(a, d, u, dom) for a in atoms}
                for a in atoms:
                    rep.cases += 1
                    for x, y in pairs:
                        for name, lhs, rhs in redundancy_identities(a, x, y):
                            rep.checks += 1
                            if evaluate(lhs, d, u, dom) != evaluate(rhs, d, u, dom):
                                rep.fail(equation=name, expr=render(lhs), relation=sorted(rel))
                    for b in atoms:
                        rep.checks += 1
                        lhs = brv_intersect(vals[a], vals[b])
                        rhs = brv_difference(vals[a], brv_difference(vals[a], vals[b]))
                        if lhs != rhs:
                            rep.fail(equation="intersect", expr=render(Intersect(a, b)), relation=sorted(rel))
    return rep


# ---------------------------------------------------------------------------
# rewrites


def _pick_domain(n_vars: int) -> Domain | None:
    if 3 ** (2 * n_vars) <= 3**12:
        return Domain((0, 1, 2))
    if 2 ** (2 * n_vars) <= 2**20:
        return Domain((0, 1))
    return None


def io_disjoint_suite(seed: int = 0, count: int = 200, interps: int = 5, max_depth: int = 3) -> SuiteReport:
    """``a ; b`` against its composition-free form whenever ``b`` is io-disjoint."""
    rng = random.Random(seed)
    rep = SuiteReport("io-disjoint", seed)
    cfg = GenConfig(max_depth=max_depth)
    while rep.cases < count:
        vocab = random_vocabulary(rng, cfg)
        u = random_universe(rng, cfg)
        dom = random_domain(rng, cfg)
        alpha = random_expression(rng, vocab, u, max_depth)
        beta = random_expression(rng, vocab, u, max_depth)
        if not is_io_disjoint(beta):
            continue
        rep.cases += 1
        rewritten = compose_io_disjoint(alpha, beta)
        for _ in range(interps):
            d = random_interpretation(rng, vocab, dom, cfg.max_rel_size)
            rep.checks += 1
            if evaluate(Compose(alpha, beta), d, u, dom) != evaluate(rewritten, d, u, dom):
                rep.fail(alpha=render(alpha), beta=render(beta), universe=list(u.vars),
                         domain=list(dom.elements), relations=_interp_json(d))
    return rep


SUCCESSOR = Interpretation({"P1": frozenset({(0, 1), (1, 2), (2, 3)})})
SUCCESSOR_VOCAB = Vocabulary({"P1": (2, 1)})


def _elimination_case(rep: SuiteReport, rng: random.Random, expr, vocab, u: Universe, interps, fixed=None) -> bool:
    supply = FreshVarSupply(u)
    out, ext = eliminate_compositions(expr, supply)
    dom = fixed[1] if fixed else _pick_domain(len(ext))
    if dom is None:
        return False
    rep.cases += 1
    if has_compose(out):
        rep.fail(expr=render(expr), problem="composition left in output")
        return True
    ds = fixed[0] if fixed else [random_interpretation(rng, vocab, dom, 3) for _ in range(interps)]
    for d in ds:
        rep.checks += 1
        a, b = evaluate(expr, d, ext, dom), evaluate(out, d, ext, dom)
        same_ext = a == b
        same_base = restrict(a, u.vars) == restrict(b, u.vars)
        if not (same_ext and same_base):
            rep.fail(expr=render(expr), rewritten=render(out), universe=list(ext.vars),
                     domain=list(dom.elements), relations=_interp_json(d))
    rep.details.setdefault("fresh_variables", 0)
    rep.details["fresh_variables"] += len(ext) - len(u)
    return True


def elimination_suite(seed: int = 0, count: int = 200, interps: int = 3, max_depth: int = 4) -> SuiteReport:
    """Composition elimination: composition-free and equivalent on the original universe.

    Includes the self-composition of a non-io-disjoint increment, which can
    only be handled by renaming to a fresh variable.
    """
    rng = random.Random(seed)
    rep = SuiteReport("elimination", seed)
    inc = Atom("P1", ("x",), ("x",))
    twice = Compose(inc, inc)
    try:
        compose_io_disjoint(inc, inc)
        rep.fail(expr=render(twice), problem="direct formula accepted a non-io-disjoint operand")
    except PreconditionError:
        pass
    supply = FreshVarSupply(Universe(("x",)))
    _, ext = eliminate_compositions(twice, supply)
    rep.details["self_composition_fresh"] = list(ext.vars[1:])
    _elimination_case(rep, rng, twice, SUCCESSOR_VOCAB, Universe(("x",)), 1, fixed=([SUCCESSOR], Domain((0, 1, 2, 3))))
    _elimination_case(rep, rng, twice, SUCCESSOR_VOCAB, Universe(("x", "y")), 1, fixed=([SUCCESSOR], Domain((0, 1, 2, 3))))
    cfg = GenConfig(max_depth=max_depth)
    while rep.cases < count:
        vocab = random_vocabulary(rng, cfg)
        u = random_universe(rng, cfg)
        expr = random_expression(rng, vocab, u, max_depth)
        if not has_compose(expr):
            continue
        _elimination_case(rep, rng, expr, vocab, u, interps)
    return rep


def move_suite(seed: int = 0) -> SuiteReport:
    """The selection/cylindrification form of the right move against its definition.

    Every relation on valuations over ``{x, y}`` and ``{0, 1}`` is the
    semantics of the atom ``M(x,y;x,y)`` for a suitable ``D(M)``, so running
    over all ``2**16`` relations covers every such relation.
    """
    rep = SuiteReport("move", seed)
    u, dom = Universe(("x", "y")), Domain((0, 1))
    atom = Atom("M", ("x", "y"), ("x", "y"))
    space = list(product(dom.elements, repeat=4))
    moves = [(("x",), ("y",)), (("y",), ("x",))]
    exprs = [(xs, ys, build_move(xs, ys, atom)) for xs, ys in moves]
    for mask in range(1 << len(space)):
        rel = frozenset(t for i, t in enumerate(space) if mask >> i & 1)
        d = Interpretation({"M": rel})
        b = evaluate(atom, d, u, dom)
        rep.cases += 1
        for xs, ys, e in exprs:
            rep.checks += 1
            if evaluate(e, d, u, dom) != move_right(b, xs, ys):
                rep.fail(move=[list(xs), list(ys)], relation=sorted(rel))
    return rep


def rewrite_equivalence_suite(seed: int = 0, count: int = 200, exhaustive_move: bool = True) -> SuiteReport:
    parts = [io_disjoint_suite(seed, count), elimination_suite(seed, count)]
    if exhaustive_move:
        parts.append(move_suite(seed))
    return _merge("rewrite-equivalence", seed, parts)


def _merge(name: str, seed: int, parts: list[SuiteReport]) -> SuiteReport:
    rep = SuiteReport(name, seed)
    for p in parts:
        rep.cases += p.cases
        rep.checks += p.checks
        rep.violations += p.violations
        rep.examples.extend(dict(part=p.suite, **e) for e in p.examples)
        rep.details[p.suite] = p.to_json()
        rep.details[p.suite].pop("examples")
    rep.examples = rep.examples[:MAX_RECORDED]
    return rep


# ---------------------------------------------------------------------------
# FO bridge


def fo_embedding_suite(seed: int = 0, count: int = 200, depth: int = 3, interps: int = 3) -> SuiteReport:
    """An embedded formula denotes the diagonal of its satisfying valuations."""
    rng = random.Random(seed)
    rep = SuiteReport("fo-embedding", seed)
    cfg = GenConfig(max_arity=2)
    for _ in range(count):
        vocab = random_vocabulary(rng, cfg, iar_zero=True)
        u = random_universe(rng, cfg)
        phi = random_formula(rng, vocab, u.vars, depth)
        alpha = fo.fo_to_lif(phi, vocab)
        rep.cases += 1
        for size in (1, 2, 3):
            dom = Domain(tuple(range(1, size + 1)))
            for _ in range(interps):
                d = random_interpretation(rng, vocab, dom, 3)
                rep.checks += 1
                sat = [v for v in product(dom.elements, repeat=len(u))
                       if fo.fo_evaluate(phi, d, dict(zip(u.vars, v)), dom)]
                expected = BRV.from_pairs(u, dom, ((v, v) for v in sat))
                if evaluate(alpha, d, u, dom) != expected:
                    rep.fail(formula=fo.render_fo(phi), universe=list(u.vars),
                             domain=list(dom.elements), relations=_interp_json(d))
    return rep


def fo_translation_suite(seed: int = 0, count: int = 200, max_depth: int = 4, interps: int = 2) -> SuiteReport:
    """Pair membership agrees with satisfaction of the translated formula."""
    rng = random.Random(seed)
    rep = SuiteReport("fo-translation", seed)
    cfg = GenConfig(max_depth=max_depth)
    for _ in range(count):
        inst = random_instance(rng, cfg)
        phi = fo.lif_to_fo(inst.expr, inst.universe)
        n = len(inst.universe)
        used = fo.formula_variables(phi)
        rep.cases += 1
        allowed = {fo.copy_name(c, i) for c in fo.COPIES for i in range(n)}
        if not has_compose(inst.expr):
            allowed -= {fo.copy_name("z", i) for i in range(n)}
        rep.checks += 1
        if not used <= allowed:
            rep.fail(expr=render(inst.expr), problem=f"uses variables {sorted(used - allowed)}")
        for _ in range(interps):
            d = random_interpretation(rng, inst.vocab, inst.domain, 3)
            a = evaluate(inst.expr, d, inst.universe, inst.domain)
            members = set(a.pairs())
            for v1 in product(inst.domain.elements, repeat=n):
                for v2 in product(inst.domain.elements, repeat=n):
                    rep.checks += 1
                    holds = fo.fo_evaluate(phi, d, fo.pair_valuation(inst.universe, v1, v2), inst.domain)
                    if holds != ((v1, v2) in members):
                        rep.fail(expr=render(inst.expr), pair=[list(v1), list(v2)],
                                 relations=_interp_json(d), domain=list(inst.domain.elements))
                        break
    return rep


def fo_roundtrip_suite(seed: int = 0, count: int = 200) -> SuiteReport:
    return _merge("fo-roundtrip", seed, [fo_embedding_suite(seed, count), fo_translation_suite(seed, count)])


# ---------------------------------------------------------------------------
# cliques


def random_graph(rng: random.Random, max_vertices: int = 7):
    k = rng.randint(3, max_vertices)
    p = rng.uniform(0.6, 1.0)
    vs = list(range(1, k + 1))
    edges = [(a, b) for a in vs for b in vs if a < b and rng.random() < p]
    return make_graph(vs, edges)


def clique_suite(seed: int = 0, count: int = 100, max_vertices: int = 7) -> SuiteReport:
    """Nonemptiness of the composed clique expression against brute-force search (n = 2)."""
    rng = random.Random(seed)
    spec = CliqueSpec(2)
    expr = build_alpha_exists_3n(spec)
    rep = SuiteReport("clique", seed)
    k6 = complete_graph(6)
    missing = make_graph(k6.vertices, [tuple(e) for e in k6.edges if e != frozenset({1, 2})])
    fixed = [("K6", k6, True), ("K6-minus-edge", missing, False)]
    for label, g, expected in fixed:
        rep.cases += 1
        rep.checks += 1
        got = bool(evaluate(expr, g.interpretation(), spec.universe, g.domain))
        rep.details[label] = got
        if got != expected:
            rep.fail(graph=label, expected=expected, got=got)
    positives = 0
    for _ in range(count):
        g = random_graph(rng, max_vertices)
        expected = g.has_clique(3 * spec.n)
        positives += expected
        got = bool(evaluate(expr, g.interpretation(), spec.universe, g.domain))
        rep.cases += 1
        rep.checks += 1
        if got != expected:
            rep.fail(vertices=list(g.vertices), edges=sorted(sorted(e) for e in g.edges),
                     expected=expected, got=got)
    rep.details["random_graphs_with_clique"] = positives
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "inertia": inertia_suite,
    "determinacy": determinacy_suite,
    "free-variable": free_variable_suite,
    "soundness": soundness_suite,
    "precision": precision_suite,
    "redundancy": redundancy_suite,
    "rewrite-equivalence": rewrite_equivalence_suite,
    "fo-roundtrip": fo_roundtrip_suite,
    "clique": clique_suite,
}
