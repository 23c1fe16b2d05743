"""Command-line front end.

Every subcommand writes one JSON document to standard output (keys sorted,
no timings) and diagnostics to standard error.  Exit status is 0 on success,
1 on a domain error (bad expression, failed check, suite violations) and 2 on
a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import folink as fo
from .analysis import is_io_disjoint, syn_io
from .constructions import CliqueSpec, build_alpha_2n, build_alpha_exists_3n, load_graph
from .errors import LIFError
from .generate import default_family, family_size
from .oracle import witness_inputs, witness_outputs
from .rewrite import ALL_DERIVED, FreshVarSupply, eliminate_compositions, expand_redundant
from .semantics import Domain, Interpretation, evaluate, load_interpretation
from .suites import SUITES
from .syntax import (
    Universe,
    Vocabulary,
    check_expression,
    parse_expression,
    parse_vocabulary,
    render,
    to_json,
    variables,
)

DEFAULT_DOMAIN = (1, 2, 3)


class UsageError(Exception):
    pass


# inputs each subcommand cannot do without; "expr" means --expr or --expr-str
REQUIRED = {
    "parse": ("vocab", "expr"),
    "analyze": ("vocab", "expr"),
    "eval": ("vocab", "expr", "interp"),
    "check-equiv": ("vocab", "expr", "other"),
    "oracle": ("vocab", "expr"),
    "rewrite": ("vocab", "expr"),
    "to-fo": ("vocab", "expr"),
    "from-fo": ("formula",),
    "clique": (),
    "property-suite": (),
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    vocab: str | None = None
    expr: str | None = None
    interp: str | None = None
    graph: str | None = None
    universe: tuple[str, ...] | None = None
    seed: int = 0
    budget: int = 10_000
    compact: bool = False

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        for need in REQUIRED[args.command]:
            flag = need.replace("_", "-")
            if need in ("expr", "other", "formula"):
                given = [getattr(args, need, None), getattr(args, f"{need}_str", None)]
                if sum(g is not None for g in given) != 1:
                    raise UsageError(f"give exactly one of --{flag} FILE or --{flag}-str S")
            elif not getattr(args, need, None):
                raise UsageError(f"{args.command} needs --{flag}")
        if args.budget < 1:
            raise UsageError("--budget must be positive")
        uni = getattr(args, "universe", None)
        return cls(
            command=args.command,
            vocab=getattr(args, "vocab", None),
            expr=getattr(args, "expr", None),
            interp=getattr(args, "interp", None),
            graph=getattr(args, "graph", None),
            universe=_csv(uni) if uni else None,
            seed=args.seed,
            budget=args.budget,
            compact=args.json,
        )


# ---------------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _value(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        return tok


def _csv(text: str | None) -> tuple | None:
    if text is None:
        return None
    items = tuple(t.strip() for t in text.split(",") if t.strip())
    if not items:
        raise UsageError("empty list")
    return items


def _vocab(args) -> Vocabulary:
    if not args.vocab:
        raise UsageError("--vocab is required")
    return parse_vocabulary(_read(args.vocab))


def _expr_text(args, which: str = "expr") -> str:
    path, text = getattr(args, which, None), getattr(args, f"{which}_str", None)
    if (path is None) == (text is None):
        flag = which.replace("_", "-")
        raise UsageError(f"give exactly one of --{flag} FILE or --{flag}-str S")
    return _read(path) if path is not None else text


def _universe(args, *exprs) -> Universe:
    if args.universe:
        return Universe(_csv(args.universe))
    vs = sorted(set().union(*(variables(e) for e in exprs)))
    if not vs:
        raise UsageError("expression has no variables; give --universe")
    return Universe(tuple(vs))


def _parse(args, vocab: Vocabulary, which: str = "expr"):
    u = Universe(_csv(args.universe)) if args.universe else None
    e = parse_expression(_expr_text(args, which), vocab, u)
    check_expression(e, vocab, u)
    return e


def _interp(args) -> tuple[Interpretation | None, Domain | None]:
    if not getattr(args, "interp", None):
        return None, None
    return load_interpretation(_read(args.interp))


def _domain(args, fallback: Domain | None) -> Domain:
    if args.domain:
        return Domain(tuple(_value(t) for t in _csv(args.domain)))
    if fallback is not None:
        return fallback
    return Domain(DEFAULT_DOMAIN)


def _family(args, vocab: Vocabulary):
    """The interpretation(s) to check: ``--interp`` or the bounded default family."""
    d, dom = _interp(args)
    dom = _domain(args, dom)
    if d is not None:
        d.check(vocab, dom)
        return [d], dom, {"interpretations": "file"}
    fam = list(default_family(vocab, dom, max_size=args.max_size, budget=args.budget, seed=args.seed))
    info = {
        "interpretations": "default",
        "max_relation_size": args.max_size,
        "budget": args.budget,
        "seed": args.seed,
        "sampled": family_size(vocab, dom, args.max_size, budget=10**18) > args.budget,
    }
    return fam, dom, info


def _pair_json(u: Universe, pair) -> list[dict]:
    v1, v2 = pair
    return [dict(zip(u.vars, v1)), dict(zip(u.vars, v2))]


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> tuple[dict, int]:
    vocab = _vocab(args)
    e = _parse(args, vocab)
    return {"ast": to_json(e), "expression": render(e)}, 0


def cmd_analyze(args) -> tuple[dict, int]:
    vocab = _vocab(args)
    e = _parse(args, vocab)
    out = syn_io(e).to_json()
    out["io_disjoint"] = is_io_disjoint(e)
    return out, 0


def cmd_eval(args) -> tuple[dict, int]:
    vocab = _vocab(args)
    e = _parse(args, vocab)
    d, dom = _interp(args)
    if d is None:
        raise UsageError("eval needs --interp")
    dom = _domain(args, dom)
    d.check(vocab, dom)
    u = _universe(args, e)
    a = evaluate(e, d, u, dom)
    return {
        "universe": list(u.vars),
        "domain": list(dom.elements),
        "size": len(a),
        "pairs": [_pair_json(u, p) for p in a.pairs()],
    }, 0


def cmd_check_equiv(args) -> tuple[dict, int]:
    vocab = _vocab(args)
    e1 = _parse(args, vocab, "expr")
    e2 = _parse(args, vocab, "other")
    u = _universe(args, e1, e2)
    fam, dom, info = _family(args, vocab)
    checked = 0
    for k, d in enumerate(fam):
        checked += 1
        a, b = evaluate(e1, d, u, dom), evaluate(e2, d, u, dom)
        if a != b:
            only = sorted(set(a.pairs()) ^ set(b.pairs()))[0]
            return {
                "equivalent": False,
                "interpretations_checked": checked,
                "counterexample": {
                    "relations": d.to_json()["relations"],
                    "pair": _pair_json(u, only),
                    "in_first": only in a,
                },
                **info,
            }, 1
    return {"equivalent": True, "interpretations_checked": checked, **info}, 0


def cmd_oracle(args) -> tuple[dict, int]:
    vocab = _vocab(args)
    e = _parse(args, vocab)
    u = _universe(args, e)
    fam, dom, info = _family(args, vocab)
    outs = witness_outputs(e, fam, u, dom)
    ins = witness_inputs(e, fam, u, dom, outputs=outs.variables)

    def reports(w):
        out = []
        for r in w.reports.values():
            j = r.to_json(u)
            j["relations"] = fam[r.interpretation].to_json()["relations"]
            out.append(j)
        return out

    io = syn_io(e)
    return {
        "universe": list(u.vars),
        "domain": list(dom.elements),
        "interpretations_checked": len(fam),
        "witnessed_outputs": sorted(outs.variables),
        "witnessed_inputs": sorted(ins.variables),
        "output_witnesses": reports(outs),
        "input_witnesses": reports(ins),
        "syntactic": io.to_json(),
        "sound": outs.variables <= io.outputs and ins.variables <= io.inputs,
        **info,
    }, 0


def cmd_rewrite(args) -> tuple[dict, int]:
    vocab = _vocab(args)
    e = _parse(args, vocab)
    if args.eliminate_composition:
        u = _universe(args, e)
        supply = FreshVarSupply(u)
        out, ext = eliminate_compositions(e, supply)
        return {
            "expression": render(out),
            "universe": list(ext.vars),
            "fresh": list(supply.issued),
        }, 0
    ops = _csv(args.expand) if args.expand else tuple(sorted(ALL_DERIVED))
    out = expand_redundant(e, ops)
    return {"expression": render(out), "expanded": sorted(ops)}, 0


def cmd_to_fo(args) -> tuple[dict, int]:
    vocab = _vocab(args)
    e = _parse(args, vocab)
    u = _universe(args, e)
    phi = fo.lif_to_fo(e, u)
    used = sorted(fo.formula_variables(phi))
    return {
        "formula": fo.render_fo(phi),
        "universe": list(u.vars),
        "variables_used": used,
        "variable_count": len(used),
        "bound": 3 * len(u) if any(v.startswith("z") for v in used) else 2 * len(u),
    }, 0


def cmd_from_fo(args) -> tuple[dict, int]:
    vocab = parse_vocabulary(_read(args.vocab)) if args.vocab else None
    path, text = args.formula, args.formula_str
    if (path is None) == (text is None):
        raise UsageError("give exactly one of --formula FILE or --formula-str S")
    phi = fo.parse_fo(_read(path) if path else text)
    e = fo.fo_to_lif(phi, vocab)
    return {"expression": render(e), "free_variables": sorted(fo.free_variables(phi))}, 0


def cmd_clique(args) -> tuple[dict, int]:
    spec = CliqueSpec(args.n)
    e = build_alpha_2n(spec) if args.emit == "2n" else build_alpha_exists_3n(spec)
    out = {"n": spec.n, "emit": args.emit, "variables": list(spec.variables), "expression": render(e)}
    if args.graph:
        g = load_graph(_read(args.graph))
        a = evaluate(e, g.interpretation(spec.relation), spec.universe, g.domain)
        k = 2 * spec.n if args.emit == "2n" else 3 * spec.n
        out["graph"] = {"vertices": list(g.vertices), "edges": sorted(sorted(x) for x in g.edges)}
        out["nonempty"] = bool(a)
        out["pairs"] = len(a)
        out["clique_size"] = k
        out["has_clique"] = g.has_clique(k)
    return out, 0


def cmd_property_suite(args) -> tuple[dict, int]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        kwargs = {"seed": args.seed}
        if args.count is not None and name not in ("redundancy",):
            kwargs["count"] = args.count
        if name == "precision":
            kwargs["budget"] = args.budget
        results.append(SUITES[name](**kwargs).to_json())
    ok = all(r["ok"] for r in results)
    out = results[0] if len(results) == 1 else {"suites": results, "ok": ok, "seed": args.seed}
    return out, 0 if ok else 1


COMMANDS = {
    "parse": cmd_parse,
    "analyze": cmd_analyze,
    "eval": cmd_eval,
    "check-equiv": cmd_check_equiv,
    "oracle": cmd_oracle,
    "rewrite": cmd_rewrite,
    "to-fo": cmd_to_fo,
    "from-fo": cmd_from_fo,
    "clique": cmd_clique,
    "property-suite": cmd_property_suite,
}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="compact single-line JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10_000, help="cap on generated interpretations")

    expr = _Parser(add_help=False)
    expr.add_argument("--vocab", metavar="FILE")
    expr.add_argument("--expr", metavar="FILE")
    expr.add_argument("--expr-str", metavar="S")
    expr.add_argument("--universe", metavar="x,y,z")

    data = _Parser(add_help=False)
    data.add_argument("--interp", metavar="FILE")
    data.add_argument("--domain", metavar="1,2,3")
    data.add_argument("--max-size", type=int, default=2, help="relation size bound of the default family")

    p = _Parser(prog="lif", description="Logic of Information Flows toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("parse", parents=[common, expr], help="parse and render an expression")
    sub.add_parser("analyze", parents=[common, expr], help="syntactic inputs and outputs")
    sub.add_parser("eval", parents=[common, expr, data], help="evaluate under an interpretation")
    ce = sub.add_parser("check-equiv", parents=[common, expr, data], help="compare two expressions")
    ce.add_argument("--other", metavar="FILE")
    ce.add_argument("--other-str", metavar="S")
    sub.add_parser("oracle", parents=[common, expr, data], help="witnessed semantic inputs and outputs")
    rw = sub.add_parser("rewrite", parents=[common, expr], help="semantics-preserving rewrites")
    rw.add_argument("--eliminate-composition", action="store_true")
    rw.add_argument("--expand", metavar="OPS", help=f"comma list from {','.join(sorted(ALL_DERIVED))}")
    sub.add_parser("to-fo", parents=[common, expr], help="translate to first-order logic")
    ff = sub.add_parser("from-fo", parents=[common], help="embed a first-order formula")
    ff.add_argument("--vocab", metavar="FILE")
    ff.add_argument("--formula", metavar="FILE")
    ff.add_argument("--formula-str", metavar="S")
    cl = sub.add_parser("clique", parents=[common], help="clique expressions")
    cl.add_argument("--n", type=int, default=2)
    cl.add_argument("--emit", choices=("2n", "exists3n"), default="exists3n")
    cl.add_argument("--graph", metavar="FILE")
    ps = sub.add_parser("property-suite", parents=[common], help="run a property suite")
    ps.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    ps.add_argument("--count", type=int, help="number of generated cases (suite default if omitted)")
    return p


def dumps(obj, compact: bool) -> str:
    if compact:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return json.dumps(obj, sort_keys=True, indent=2)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig.from_args(args)
        out, code = COMMANDS[cfg.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except LIFError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=stderr)
        return 1
    print(dumps(out, cfg.compact), file=stdout)
    return code


def main() -> None:
    sys.exit(run())
