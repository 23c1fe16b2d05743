import pytest
from hypothesis import given, strategies as st

from lif.errors import MismatchError, UniverseError, UnknownModuleError
from lif.semantics import (
    BRV,
    Domain,
    Interpretation,
    brv_compose,
    brv_converse,
    brv_cyl,
    brv_difference,
    brv_intersect,
    brv_select,
    brv_union,
    equivalent_on,
    evaluate,
    load_interpretation,
)
from lif.syntax import Universe, parse_expression, parse_vocabulary

from naive import naive_eval
from strategies import DOMAIN2, UNIVERSE, VOCAB, expressions, interpretations

XY = Universe(("x", "y"))
D12 = Domain((1, 2))
V = parse_vocabulary("M/2 in 1\nN/0 in 0\nP1/2 in 1\nP/1 in 1\n")


def ev(text, rels, u=XY, dom=D12):
    return evaluate(parse_expression(text, V), Interpretation(rels), u, dom)


def as_set(a):
    return set(a.pairs())


def test_atom_example():
    got = ev("M(x;y)", {"M": {(1, 2)}})
    # enumerated by the reference evaluator over all 16 valuation pairs
    expected = naive_eval(parse_expression("M(x;y)", V), {"M": {(1, 2)}}, ("x", "y"), (1, 2))
    assert as_set(got) == expected == {((1, 1), (1, 2)), ((1, 2), (1, 2))}


def test_id_is_the_diagonal():
    assert as_set(ev("id", {})) == {((a, b), (a, b)) for a in (1, 2) for b in (1, 2)}


def test_nullary_atoms():
    assert len(ev("N()", {"N": set()})) == 0
    assert ev("N()", {"N": {()}}) == BRV.diagonal(XY, D12)


def test_set_operations():
    a = ev("M(x;y)", {"M": {(1, 2), (2, 2)}})
    b = ev("M(y;x)", {"M": {(1, 2), (2, 1)}})
    empty = BRV.empty(XY, D12)
    assert len(brv_difference(a, a)) == 0
    assert brv_union(a, empty) == a
    assert brv_intersect(a, b) == brv_difference(a, brv_difference(a, b))


def test_mismatch():
    with pytest.raises(MismatchError):
        brv_union(BRV.empty(XY, D12), BRV.empty(Universe(("x",)), D12))


def test_compose_identity_and_empty():
    b = ev("M(x;y)", {"M": {(1, 2)}})
    assert brv_compose(BRV.diagonal(XY, D12), b) == b
    assert len(brv_compose(b, BRV.empty(XY, D12))) == 0


def test_successor_composition():
    d = Domain((0, 1, 2))
    rels = {"P1": {(0, 1), (1, 2)}}
    got = ev("P1(x;x) ; P1(x;y)", rels, XY, d)
    ref = naive_eval(parse_expression("P1(x;x) ; P1(x;y)", V), rels, ("x", "y"), (0, 1, 2))
    assert as_set(got) == ref == {((0, c), (1, 2)) for c in (0, 1, 2)}


def test_converse():
    diag = BRV.diagonal(XY, D12)
    assert brv_converse(diag) == diag
    a = BRV.from_pairs(XY, D12, [((1, 1), (2, 1))])
    assert as_set(brv_converse(a)) == {((2, 1), (1, 1))}
    assert brv_converse(brv_converse(a)) == a


def test_cylindrification():
    a = ev("P(x;)", {"P": {(1,)}})
    assert brv_cyl(a, "left", set()) == a
    once = brv_cyl(a, "left", {"x"})
    assert brv_cyl(once, "left", {"x"}) == once
    ref = naive_eval(parse_expression("cyl_l{x}(P(x;))", V), {"P": {(1,)}}, ("x", "y"), (1, 2))
    assert as_set(once) == ref
    assert ref == {((a, b), (1, b)) for a in (1, 2) for b in (1, 2)}


def test_cylindrification_outside_universe():
    with pytest.raises(UniverseError):
        brv_cyl(BRV.diagonal(XY, D12), "right", {"w"})


def test_selection():
    a = ev("M(x;y)", {"M": {(1, 2), (2, 1)}})
    assert brv_select(a, "l", "x", "x") == a
    diag = BRV.diagonal(XY, D12)
    assert brv_select(diag, "lr", "x", "x") == diag
    assert all(p[0] == q[1] for p, q in brv_select(a, "lr", "x", "y").pairs())


def test_sel_r_expansion_equivalence():
    lhs = "sel_r{x=y}(M(x;y))"
    rhs = "M(x;y) & cyl_l{x}(sel_lr{(x,x)=(y,x)}(cyl_l{x}(M(x;y))))"
    for rel in ({(1, 2)}, {(1, 1), (2, 1)}, {(1, 1), (2, 2), (1, 2)}):
        assert ev(lhs, {"M": rel}) == ev(rhs, {"M": rel})


def test_equivalent_on():
    d = Interpretation({"P1": {(0, 1), (1, 2), (2, 3)}})
    dom = Domain((0, 1, 2, 3))
    e = parse_expression("P1(x;x)", V)
    assert equivalent_on(e, e, d, ("x",), dom)
    twice = parse_expression("P1(x;x) ; P1(x;x)", V)
    direct = parse_expression("cyl_r{x}(P1(x;x)) & cyl_l{x}(P1(x;x))", V)
    assert not equivalent_on(twice, direct, d, ("x",), dom)


def test_errors():
    with pytest.raises(UnknownModuleError):
        ev("M(x;y)", {})
    with pytest.raises(UniverseError):
        ev("M(x;y)", {"M": set()}, Universe(("x",)))


def test_load_interpretation():
    d, dom = load_interpretation('{"domain":[0,1,2],"relations":{"P1":[[0,1],[1,2]]}}')
    assert dom.elements == (0, 1, 2)
    assert d["P1"] == frozenset({(0, 1), (1, 2)})


def test_pairs_are_lexicographic():
    pairs = BRV.full(XY, D12).pairs()
    assert pairs == sorted(pairs) and len(pairs) == 16


@given(expressions(), interpretations())
def test_matches_reference_evaluator(e, d):
    got = evaluate(e, d, UNIVERSE, DOMAIN2)
    assert set(got.pairs()) == naive_eval(e, d.relations, UNIVERSE.vars, DOMAIN2.elements)


@given(expressions(max_leaves=6), expressions(max_leaves=6), expressions(max_leaves=6), interpretations())
def test_structural_laws(a, b, c, d):
    A, B, C = (evaluate(x, d, UNIVERSE, DOMAIN2) for x in (a, b, c))
    assert brv_union(A, B) == brv_union(B, A)
    assert brv_intersect(A, brv_intersect(B, C)) == brv_intersect(brv_intersect(A, B), C)
    assert brv_compose(A, brv_compose(B, C)) == brv_compose(brv_compose(A, B), C)
    diag = BRV.diagonal(UNIVERSE, DOMAIN2)
    assert brv_compose(diag, A) == A == brv_compose(A, diag)


@given(expressions(), interpretations(), st.sampled_from(["left", "right"]), st.frozensets(st.sampled_from("xyz")))
def test_cylindrification_is_idempotent(e, d, side, zs):
    a = brv_cyl(evaluate(e, d, UNIVERSE, DOMAIN2), side, zs)
    assert brv_cyl(a, side, zs) == a
