from dataclasses import replace

from hypothesis import given, strategies as st

from lif.analysis import is_io_disjoint, syn_io
from lif.syntax import Atom, Id, children, parse_expression, parse_vocabulary, variables

from strategies import expressions

V = parse_vocabulary("R/2 in 1\nP/1 in 1\nP1/2 in 1\nM/2 in 1\nA/2 in 1\nB/2 in 1\n")


def io(text):
    r = syn_io(parse_expression(text, V))
    return set(r.inputs), set(r.outputs)


def test_id():
    assert io("id") == (set(), set())


def test_atom():
    assert io("M(x;y)") == ({"x"}, {"y"})


def test_double_selection():
    # sel_l and sel_r both keep the child's outputs; the inner sel_r adds only
    # x (y is already an output), the outer sel_l adds x and y
    assert io("sel_l{x=y}(sel_r{x=y}(R(x;y)))") == ({"x", "y"}, {"y"})


def test_reflexive_selection_over_cylindrifications():
    assert io("sel_lr{x=x}(cyl_r{x}(cyl_l{x}(P(x;))))") == ({"x"}, set())


def test_composition_row():
    # I(A)={x}, O(A)={y}, I(B)={y}, O(B)={z}
    assert io("A(x;y) ; B(y;z)") == ({"x"}, {"y", "z"})


def test_union_symmetric_difference():
    assert io("M(x;y) + M(x;z)") == ({"x", "y", "z"}, {"y", "z"})
    assert io("M(x;y) & M(x;z)") == ({"x", "y", "z"}, set())
    assert io("M(x;y) \\ M(x;y)") == ({"x"}, {"y"})


def test_converse_and_cylindrifications():
    assert io("conv(M(x;y))") == ({"x", "y"}, {"y"})
    assert io("cyl_l{x,z}(M(x;y))") == (set(), {"x", "y", "z"})
    assert io("cyl_r{z}(M(x;y))") == ({"x"}, {"y", "z"})


def test_lr_selection_cases():
    assert io("sel_lr{x=y}(M(x;y))") == ({"x"}, {"y"})
    assert io("sel_lr{x=z}(M(x;y))") == ({"x", "z"}, {"y"})
    assert io("sel_lr{y=y}(M(x;y))") == ({"x", "y"}, set())
    assert io("sel_lr{z=z}(M(x;y))") == ({"x"}, {"y"})


def test_fvars():
    assert syn_io(parse_expression("M(x;y) ; P(z;)", V)).fvars == {"x", "y", "z"}


def test_io_disjoint():
    assert is_io_disjoint(parse_expression("M(x;y)", V))
    assert not is_io_disjoint(parse_expression("P1(x;x)", V))
    assert is_io_disjoint(Id())


def _paths(e, prefix=()):
    yield prefix
    for i, c in enumerate(children(e)):
        yield from _paths(c, prefix + (i,))


def _replace_at(e, path, new):
    if not path:
        return new
    i, rest = path[0], path[1:]
    if hasattr(e, "left"):
        field = "left" if i == 0 else "right"
        return replace(e, **{field: _replace_at(getattr(e, field), rest, new)})
    return replace(e, child=_replace_at(e.child, rest, new))


def _get(e, path):
    for i in path:
        e = children(e)[i]
    return e


@given(expressions(), st.data())
def test_compositional(e, data):
    path = data.draw(st.sampled_from(list(_paths(e))))
    sub = syn_io(_get(e, path))
    stand_in = Atom("Fresh", tuple(sorted(sub.inputs)), tuple(sorted(sub.outputs)))
    assert syn_io(_replace_at(e, path, stand_in)) == syn_io(e)


@given(expressions())
def test_report_mentions_only_occurring_variables(e):
    r = syn_io(e)
    assert r.fvars == r.inputs | r.outputs
    assert r.fvars <= variables(e)
