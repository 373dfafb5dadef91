import pytest
from hypothesis import given, settings, strategies as st

from magmakit import get_model
from magmakit.terms import (App, Identity, TermSyntaxError, Var, dual_identity, dual_term,
                            eval_term, format_variety, parse_identity, parse_term,
                            parse_variety_text, term_depth, term_vars)

x, y, z, u = map(Var, "xyzu")


def terms(max_depth=5):
    leaves = st.sampled_from("xyzuv").map(Var)
    if max_depth == 0:
        return leaves
    sub = st.deferred(lambda: terms(max_depth - 1))
    return st.one_of(leaves, st.tuples(sub, sub).map(lambda p: App(*p)))


def test_parse_examples():
    assert parse_term("x") == x
    assert parse_term("(x*y)*z") == App(App(x, y), z)
    assert parse_term("x*y*z") == App(App(x, y), z)
    assert parse_term("x*(y*(u*x))") == App(x, App(y, App(u, x)))
    assert parse_term("  ( x )  ") == x
    assert parse_term("ab1*c_d") == App(Var("ab1"), Var("c_d"))


def test_serialization_is_minimal():
    assert str(parse_term("(x*y)*z")) == "x*y*z"
    assert str(parse_term("x*(y*z)")) == "x*(y*z)"
    assert str(parse_term("((x*x)*(y*y))")) == "x*x*(y*y)"


@settings(max_examples=300)
@given(terms())
def test_round_trip(t):
    assert term_depth(t) <= 5
    assert parse_term(str(t)) == t


@given(terms())
def test_dual_involution(t):
    assert dual_term(dual_term(t)) == t
    assert term_depth(dual_term(t)) == term_depth(t)
    assert set(term_vars(dual_term(t))) == set(term_vars(t))


def test_dual_examples():
    lz = parse_identity("x*y = x")
    assert dual_identity(lz) == parse_identity("y*x = x")
    assert dual_term(x) == x
    t = parse_term("(x*y)*z")
    assert dual_term(t) == parse_term("z*(y*x)")


def test_identities():
    i = parse_identity("x*y = z*u")
    assert i.vars == ("x", "y", "z", "u")
    assert parse_identity("x = y") == Identity(x, y)
    assert str(parse_identity("x*y=x")) == "x*y = x"
    assert term_vars(parse_term("y*(x*y)")) == ("y", "x")


@pytest.mark.parametrize("text, pos", [
    ("", 0),
    ("x*", 2),
    ("(x*y", 4),
    ("x y", 2),
    ("x*Y", 2),
    ("x)*y", 1),
    ("*x", 0),
])
def test_term_errors(text, pos):
    with pytest.raises(TermSyntaxError) as e:
        parse_term(text)
    assert e.value.pos == pos


@pytest.mark.parametrize("text, pos", [
    ("x*y", 0),
    ("x = y = z", 6),
    ("x = y*", 6),
    ("x* = y", 3),
])
def test_identity_errors(text, pos):
    with pytest.raises(TermSyntaxError) as e:
        parse_identity(text)
    assert e.value.pos == pos


def _eval_oracle(t, table, env):
    if isinstance(t, Var):
        return env[t.name]
    return table[_eval_oracle(t.left, table, env)][_eval_oracle(t.right, table, env)]


def test_eval_examples():
    n2 = get_model("2_N")
    q = get_model("Q")
    assert eval_term(parse_term("x*y"), n2, {"x": 1, "y": 1}) == 0
    assert eval_term(x, q, {"x": 3}) == 3
    assert eval_term(parse_term("(x*y)*z"), q, {"x": 1, "y": 2, "z": 1}) == 0
    assert eval_term(parse_term("x*y"), q.table, {"x": 1, "y": 2}) == 3
    with pytest.raises(KeyError):
        eval_term(parse_term("x*y"), q, {"x": 0})


@given(terms(4), st.data())
def test_eval_matches_recursive_oracle(t, data):
    m = get_model(data.draw(st.sampled_from(["Q", "K5", "H9", "M1", "D"])))
    env = {v: data.draw(st.integers(0, m.n - 1)) for v in "xyzuv"}
    assert eval_term(t, m, env) == _eval_oracle(t, m.table, env)


def test_variety_file_parsing():
    text = "# provenance line\n\nx*y = x*z\n  # another\nx*y*z = x*y\n"
    v = parse_variety_text(text, "U")
    assert [str(i) for i in v.identities] == ["x*y = x*z", "x*y*z = x*y"]
    assert v.notes == "provenance line\nanother"
    assert v.max_vars == 3
    again = parse_variety_text(format_variety(v), "U")
    assert again.identities == v.identities


def test_variety_file_error_has_line_number():
    with pytest.raises(TermSyntaxError, match="line 3"):
        parse_variety_text("x = x\n\nx*y = (y\n", "bad")
