import pytest
from hypothesis import given, settings
from strategies import brute_lt, posets

from posetchains.errors import (
    CycleDetected,
    Disconnected,
    DuplicateElement,
    NoGreatestElement,
    NotGraded,
    ParseError,
    UnknownElement,
)
from posetchains.poset import (
    GradedPoset,
    chain,
    components,
    dual,
    format_poset,
    from_covers,
    height,
    incomparable,
    is_graded,
    maximal_chains,
    mirsky_levels,
    oplus,
    otimes,
    parse_poset,
    to_dot,
)


def test_closure_and_covers():
    p = from_covers("abcd", [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    assert p.lt("a", "d")
    assert not p.lt("d", "a")
    assert p.covers() == [("a", "b"), ("b", "c"), ("c", "d")]
    assert p.relation_count() == 6


def test_input_errors():
    with pytest.raises(DuplicateElement):
        from_covers(["a", "a"], [])
    with pytest.raises(UnknownElement):
        from_covers(["a"], [("a", "b")])
    with pytest.raises(CycleDetected) as exc:
        from_covers("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    assert set(exc.value.args[0]) >= {"a", "b", "c"}
    with pytest.raises(Disconnected):
        from_covers("ab", [])
    assert len(components(from_covers("ab", [], allow_disconnected=True))) == 2


def test_mirsky_levels_of_vee():
    p = from_covers(["x", "y", "z"], [("x", "y"), ("x", "z")])
    dec = mirsky_levels(p)
    assert dec.levels == (("x",), ("y", "z"))
    assert dec.sizes() == [1, 2]
    assert height(p) == 2


def test_not_graded_witness():
    # a < b and a < c < d: the chain a<b is maximal but short
    p = from_covers("abcd", [("a", "b"), ("a", "c"), ("c", "d")])
    ok, witness = is_graded(p)
    assert not ok and witness == ["a", "b"]
    with pytest.raises(NotGraded):
        GradedPoset.of(p)


def test_sums():
    c2 = chain(2)
    s = oplus(c2, c2)
    assert len(s) == 4 and height(s) == 4
    g = otimes(c2, c2)
    assert len(g) == 3 and height(g) == 3
    with pytest.raises(NoGreatestElement):
        otimes(from_covers("abc", [("a", "b"), ("a", "c")]), c2)


def test_parse_and_errors():
    p = parse_poset("poset S'\n# comment\nelements: a b c\nrelations: a<b a<c\n")
    assert p.name == "S'" and p.lt("a", "c")
    for bad in ["elements: a\nrelations: a<z\n", "nonsense\n", "elements: a a\n", "", "poset a b\nelements: x\n"]:
        with pytest.raises(ParseError):
            parse_poset(bad)


def test_dot_has_every_cover():
    p = from_covers("abc", [("a", "b"), ("a", "c")])
    dot = to_dot(p)
    assert '"a" -> "b";' in dot and '"a" -> "c";' in dot and "rankdir=BT" in dot


@given(posets())
def test_closure_matches_naive(p):
    m = brute_lt(p)
    n = len(p)
    for i in range(n):
        for j in range(n):
            assert bool(p.up[i] >> j & 1) == m[i][j]


@given(posets())
def test_dual_is_involution(p):
    d = dual(p)
    assert dual(d) == p
    for a in p.elements:
        for b in p.elements:
            assert p.lt(a, b) == d.lt(b, a)


@given(posets())
def test_format_round_trip(p):
    q = parse_poset(format_poset(p, name="rt"), allow_disconnected=True)
    assert q.elements == p.elements and q.up == p.up


@given(posets())
def test_levels_are_antichains_covering_everything(p):
    dec = mirsky_levels(p)
    assert sum(dec.sizes()) == len(p)
    for level in dec.levels:
        for a in level:
            for b in level:
                assert a == b or incomparable(p, a, b)
    for a, b in p.covers():
        assert dec.rank[a] < dec.rank[b]


@settings(max_examples=150)
@given(posets(max_size=6))
def test_graded_iff_all_maximal_chains_have_length_h(p):
    h = height(p)
    assert is_graded(p)[0] == all(len(c) == h for c in maximal_chains(p))


def _cover_steps_and_tops(p):
    rank = mirsky_levels(p).rank
    h = height(p)
    steps = all(rank[b] == rank[a] + 1 for a, b in p.covers())
    return steps, all(rank[e] == h for e in p.maximal())


def test_cover_steps_alone_do_not_imply_graded():
    p = from_covers("abcd", [("a", "b"), ("a", "c"), ("c", "d")])
    steps, tops = _cover_steps_and_tops(p)
    assert steps and not tops and not is_graded(p)[0]


@settings(max_examples=250)
@given(posets(max_size=8))
def test_graded_iff_unit_cover_steps_and_tops_at_h(p):
    steps, tops = _cover_steps_and_tops(p)
    assert is_graded(p)[0] == (steps and tops)
