from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from posetchains import gallery
from posetchains.auxgraph import alpha_dp, build_aux_graph
from posetchains.chains import double_chain
from posetchains.embedding import is_isomorphic, is_p_free
from posetchains.errors import BadParams, LevelTooSmall, NotGradedAfter, UnknownEntry
from posetchains.gallery import (
    FAMILY_FOR,
    _aux_shape,
    family_span,
    lambda_extension,
    list_entries,
    random_graded_poset,
    sort_family,
    vee_extension,
    witness_family,
)
from posetchains.poset import GradedPoset, format_poset, is_connected, parse_poset


@pytest.mark.parametrize("name", sorted(set(list_entries())))
def test_every_entry_builds_and_round_trips(name):
    p = gallery(name)
    q = parse_poset(format_poset(p))
    assert q.up == p.up and q.elements == p.elements


@pytest.mark.parametrize("name,prm,size", [
    ("P1", {"n": 4}, 8), ("P2", {"n": 6}, 10), ("P3", {"n": 3}, 9), ("P4", {"n": 4}, 9),
])
def test_parametrized_patterns_stay_k2(name, prm, size):
    p = gallery(name, **prm)
    assert len(p) == size
    assert _aux_shape(build_aux_graph(p)) == "K2"


def test_bad_requests():
    with pytest.raises(UnknownEntry):
        gallery("P9")
    with pytest.raises(BadParams):
        gallery("P1", n=2)
    with pytest.raises(BadParams):
        gallery("B", n=3)
    with pytest.raises(BadParams):
        witness_family(4, anchor=1)
    with pytest.raises(BadParams):
        witness_family(6)


@pytest.mark.parametrize("name,n", [("P1", 3), ("P1", 4), ("P2", 5), ("P3", 2), ("P3", 3),
                                    ("P4", 3), ("P5", None), ("P6", None), ("P7", None)])
@pytest.mark.parametrize("anchor", [3, 5])
def test_witness_families_are_free(name, n, anchor):
    p = gallery(name, **({"n": n} if n else {}))
    fam = witness_family(FAMILY_FOR[name], n=n, anchor=anchor)
    assert len(fam) == len(set(fam)) == len(p)
    host = double_chain(family_span(fam)).poset
    assert is_p_free(fam, p, host)
    assert sort_family(fam) == sorted(fam, key=host.elements.index)


def test_family_span_fits_exactly():
    assert family_span(["l3"]) == 3
    assert family_span(["r3"]) == 4
    assert "r3" in double_chain(4).poset.index


def test_extensions_rebuild_s_prime():
    s = GradedPoset.of(gallery("S"))
    step = vee_extension(s, 1, ["m1", "m2"], new_name="b2")
    step = lambda_extension(step, 3, ["m2", "m3"], new_name="t2")
    assert is_isomorphic(step.poset, gallery("S'"))
    assert _aux_shape(build_aux_graph(step)) == "2K1"


def test_extension_errors():
    d = GradedPoset.of(gallery("D", k=2))
    with pytest.raises(LevelTooSmall):
        lambda_extension(d, 3, ["m1", "m2"])
    with pytest.raises(BadParams):
        lambda_extension(d, 1, ["bot", "m1"])
    q = GradedPoset.of(gallery("Q"))
    with pytest.raises(BadParams):
        lambda_extension(q, 3, ["b1", "a1"])


def test_extension_adds_triples():
    q = GradedPoset.of(gallery("Q"))
    assert len(build_aux_graph(q)) == 0
    ext = lambda_extension(q, 3, ["b1", "b2"])
    g = build_aux_graph(ext)
    assert len(ext.poset) == 8 and ext.height == 3
    assert alpha_dp(g).size == 1


@given(st.integers(0, 10**6), st.integers(1, 14), st.integers(1, 5))
def test_random_graded_posets(seed, size, h):
    gp = random_graded_poset(seed, max_size=size, max_height=h)
    assert 1 <= len(gp.poset) <= size and gp.height <= h
    assert is_connected(gp.poset)
    again = random_graded_poset(seed, max_size=size, max_height=h)
    assert again.poset == gp.poset


@pytest.mark.parametrize("name,prm", [("D", {"k": 3}), ("Q", {}), ("S", {}), ("R", {})])
def test_one_extension_creates_a_triple(name, prm):
    gp = GradedPoset.of(gallery(name, **prm))
    built = 0
    for i in range(2, gp.height + 1):
        for pair in combinations(gp.levels[i - 2], 2):
            try:
                ext = lambda_extension(gp, i, pair)
            except (LevelTooSmall, NotGradedAfter):
                continue
            built += 1
            assert len(ext.poset) == len(gp.poset) + 1 and ext.height == gp.height
            assert is_connected(ext.poset)
            assert alpha_dp(build_aux_graph(ext)).size >= 1
    assert built > 0
