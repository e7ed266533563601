from fractions import Fraction
from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from posetchains import gallery
from posetchains.bounds import (
    best_coefficient,
    bound_report,
    burcsi_nagy,
    chenli_coeff,
    equality_check,
    grosz_ck,
    grosz_coeff,
    la_upper,
    theorem_main,
)
from posetchains.chains import double_chain
from posetchains.embedding import is_p_free, la_exact
from posetchains.errors import InvalidParams
from posetchains.poset import height


def test_substitution_values():
    assert burcsi_nagy(4, 3) == (5, Fraction(5, 2))
    assert burcsi_nagy(16, 5) == (19, Fraction(19, 2))
    assert burcsi_nagy(2, 2) == (2, 1)
    assert theorem_main(16, 5, 3)[0] == 16
    assert theorem_main(7, 3, 1)[0] == 7
    assert grosz_ck(16, 5, 3) == 47
    assert grosz_ck(4, 3, 4) == 59
    assert chenli_coeff(4, 3, 2) == Fraction(11, 3)
    assert chenli_coeff(16, 5, 3) == Fraction(47, 4)
    assert grosz_coeff(4, 3, 3) == Fraction(23, 4)


def test_parameter_errors():
    for call in (lambda: grosz_ck(4, 3, 1), lambda: chenli_coeff(4, 3, 0),
                 lambda: grosz_coeff(4, 3, 1), lambda: burcsi_nagy(0, 1),
                 lambda: theorem_main(4, 3, -1)):
        with pytest.raises(InvalidParams):
            call()


@given(st.integers(1, 200), st.integers(1, 20), st.integers(0, 20))
def test_formula_coherence(size, h, alpha):
    bn_bound, bn = burcsi_nagy(size, h)
    assert chenli_coeff(size, h, 1) == grosz_coeff(size, h, 2) == bn
    assert grosz_ck(size, h, 2) == bn_bound
    main = theorem_main(size, h, alpha)[0]
    assert main <= bn_bound and (main == bn_bound) == (alpha == 0)
    value, _, _ = best_coefficient(size, h, alpha)
    assert isinstance(value, Fraction) and value <= bn


def test_la_upper_is_exact_integer_arithmetic():
    assert la_upper(Fraction(5, 2), 20) == Fraction(5, 2) * comb(20, 10)


def test_report_contents():
    rep = bound_report(gallery("fig2"), range(1, 4))
    data = rep.to_json()
    assert (data["size"], data["height"], data["alpha"]) == (16, 5, 3)
    chain_vals = {e["name"]: e["value"] for e in data["entries"] if e["kind"] == "chain"}
    assert chain_vals["burcsi_nagy"] == 19 and chain_vals["theorem_main"] == 16
    assert "theorem_main" in rep.to_text()
    # non-graded input keeps the size/height-only bounds and drops alpha
    rep = bound_report(gallery("long_tail"))
    assert rep.alpha is None
    assert all(e.name != "theorem_main" for e in rep.entries)


@pytest.mark.parametrize("name,prm,n", [("D", {"k": 2}, 6), ("B", {}, 6), ("V", {}, 6),
                                        ("chain", {"k": 3}, 6), ("P1", {"n": 3}, 9),
                                        ("S''", {}, 8), ("Q", {}, 7)])
def test_exact_la_respects_main_bound(name, prm, n):
    p = gallery(name, **prm)
    rep = bound_report(p)
    assert la_exact(double_chain(n), p).value <= theorem_main(len(p), height(p), rep.alpha)[0]


def test_s_prime_breaks_main_bound():
    # A 9-element family of C_2(8) with no copy of S'; the bound gives 8.
    p = gallery("S'")
    fam = ["r1", "l2", "r2", "r3", "r4", "l5", "r5", "l6", "r6"]
    host = double_chain(8).poset
    assert is_p_free(fam, p, host)
    # independent confirmation: no bijection from S' onto the family is order-preserving
    assert not any(
        all(host.lt(img[i], img[j]) for i, a in enumerate(p.elements)
            for j, b in enumerate(p.elements) if p.lt(a, b))
        for img in permutations(fam)
    )
    assert theorem_main(9, 3, 2)[0] == 8
    assert la_exact(double_chain(8), p).value == 9


@pytest.mark.parametrize("name,prm,outcome", [
    ("B", {}, "HOLDS"), ("D", {"k": 3}, "HOLDS"), ("Q", {}, "HOLDS"), ("S", {}, "HOLDS"),
    ("D", {"k": 2}, "FAILS"),
])
def test_equality_outcomes(name, prm, outcome):
    res = equality_check(gallery(name, **prm), 6)
    assert res["outcome"] == outcome
    if outcome == "FAILS":
        assert res["value"] == 2 and res["target"] == "5/2"
        assert res["witness_window"]["m"] == 3


def test_equality_unstable_when_too_small():
    assert equality_check(gallery("B"), 2)["outcome"] == "UNSTABLE"
