"""Acceptance criteria, one test each; every test appends a PASS/FAIL line
that is printed in the terminal summary."""

import random
from fractions import Fraction

from acceptance_log import criterion

from posetchains import (
    GradedPoset,
    alpha_bruteforce,
    alpha_dp,
    build_aux_graph,
    burcsi_nagy,
    chenli_coeff,
    double_chain,
    gallery,
    grosz_ck,
    grosz_coeff,
    is_p_free,
    la_chain_sequence,
    la_exact,
    parse_poset,
    random_graded_poset,
    theorem_check,
    theorem_main,
    witness_family,
)
from posetchains.bounds import equality_check
from posetchains.chains import boolean_lattice
from posetchains.embedding import e_estimate
from posetchains.errors import ConstructionFailed
from posetchains.gallery import FAMILY_FOR, _aux_shape, family_span
from posetchains.injection import construct_embedding
from posetchains.poset import format_poset, height

# Triples of the height-5 example, with the one table typo fixed
# ({r2,r3,s4} is not an antichain; {r1,r2,s4} is the intended V).
FIG2_TRIPLES = {
    (frozenset({"r1", "s3", "s4"}), "Λ"),
    (frozenset({"r2", "s1", "s4"}), "Λ"),
    (frozenset({"r3", "s1", "s2"}), "Λ"),
    (frozenset({"r2", "r3", "s1"}), "V"),
    (frozenset({"r1", "r2", "s4"}), "V"),
    (frozenset({"s1", "s2", "x2"}), "V"),
    (frozenset({"s3", "s4", "x1"}), "V"),
    (frozenset({"x1", "y4", "y5"}), "Λ"),
    (frozenset({"x2", "y1", "y2"}), "Λ"),
    (frozenset({"x2", "y1", "y3"}), "Λ"),
    (frozenset({"x2", "y2", "y3"}), "Λ"),
    (frozenset({"y1", "y2", "z2"}), "V"),
    (frozenset({"y4", "y5", "z1"}), "V"),
}

SHARP = [("P1", {"n": 3}), ("P2", {"n": 5}), ("P3", {"n": 2}), ("P4", {"n": 3}),
         ("P5", {}), ("P6", {}), ("P7", {})]


def _graph(p):
    gp = GradedPoset.of(p)
    return gp, build_aux_graph(gp)


def test_height_five_example():
    with criterion(1, "height-5 example: |P|=16, h=5, 13 typed triples, alpha=3, bound 16", 1.0):
        text = format_poset(gallery("fig2"))
        p = parse_poset(text)
        gp, g = _graph(p)
        assert len(p) == 16 and gp.height == 5
        got = {(frozenset(v.elems), v.vtype) for v in g.vertices}
        assert got == FIG2_TRIPLES
        dp, bf = alpha_dp(g), alpha_bruteforce(g)
        assert dp.size == bf.size == 3
        assert g.is_independent(dp.witness)
        assert theorem_main(16, 5, dp.size)[0] == 16


def test_sharpness_suite():
    with criterion(2, "sharp examples P1..P7: K2, alpha=1, bound=|P|, witness free, La=|P|", 300):
        for name, prm in SHARP:
            p = gallery(name, **prm)
            gp, g = _graph(p)
            assert _aux_shape(g) == "K2", name
            assert alpha_dp(g).size == alpha_bruteforce(g).size == 1
            size = len(p)
            assert theorem_main(size, gp.height, 1)[0] == size, name
            fam = witness_family(FAMILY_FOR[name], n=prm.get("n"), anchor=3)
            assert len(fam) == size
            host = double_chain(family_span(fam)).poset
            assert is_p_free(fam, p, host), name
            res = la_exact(double_chain(size + 4), p)
            assert res.value == size, (name, res.value)


def test_theorem_exhaustive():
    with criterion(3, "every family of size |P|+h-alpha-1: oracle embeds, builder succeeds", 600):
        for name, prm, n in [("D", {"k": 2}, 7), ("P1", {"n": 3}, 10)]:
            rep = theorem_check(gallery(name, **prm), n)
            assert rep.families > 0
            assert rep.oracle_failures == 0, rep.first_oracle_failure
            assert rep.construct_failures == 0, rep.first_construct_failure
            assert rep.skip_mismatches == 0


def test_dp_matches_bruteforce():
    with criterion(4, "alpha_dp == alpha_bruteforce on 500 random graded posets", 120):
        for seed in range(500):
            gp = random_graded_poset(seed, max_size=12)
            g = build_aux_graph(gp)
            dp = alpha_dp(g)
            assert dp.size == alpha_bruteforce(g).size, seed
            assert g.is_independent(dp.witness)
            assert dp.pair_evaluations <= len(g) ** 2, seed


def test_bound_coherence(corpus):
    with criterion(5, "chenli(k=1) = grosz(k=2) = Burcsi-Nagy and grosz_ck(2) = |P|+h-2"):
        for name, p in corpus.items():
            size, h = len(p), height(p)
            bn = burcsi_nagy(size, h)[1]
            assert isinstance(bn, Fraction)
            assert chenli_coeff(size, h, 1) == grosz_coeff(size, h, 2) == bn, name
            assert grosz_ck(size, h, 2) == size + h - 2, name


def test_monotone_chain_sequence():
    with criterion(6, "La(C_k) for D_2, n=4, k<=4 non-decreasing up to La(B_4)", 300):
        d2 = gallery("D", k=2)
        seq = [r.value for r in la_chain_sequence(d2, 4, 4)]
        assert all(a <= b for a, b in zip(seq, seq[1:])), seq
        full = la_exact(boolean_lattice(4), d2).value
        assert seq[-1] == full, (seq, full)
        assert seq == [3, 5, 8, 10]


def test_equality_witnesses():
    with criterion(7, "B, D_3 stabilize at (|P|+h-2)/2; S' is 2K1 and S'' is K4-P3, both alpha=2"):
        for name, prm in [("B", {}), ("D", {"k": 3})]:
            p = gallery(name, **prm)
            est = e_estimate(p, 6)
            target = Fraction(len(p) + height(p) - 2, 2)
            assert est["stabilized"] and est["value"] == target, (name, est)
            assert equality_check(p, 6)["outcome"] == "HOLDS"
        for name, shape in [("S'", "2K1"), ("S''", "K4-P3")]:
            _, g = _graph(gallery(name))
            assert alpha_dp(g).size == alpha_bruteforce(g).size == 2
            assert _aux_shape(g) == shape, name


def test_skip_count_invariant():
    with criterion(8, "skips == (h-1) - |I| on 200 sampled constructive runs"):
        pool = ["fig2", "P1", "P2", "P3", "P4", "P5", "P6", "P7", "S'", "S''", "D"]
        rng = random.Random(0)
        graphs = {nm: _graph(gallery(nm)) for nm in pool}
        runs = 0
        failed = []
        for r in range(200):
            nm = pool[r % len(pool)]
            gp, g = graphs[nm]
            ind = alpha_dp(g).witness
            size = len(gp.poset) + gp.height - len(ind) - 1
            n = size
            fam = sorted(rng.sample(range(2 * n), size))
            try:
                _, plan = construct_embedding(gp, ind, fam, n, graph=g)
            except ConstructionFailed:
                failed.append((nm, fam))
                continue
            runs += 1
            assert len(plan.skips) == gp.height - 1 - len(ind), (nm, fam)
        assert not failed, failed
        assert runs == 200


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
