"""Named posets, witness families in the double chain, level extensions and a
random graded-poset generator."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chains import position_name
from .errors import BadParams, LevelTooSmall, NotGraded, NotGradedAfter, UnknownEntry
from .poset import GradedPoset, Poset, chain, components, dual, from_covers, height


def _names(prefix, n, start=1):
    return [f"{prefix}{k}" for k in range(start, start + n)]


def _build(elements, relations, name):
    return from_covers(elements, relations, name=name)


# -- patterns whose auxiliary graph is K_2 -----------------------------------

def p1(n=3):
    if n < 3:
        raise BadParams("P1 needs n >= 3")
    ys = _names("y", n)
    rel = []
    for k, y in enumerate(ys, start=1):
        rel += [("x2", y), (y, "z2")]
        if k >= 3:
            rel += [("x1", y), (y, "z1")]
    return _build(["x1", "x2", *ys, "z1", "z2"], rel, f"P1({n})")


def p2(n=5):
    if n < 5:
        raise BadParams("P2 needs n >= 5")
    ys = _names("y", n)
    rel = []
    for k, y in enumerate(ys, start=1):
        rel += [("x1", y), (y, "z2")]
        if k not in (2, 3):
            rel.append(("x2", y))
        if k not in (1, 2):
            rel.append((y, "z1"))
    return _build(["x1", "x2", *ys, "z1", "z2"], rel, f"P2({n})")


def p3(n=2):
    if n < 2:
        raise BadParams("P3 needs n >= 2")
    ys = _names("y", n)
    xs, zs = _names("x", 3), _names("z", 3)
    rel = [("x3", "y1"), ("y1", "z3")]
    for y in ys[1:]:
        for m in range(3):
            rel += [(xs[m], y), (y, zs[m])]
    return _build([*xs, *ys, *zs], rel, f"P3({n})")


def p4(n=3):
    # follows the drawing: x2 lies below every y
    if n < 3:
        raise BadParams("P4 needs n >= 3")
    ys = _names("y", n)
    rel = []
    for k, y in enumerate(ys, start=1):
        rel += [("x2", y), (y, "z3")]
        if k >= 3:
            rel.append(("x1", y))
        if k >= 2:
            rel += [(y, "z1"), (y, "z2")]
    return _build(["x1", "x2", *ys, "z1", "z2", "z3"], rel, f"P4({n})")


def p5():
    ys = _names("y", 4)
    rel = [("x1", y) for y in ys] + [("x2", "y1"), ("x2", "y2")]
    rel += [("y3", "z1"), ("y4", "z1")] + [(y, "z2") for y in ys]
    return _build(["x1", "x2", *ys, "z1", "z2"], rel, "P5")


def p6():
    ys = _names("y", 3)
    rel = [("x1", y) for y in ys] + [("x2", "y1")]
    rel += [(y, z) for y in ("y2", "y3") for z in ("z1", "z2")]
    rel += [(y, "z3") for y in ys]
    return _build(["x1", "x2", *ys, "z1", "z2", "z3"], rel, "P6")


def p7():
    xs, zs = _names("x", 3), _names("z", 3)
    rel = [(x, "y1") for x in xs] + [("y1", "z3"), ("x1", "y2")]
    rel += [("y2", z) for z in zs]
    return _build([*xs, "y1", "y2", *zs], rel, "P7")


# -- small named posets ------------------------------------------------------

def complete_layers(sizes, name=None, prefixes=None):
    """Graded poset where each level lies entirely below the next one."""
    levels = []
    for k, s in enumerate(sizes):
        pre = prefixes[k] if prefixes else f"a{k + 1}_"
        levels.append(_names(pre, s) if s > 1 or not prefixes else [pre])
    rel = [(a, b) for lo, hi in zip(levels, levels[1:]) for a in lo for b in hi]
    return _build([e for L in levels for e in L], rel, name)


def diamond(k=2):
    if k < 1:
        raise BadParams("D_k needs k >= 1")
    mids = _names("m", k)
    rel = [("bot", m) for m in mids] + [(m, "top") for m in mids]
    return _build(["bot", *mids, "top"], rel, f"D{k}")


def butterfly():
    return _build(["a1", "a2", "b1", "b2"], [(a, b) for a in ("a1", "a2") for b in ("b1", "b2")], "B")


def vee():
    return _build(["x", "y", "z"], [("x", "y"), ("x", "z")], "V")


def point():
    return _build(["x"], [], "point")


def q_poset():
    return complete_layers([2, 3, 2], "Q", ["a", "b", "c"])


def s_poset():
    return _build(
        ["b1", "m1", "m2", "m3", "m4", "t1", "t3"],
        [("b1", m) for m in _names("m", 4)] + [(m, t) for m in _names("m", 4) for t in ("t1", "t3")],
        "S",
    )


def r_poset():
    return complete_layers([1, 4, 4, 1], "R", ["a", "b", "c", "d"])


def _s_prime_family(b2_above, name):
    ms = _names("m", 4)
    rel = [("b1", m) for m in ms] + [("b2", m) for m in b2_above]
    rel += [(m, t) for m in ms for t in ("t1", "t3")] + [("m1", "t2"), ("m4", "t2")]
    return _build(["b1", "b2", *ms, "t1", "t2", "t3"], rel, name)


def s_prime():
    return _s_prime_family(["m3", "m4"], "S'")


def s_double_prime():
    return _s_prime_family(["m3"], "S''")


def height_five_example():
    """Height-5 poset with 13 incomparable triples and independence number 3."""
    cov = [
        ("z1", "y1"), ("z1", "y2"), ("z1", "y3"),
        ("z2", "y3"), ("z2", "y4"), ("z2", "y5"),
        ("y1", "x1"), ("y2", "x1"), ("y3", "x1"),
        ("y4", "x2"), ("y5", "x2"),
        ("x1", "s1"), ("x1", "s2"), ("x2", "s3"), ("x2", "s4"),
        ("s1", "r1"), ("s2", "r1"), ("s2", "r2"), ("s3", "r2"), ("s3", "r3"), ("s4", "r3"),
    ]
    elems = ["z1", "z2", *_names("y", 5), "x1", "x2", *_names("s", 4), *_names("r", 3)]
    return _build(elems, cov, "fig2")


def long_tail(m=12):
    """A 4-chain whose top also sits above m extra minimal elements; not graded."""
    vs = _names("v", m)
    rel = [("u1", "u2"), ("u2", "u3"), ("u3", "u4")] + [(v, "u4") for v in vs]
    return _build(["u1", "u2", "u3", "u4", *vs], rel, "long_tail")


# -- registry ------------------------------------------------------------------

@dataclass
class GalleryEntry:
    name: str
    constructor: Callable
    params: dict = field(default_factory=dict)  # name -> (default, minimum)
    facts: Callable | None = None  # params -> expected {size, height, alpha, aux}
    note: str = ""

    def build(self, **given):
        unknown = set(given) - set(self.params)
        if unknown:
            raise BadParams(f"{self.name} takes no parameter(s) {sorted(unknown)}")
        values = {}
        for key, (default, minimum) in self.params.items():
            v = given.get(key, default)
            if not isinstance(v, int) or v < minimum:
                raise BadParams(f"{self.name}: {key} must be an integer >= {minimum}")
            values[key] = v
        return self.constructor(**values), values


def _k2(size):
    return lambda prm: {"size": size(prm), "height": 3, "alpha": 1, "aux": "K2"}


ENTRIES = {
    e.name: e
    for e in [
        GalleryEntry("P1", p1, {"n": (3, 3)}, _k2(lambda p: p["n"] + 4)),
        GalleryEntry("P2", p2, {"n": (5, 5)}, _k2(lambda p: p["n"] + 4)),
        GalleryEntry("P3", p3, {"n": (2, 2)}, _k2(lambda p: p["n"] + 6)),
        GalleryEntry("P4", p4, {"n": (3, 3)}, _k2(lambda p: p["n"] + 5), "x2 below every y, as drawn"),
        GalleryEntry("P5", p5, {}, _k2(lambda p: 8)),
        GalleryEntry("P6", p6, {}, _k2(lambda p: 8)),
        GalleryEntry("P7", p7, {}, _k2(lambda p: 8)),
        GalleryEntry("D", diamond, {"k": (2, 1)},
                     lambda p: {"size": p["k"] + 2, "height": 3, "alpha": 0}),
        GalleryEntry("B", butterfly, {}, lambda p: {"size": 4, "height": 2, "alpha": 0}),
        GalleryEntry("V", vee, {}, lambda p: {"size": 3, "height": 2, "alpha": 0},
                     "standard V; the drawn entry may be a single point"),
        GalleryEntry("point", point, {}, lambda p: {"size": 1, "height": 1, "alpha": 0}),
        GalleryEntry("Q", q_poset, {}, lambda p: {"size": 7, "height": 3, "alpha": 0}),
        GalleryEntry("S", s_poset, {}, lambda p: {"size": 7, "height": 3, "alpha": 0}),
        GalleryEntry("R", r_poset, {}, lambda p: {"size": 10, "height": 4, "alpha": 0}),
        GalleryEntry("S'", s_prime, {}, lambda p: {"size": 9, "height": 3, "alpha": 2, "aux": "2K1"}),
        GalleryEntry("S''", s_double_prime, {},
                     lambda p: {"size": 9, "height": 3, "alpha": 2, "aux": "K4-P3"}),
        GalleryEntry("chain", lambda k: chain(k, name=f"chain{k}"), {"k": (3, 1)},
                     lambda p: {"size": p["k"], "height": p["k"], "alpha": 0}),
        GalleryEntry("fig2", height_five_example, {}, lambda p: {"size": 16, "height": 5, "alpha": 3}),
        GalleryEntry("long_tail", long_tail, {"m": (12, 1)},
                     lambda p: {"size": p["m"] + 4, "height": 4, "graded": False}),
    ]
}


def list_entries():
    return sorted(ENTRIES)


def _aux_shape(g):
    """Name the few graph shapes the registry states."""
    n = len(g)
    m = len(g.edges())
    if n == 2 and m == 1:
        return "K2"
    if n == 2 and m == 0:
        return "2K1"
    if n == 4 and m == 4:
        deg = sorted(a.bit_count() for a in g.adj)
        if deg == [1, 2, 2, 3]:
            return "K4-P3"  # K_4 minus two edges sharing a vertex
    return f"{n}v{m}e"


def check_facts(p: Poset, expected: dict):
    from .auxgraph import alpha_bruteforce, alpha_dp, build_aux_graph

    got = {"size": len(p), "height": height(p)}
    if "graded" in expected:
        try:
            GradedPoset.of(p)
            got["graded"] = True
        except NotGraded:
            got["graded"] = False
    if "alpha" in expected or "aux" in expected:
        g = build_aux_graph(p)
        a = alpha_dp(g)
        if len(g) <= 24 and alpha_bruteforce(g).size != a.size:
            raise AssertionError(f"{p.name}: DP and brute force disagree on alpha")
        got["alpha"] = a.size
        got["aux"] = _aux_shape(g)
    bad = {k: (v, got[k]) for k, v in expected.items() if got[k] != v}
    if bad:
        raise AssertionError(f"{p.name}: expected vs got {bad}")
    return got


def gallery(name, verify=True, **params) -> Poset:
    entry = ENTRIES.get(name)
    if entry is None:
        raise UnknownEntry(f"no gallery entry {name!r}; known: {', '.join(list_entries())}")
    p, values = entry.build(**params)
    if verify and entry.facts is not None:
        check_facts(p, entry.facts(values))
    return p


# -- witness families in C_2 -------------------------------------------------

FAMILY_FOR = {"P1": 1, "P2": 1, "P3": 2, "P4": 3, "P5": 4, "P6": 4, "P7": 5}


def witness_family(which: int, n: int | None = None, anchor: int = 0):
    """Explicit element names (``l<i>``, ``r<i>``) of family F_which.

    ``n`` is the pattern parameter for F_1..F_3 and ``anchor`` the offset
    ``i``; F_4 and F_5 need ``anchor >= 3``.
    """
    i = anchor
    if which in (1, 2, 3):
        if n is None or n < 1 or i < 0:
            raise BadParams(f"F_{which} needs n >= 1 and anchor >= 0")
        top = i + n + (2 if which == 1 else 4)
        rs = [f"r{k}" for k in range(i + 1, top + 1)]
        ls = {1: [i + 2, i + n + 1], 2: [i + 2, i + n + 3], 3: [i + 2]}[which]
        return [f"l{k}" for k in ls] + rs
    if which in (4, 5):
        if i < 3:
            raise BadParams(f"F_{which} needs anchor >= 3")
        ls = [i - 1, i, i + 1] if which == 4 else [i - 2, i, i + 2]
        return [f"l{k}" for k in ls] + [f"r{k}" for k in range(i - 2, i + 3)]
    raise BadParams(f"no witness family F_{which}")


def family_span(family) -> int:
    """Smallest n such that C_2(n) contains every element of the family."""
    # C_2(n) runs l0, l1, r1, ..., r_{n-1}, l_n
    return max(int(e[1:]) + (e[0] == "r") for e in family)


def sort_family(family):
    from .chains import chain_position

    return [position_name(q) for q in sorted(chain_position(e) for e in family)]


# -- extensions --------------------------------------------------------------

def _fresh(p: Poset, base):
    name, k = base, 1
    while name in p.index:
        k += 1
        name = f"{base}{k}"
    return name


def lambda_extension(gp, i: int, excluded, new_name="x") -> GradedPoset:
    """Insert a new element at level i, above all of L_{i-1} except the two
    excluded elements and below all of L_{i+1}."""
    gp = GradedPoset.of(gp)
    p, h = gp.poset, gp.height
    if not 2 <= i <= h:
        raise BadParams(f"level must be in 2..{h}, got {i}")
    below = gp.levels[i - 2]
    excluded = list(excluded)
    if len(below) < 3:
        raise LevelTooSmall(f"level {i - 1} has {len(below)} elements, need >= 3")
    if len(set(excluded)) != 2 or not set(excluded) <= set(below):
        raise BadParams(f"excluded must be two distinct elements of level {i - 1}")
    x = _fresh(p, new_name)
    rel = p.covers() + [(a, x) for a in below if a not in excluded]
    if i < h:
        rel += [(x, b) for b in gp.levels[i]]
    q = from_covers([*p.elements, x], rel, name=p.name and f"{p.name}+L{i}")
    try:
        out = GradedPoset.of(q)
    except NotGraded as exc:
        raise NotGradedAfter(str(exc)) from None
    if out.height != h:
        raise NotGradedAfter(f"height changed from {h} to {out.height}")
    return out


def vee_extension(gp, i: int, excluded, new_name="x") -> GradedPoset:
    """Insert a new element at level i, above all of L_{i-1} and below all of
    L_{i+1} except the two excluded elements."""
    gp = GradedPoset.of(gp)
    h = gp.height
    if not 1 <= i <= h - 1:
        raise BadParams(f"level must be in 1..{h - 1}, got {i}")
    flipped = lambda_extension(dual(gp.poset), h + 1 - i, excluded, new_name)
    q = dual(flipped.poset, name=gp.poset.name and f"{gp.poset.name}+V{i}")
    return GradedPoset.of(q)


# -- random graded posets ----------------------------------------------------

def random_graded_poset(seed, max_size=12, max_height=4) -> GradedPoset:
    if max_size < 1 or max_height < 1:
        raise BadParams("bounds must be >= 1")
    rng = random.Random(seed)
    h = rng.randint(1, min(max_height, max_size))
    if h == 1:
        return GradedPoset.of(chain(1, prefix="e"))
    total = rng.randint(h, max_size)
    sizes = [1] * h
    for _ in range(total - h):
        sizes[rng.randrange(h)] += 1
    levels = []
    for k, s in enumerate(sizes):
        levels.append([f"e{k + 1}_{j + 1}" for j in range(s)])
    rel = set()
    density = rng.choice((0.25, 0.4, 0.6))
    for lo, hi in zip(levels, levels[1:]):
        for a in lo:
            for b in hi:
                if rng.random() < density:
                    rel.add((a, b))
        for b in hi:
            if not any((a, b) in rel for a in lo):
                rel.add((rng.choice(lo), b))
        for a in lo:
            if not any((a, b) in rel for b in hi):
                rel.add((a, rng.choice(hi)))
    elements = [e for L in levels for e in L]
    rel = sorted(rel)
    p = from_covers(elements, rel, allow_disconnected=True)
    comps = components(p)
    while len(comps) > 1:
        # every component meets every level; join the first two via levels 1-2
        a = next(e for e in levels[0] if e in comps[0])
        b = next(e for e in levels[1] if e in comps[1])
        rel.append((a, b))
        p = from_covers(elements, rel, allow_disconnected=True)
        comps = components(p)
    p.name = f"rand{seed}"
    return GradedPoset.of(p)
