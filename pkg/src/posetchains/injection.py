"""Level-by-level construction of an order-preserving injection of a graded
poset into a family F of the double chain C_2.

Levels are matched to F in the canonical order ``l0, l1, r1, l2, r2, ...``.
Between two levels one element of F is normally skipped; a boundary that
carries a triple of the chosen independent set needs no skip, at the cost of
a few local swaps of images.

Positions: ``l0 -> 0``, ``l_i -> 2i-1``, ``r_i -> 2i``.  Two positions are
incomparable exactly for ``(l_i, r_i)`` and ``(r_i, r_{i+1})``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

from .auxgraph import LAMBDA_TYPE, AuxGraph, TripleVertex, alpha_dp, build_aux_graph
from .chains import chain_position, double_chain, position_name
from .embedding import Embedding, _search, verify_embedding
from .errors import ConstructionFailed, FamilyTooSmall, InvalidParams, NotIndependent, TooLarge
from .poset import GradedPoset


def _is_l(q):
    return q % 2 == 1 or q == 0


def _l(i):
    return 0 if i == 0 else 2 * i - 1


def _r(i):
    return 2 * i


def _incomparable(p, q):
    p, q = min(p, q), max(p, q)
    return p > 0 and ((p % 2 == 1 and q == p + 1) or (p % 2 == 0 and q == p + 2))


def _index_of(q):
    """i such that q is l_i or r_i."""
    return (q + 1) // 2


@dataclass
class InjectionPlan:
    level_order: list
    family: list
    trace: list = field(default_factory=list)  # (element, position name) in matching order
    switches: list = field(default_factory=list)  # (rule, a, b, level)
    skips: list = field(default_factory=list)  # (boundary, position name, reason)
    notes: list = field(default_factory=list)
    assignment: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "level_order": self.level_order,
            "family": self.family,
            "trace": [list(t) for t in self.trace],
            "switches": [list(s) for s in self.switches],
            "skips": [list(s) for s in self.skips],
            "notes": self.notes,
            "assignment": self.assignment,
        }


def parse_family(family, n=None):
    """Sorted canonical positions from names, positions or a bitmask."""
    if isinstance(family, int):
        pos = [q for q in range(family.bit_length()) if family >> q & 1]
    elif isinstance(family, str):
        pos = [chain_position(t.strip()) for t in family.split(",") if t.strip()]
    else:
        pos = [q if isinstance(q, int) else chain_position(q) for q in family]
    if len(set(pos)) != len(pos):
        raise InvalidParams("family has repeated elements")
    if any(q < 0 for q in pos) or (n is not None and any(q >= 2 * n for q in pos)):
        raise InvalidParams(f"family does not fit in C_2({n})")
    return sorted(pos)


def check_independent(g: AuxGraph, chosen):
    idx = []
    for v in chosen:
        i = v if isinstance(v, int) else g.vertices.index(v)
        idx.append(i)
    pairs = [g.vertices[i].pair_index for i in idx]
    if len(set(pairs)) != len(pairs):
        raise NotIndependent("two chosen triples share a level pair")
    for a, b in combinations(idx, 2):
        if g.is_adjacent(a, b):
            raise NotIndependent(f"{g.vertices[a].name} and {g.vertices[b].name} are adjacent")
    return sorted(idx, key=lambda i: g.vertices[i].pair_index)


def _split(v: TripleVertex, gp: GradedPoset):
    """(part in the lower level, part in the upper level), in declaration order."""
    lo = [e for e in v.elems if gp.rank[e] == v.pair_index]
    hi = [e for e in v.elems if gp.rank[e] == v.pair_index + 1]
    return lo, hi


def _level_orders(gp: GradedPoset, at_pair: dict):
    orders = []
    for t in range(1, gp.height + 1):
        level = list(gp.levels[t - 1])
        first = _split(at_pair[t - 1], gp)[1] if t - 1 in at_pair else []
        last = _split(at_pair[t], gp)[0] if t in at_pair else []
        shared = [e for e in first if e in last]
        first_only = [e for e in first if e not in shared]
        last_only = [e for e in last if e not in shared]
        free = [e for e in level if e not in first and e not in last]
        # with a shared element (intersecting triples) the free element goes
        # before it, giving y, w, z, y' for a level of four
        if shared:
            orders.append(first_only + free + shared + last_only)
        else:
            orders.append(first_only + shared + free + last_only)
    return orders


@lru_cache(maxsize=8)
def _host(n):
    return double_chain(n).poset


def construct_embedding(gp, independent, family, n=None, fallback_search=False, graph=None):
    """Build the injection; returns (Embedding, InjectionPlan).

    ``independent`` is a list of TripleVertex (or indices into the graph
    built from ``gp``).  Raises ConstructionFailed if the result does not
    verify."""
    gp = GradedPoset.of(gp)
    p = gp.poset
    g = graph if graph is not None else build_aux_graph(gp)
    chosen = check_independent(g, independent)
    at_pair = {g.vertices[i].pair_index: g.vertices[i] for i in chosen}
    F = parse_family(family, n)
    need = len(p) + gp.height - len(chosen) - 1
    if len(F) < need:
        raise FamilyTooSmall(f"family has {len(F)} elements, need {need}")

    orders = _level_orders(gp, at_pair)
    plan = InjectionPlan(orders, [position_name(q) for q in F])
    f = {}
    k = 0  # next unused index into F
    skipped = set()

    def take():
        nonlocal k
        while F[k] in skipped:
            k += 1
        q = F[k]
        k += 1
        return q

    def remaining():
        return [q for q in F[k:] if q not in skipped]

    def swap(rule, a, b, level):
        f[a], f[b] = f[b], f[a]
        plan.switches.append((rule, a, b, level))

    lt = p.lt
    for t in range(1, gp.height + 1):
        if t >= 2 and (t - 1) not in at_pair:
            top = max(f.values())
            rest = remaining()
            target = None
            if top > 0:
                i = _index_of(top) if _is_l(top) else top // 2 + 1
                if _r(i) in rest[:2]:
                    target = _r(i)
            if target is not None:
                skipped.add(target)
                plan.skips.append((t - 1, position_name(target), "protect"))
            else:
                skipped.add(rest[0])
                plan.skips.append((t - 1, position_name(rest[0]), "plain"))
        for e in orders[t - 1]:
            f[e] = take()
        if t >= 2 and (t - 1) in at_pair:
            _apply_rules(gp, at_pair, t, orders, f, swap, plan, lt)

    plan.trace = [(e, position_name(f[e])) for L in orders for e in L]
    plan.assignment = {e: position_name(f[e]) for e in p.elements}
    host = _host(max(n or 0, max(F) // 2 + 1, 2))
    mapping = dict(plan.assignment)
    if not verify_embedding(p, host, mapping):
        bad = [
            (a, b) for a in p.elements for b in p.elements
            if lt(a, b) and not host.lt(mapping[a], mapping[b])
        ]
        msg = f"constructed map breaks {len(bad)} relation(s), first {bad[:3]}"
        if fallback_search:
            exists = _search(p, host, sum(1 << host.idx(position_name(q)) for q in F)) is not None
            msg += "; an embedding exists" if exists else "; no embedding exists at all"
        raise ConstructionFailed(msg, plan)
    return Embedding(mapping, verified=True), plan


def _apply_rules(gp, at_pair, t, orders, f, swap, plan, lt):
    """Switches for the triple on the boundary between levels t-1 and t."""
    v = at_pair[t - 1]
    nxt = at_pair.get(t)
    lower_order, upper_order = orders[t - 2], orders[t - 1]
    lo, hi = _split(v, gp)

    if v.vtype == LAMBDA_TYPE:
        _rule_lambda(v, hi[0], upper_order, f, swap, t, "1.1")
        return

    x = lo[0]
    intersecting = nxt is not None and set(nxt.elems) & set(v.elems)
    if not intersecting:
        y, z = [e for e in upper_order if e in hi]
        i = _index_of(f[x])
        if f[x] == _l(i) and i > 0 and f[y] == _r(i):
            clash = [s for s in lower_order if f[s] == _r(i - 1) and lt(s, y)]
            if clash:
                swap("1.2:x<->y", x, y, t)
                if f[z] == _l(i + 1):
                    for u in upper_order:
                        if f[u] == _r(i + 1) and lt(x, u):
                            swap("1.2:z<->u", z, u, t)
                            break
        return

    # V-type triple followed by an intersecting Λ-type triple
    size = len(gp.levels[t - 1])
    nlo, _ = _split(nxt, gp)
    if not (nxt.vtype == LAMBDA_TYPE and size in (3, 4) and len(set(nxt.elems) & set(v.elems)) == 1):
        raise ConstructionFailed(f"unexpected intersecting triples {v.name} / {nxt.name}", plan)
    plan.notes.append(f"intersecting triples {v.name} / {nxt.name} on a level of {size}")
    z = next(e for e in hi if e in nlo)
    y = next(e for e in hi if e != z)
    y2 = next(e for e in nlo if e != z)
    i = _index_of(f[x])
    if i > 0 and f[x] == _l(i) and f[y] == _r(i):
        swap("2:x<->y", x, y, t)
    if size == 3:
        k = _index_of(f[z])
        if k > 0 and f[z] == _l(k) and f[y2] == _r(k) and f[x] == _r(k - 1):
            swap("2.1:x'<->y'", z, y2, t)
    else:
        w = next(e for e in upper_order if e not in (y, z, y2))
        # w sits right after y; if its image clashes with x's, z takes it
        if _incomparable(f[x], f[w]) and lt(x, w):
            swap("2.2:z<->w", z, w, t)


def _rule_lambda(v, z, upper_order, f, swap, t, rule):
    pos = upper_order.index(z)
    if pos + 1 >= len(upper_order):
        return
    w = upper_order[pos + 1]
    i = _index_of(f[z])
    if i > 0 and f[z] == _l(i) and f[w] == _r(i):
        swap(rule + ":z<->w", z, w, t)


# -- exhaustive / sampled check ---------------------------------------------

@dataclass
class TheoremReport:
    pattern: str
    n: int
    family_size: int
    alpha: int
    families: int
    oracle_failures: int = 0
    construct_failures: int = 0
    sampled: bool = False
    first_oracle_failure: list | None = None
    first_construct_failure: list | None = None
    skip_mismatches: int = 0

    def ok(self):
        return self.oracle_failures == 0 and self.construct_failures == 0 and self.skip_mismatches == 0

    def to_json(self):
        return dict(self.__dict__, ok=self.ok())


DEFAULT_FAMILY_CAP = 300_000


def theorem_check(gp, n: int, sample: int | None = None, seed=None, independent=None,
                  cap=DEFAULT_FAMILY_CAP) -> TheoremReport:
    """Check every (or a sample of) family of size |P|+h-alpha-1 in C_2(n)
    with the search oracle and with the constructive builder."""
    gp = GradedPoset.of(gp)
    p = gp.poset
    g = build_aux_graph(gp)
    if independent is None:
        independent = alpha_dp(g).witness
    chosen = check_independent(g, independent)
    alpha = len(chosen)
    size = len(p) + gp.height - alpha - 1
    host = double_chain(n).poset
    npos = 2 * n
    if size > npos:
        raise InvalidParams(f"C_2({n}) has only {npos} elements, families need {size}")
    at = [host.idx(position_name(q)) for q in range(npos)]
    total = comb(npos, size)
    if sample is None:
        if total > cap:
            raise TooLarge(f"{total} families exceeds cap {cap}; use sampling")
        families = combinations(range(npos), size)
    else:
        if seed is None:
            raise InvalidParams("sampling needs a seed")
        rng = random.Random(seed)
        families = (sorted(rng.sample(range(npos), size)) for _ in range(sample))
    rep = TheoremReport(p.name or "P", n, size, alpha, 0, sampled=sample is not None)
    expected_skips = gp.height - 1 - alpha
    for fam in families:
        rep.families += 1
        mask = 0
        for q in fam:
            mask |= 1 << at[q]
        if _search(p, host, mask) is None:
            rep.oracle_failures += 1
            if rep.first_oracle_failure is None:
                rep.first_oracle_failure = [position_name(q) for q in fam]
        try:
            _, plan = construct_embedding(gp, chosen, list(fam), n, graph=g)
        except ConstructionFailed:
            rep.construct_failures += 1
            if rep.first_construct_failure is None:
                rep.first_construct_failure = [position_name(q) for q in fam]
            continue
        if len(plan.skips) != expected_skips:
            rep.skip_mismatches += 1
    return rep
