"""Incomparable triples between consecutive levels and the graph on them.

A V-type triple has one element in level ``L_j`` and two in ``L_{j+1}``; a
Λ-type triple has two in ``L_j`` and one in ``L_{j+1}``.  Triples whose
levels are ``L_j, L_{j+1}`` form class ``V_j``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations

from .errors import MixedPosets, TooLarge
from .poset import GradedPoset, Poset, bits

log = logging.getLogger(__name__)

V_TYPE = "V"
LAMBDA_TYPE = "Λ"


def _poset_key(p: Poset):
    return hash((p.elements, p.up))


@dataclass(frozen=True)
class TripleVertex:
    elems: tuple  # names, in declaration order
    vtype: str
    pair_index: int
    owner: int = field(default=0, compare=False, repr=False)

    @property
    def id(self):
        return (self.pair_index, tuple(sorted(self.elems)))

    @property
    def name(self):
        return ",".join(self.elems)

    def label(self):
        return f"{self.name}:{self.vtype}:V{self.pair_index}"

    def to_json(self):
        return {"elems": list(self.elems), "type": self.vtype, "pair": self.pair_index}


def enumerate_triples(gp) -> list:
    gp = GradedPoset.of(gp)
    p = gp.poset
    owner = _poset_key(p)
    out = []
    for j in range(1, gp.height):
        low = [p.idx(e) for e in gp.levels[j - 1]]
        high = [p.idx(e) for e in gp.levels[j]]
        found = []
        # Elements of one level are pairwise incomparable, so only the
        # cross-level pairs need checking.
        for x in low:
            free_up = [y for y in high if not p.up[x] >> y & 1]
            for y, z in combinations(free_up, 2):
                found.append(((x, y, z), V_TYPE))
        for y in high:
            free_down = [x for x in low if not p.down[y] >> x & 1]
            for x1, x2 in combinations(free_down, 2):
                found.append(((x1, x2, y), LAMBDA_TYPE))
        found.sort(key=lambda t: sorted(t[0]))
        for idxs, vtype in found:
            names = tuple(p.elements[i] for i in sorted(idxs))
            out.append(TripleVertex(names, vtype, j, owner))
    return out


def _level_sizes(gp: GradedPoset):
    return [len(L) for L in gp.levels]


def adjacent(v: TripleVertex, w: TripleVertex, gp) -> bool:
    gp = GradedPoset.of(gp)
    key = _poset_key(gp.poset)
    if v.owner != key or w.owner != key:
        raise MixedPosets("triples do not come from this poset")
    if v.pair_index == w.pair_index:
        return v != w
    if abs(v.pair_index - w.pair_index) != 1:
        return False
    lower, upper = (v, w) if v.pair_index < w.pair_index else (w, v)
    shared = gp.levels[upper.pair_index - 1]
    size = len(shared)
    common = set(lower.elems) & set(upper.elems)
    if size >= 5:
        return bool(common)
    if size in (3, 4):
        if common:
            return not (lower.vtype == V_TYPE and upper.vtype == LAMBDA_TYPE and len(common) == 1)
        in_shared = set(shared)
        k = sum(e in in_shared for e in lower.elems) + sum(e in in_shared for e in upper.elems)
        return k == size
    if size == 2:
        return True
    log.info("no adjacency rule for shared level of size %d (%s, %s)", size, lower.name, upper.name)
    return False


@dataclass
class AuxGraph:
    graded: GradedPoset
    vertices: list
    adj: list  # bitmask of neighbours per vertex index

    @property
    def classes(self):
        h = self.graded.height
        out = [[] for _ in range(max(h - 1, 0))]
        for i, v in enumerate(self.vertices):
            out[v.pair_index - 1].append(i)
        return out

    def edges(self):
        return [(i, j) for i in range(len(self.vertices)) for j in bits(self.adj[i]) if i < j]

    def is_adjacent(self, i, j):
        return bool(self.adj[i] >> j & 1)

    def is_independent(self, idxs):
        idxs = list(idxs)
        return all(not self.is_adjacent(a, b) for a, b in combinations(idxs, 2))

    def __len__(self):
        return len(self.vertices)


def build_aux_graph(gp) -> AuxGraph:
    gp = GradedPoset.of(gp)
    verts = enumerate_triples(gp)
    n = len(verts)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if verts[j].pair_index - verts[i].pair_index > 1:
                break
            if adjacent(verts[i], verts[j], gp):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return AuxGraph(gp, verts, adj)


@dataclass
class AlphaResult:
    size: int
    witness: list  # vertex indices
    pair_evaluations: int = 0

    def vertices(self, g: AuxGraph):
        return [g.vertices[i] for i in self.witness]


def alpha_dp(g: AuxGraph) -> AlphaResult:
    """Level-sweep recurrence over the classes V_1, V_2, ...

    f(v) is the largest independent set among the earlier classes plus v.
    Besides the two terms over V_{j-1}, the value reached two classes back
    plus one is always allowed; it covers an empty V_{j-1} and the case where
    every vertex of V_{j-1} is a neighbour of v.
    """
    classes = g.classes
    best_upto = []  # (size, witness) for classes <= j
    f = {}
    evals = 0
    for j, cls in enumerate(classes):
        prev = classes[j - 1] if j >= 1 else []
        two_back = best_upto[j - 2] if j >= 2 else (0, ())
        for v in cls:
            size, wit = two_back[0] + 1, two_back[1] + (v,)
            for u in prev:
                evals += 1
                fu = f[u]
                if g.is_adjacent(u, v):
                    cand = fu
                else:
                    cand = (fu[0] + 1, fu[1] + (v,))
                if cand[0] > size:
                    size, wit = cand
            f[v] = (size, wit)
        here = max((f[v] for v in cls), key=lambda t: t[0], default=None)
        before = best_upto[j - 1] if j >= 1 else (0, ())
        best_upto.append(here if here is not None and here[0] >= before[0] else before)
    total = best_upto[-1] if best_upto else (0, ())
    return AlphaResult(total[0], sorted(total[1]), evals)


DEFAULT_BRUTE_CAP = 96


def alpha_bruteforce(g: AuxGraph, cap=DEFAULT_BRUTE_CAP) -> AlphaResult:
    n = len(g)
    if n > cap:
        raise TooLarge(f"{n} vertices exceeds brute-force cap {cap}")
    best = [0, 0]

    def rec(cand, chosen, size):
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + cand.bit_count() <= best[0]:
            return
        low = cand & -cand
        i = low.bit_length() - 1
        rec(cand & ~low & ~g.adj[i], chosen | low, size + 1)
        rec(cand & ~low, chosen, size)

    rec((1 << n) - 1, 0, 0)
    return AlphaResult(best[0], list(bits(best[1])))


def to_dot(g: AuxGraph, name="G_P") -> str:
    out = [f'graph "{name}" {{']
    for i, v in enumerate(g.vertices):
        out.append(f'  {i} [label="{v.label()}"];')
    for i, j in g.edges():
        out.append(f"  {i} -- {j};")
    out.append("}")
    return "\n".join(out) + "\n"


def report(g: AuxGraph, alpha: AlphaResult | None = None) -> dict:
    alpha = alpha or alpha_dp(g)
    return {
        "vertices": [v.to_json() for v in g.vertices],
        "edges": [list(e) for e in g.edges()],
        "alpha": alpha.size,
        "witness": alpha.witness,
    }


def to_json(g: AuxGraph, alpha: AlphaResult | None = None) -> str:
    return json.dumps(report(g, alpha), ensure_ascii=False, indent=2)
