"""Finite posets stored as reachability bitmasks.

Element ``i`` of a :class:`Poset` is identified by its position in
``elements``; ``up[i]`` is the bitmask of elements strictly above it and
``down[i]`` the bitmask of elements strictly below it.  Every algorithm
iterates elements in declaration order so results are reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    Disconnected,
    DuplicateElement,
    NoGreatestElement,
    NoLeastElement,
    NotGraded,
    ParseError,
    UnknownElement,
)

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    __slots__ = ("elements", "index", "up", "down", "cover_up", "name")

    def __init__(self, elements, up, name=None):
        # Internal constructor: ``up`` must already be a transitively closed
        # strict order.  Use from_covers() for untrusted input.
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.up = tuple(up)
        n = len(self.elements)
        down = [0] * n
        for i in range(n):
            for j in bits(self.up[i]):
                down[j] |= 1 << i
        self.down = tuple(down)
        cover_up = []
        for i in range(n):
            above = self.up[i]
            implied = 0
            for k in bits(above):
                implied |= self.up[k]
            cover_up.append(above & ~implied)
        self.cover_up = tuple(cover_up)
        self.name = name

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Poset{label} |P|={len(self)} covers={len(self.covers())}>"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.up == other.up

    def __hash__(self):
        return hash((self.elements, self.up))

    def idx(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(name) from None

    def lt(self, a, b) -> bool:
        return bool(self.up[self.idx(a)] >> self.idx(b) & 1)

    def leq(self, a, b) -> bool:
        return a == b or self.lt(a, b)

    def covers(self):
        """Cover pairs ``(lower, upper)`` by name, in declaration order."""
        return [
            (self.elements[i], self.elements[j])
            for i in range(len(self))
            for j in bits(self.cover_up[i])
        ]

    def lt_matrix(self):
        n = len(self)
        return [[bool(self.up[i] >> j & 1) for j in range(n)] for i in range(n)]

    def relation_count(self) -> int:
        return sum(m.bit_count() for m in self.up)

    def minimal(self):
        return [e for i, e in enumerate(self.elements) if not self.down[i]]

    def maximal(self):
        return [e for i, e in enumerate(self.elements) if not self.up[i]]

    def induced(self, names: Iterable[str], name=None) -> "Poset":
        keep = [self.idx(a) for a in names]
        pos = {i: k for k, i in enumerate(keep)}
        up = []
        for i in keep:
            m = 0
            for j in bits(self.up[i]):
                if j in pos:
                    m |= 1 << pos[j]
            up.append(m)
        return Poset([self.elements[i] for i in keep], up, name=name)

    def renamed(self, mapping, name=None) -> "Poset":
        new = [mapping.get(e, e) for e in self.elements]
        if len(set(new)) != len(new):
            dup = next(e for e in new if new.count(e) > 1)
            raise DuplicateElement(dup)
        return Poset(new, self.up, name=name if name is not None else self.name)


def _find_cycle(n, succ):
    color = [0] * n
    stack_path = []

    def dfs(u):
        color[u] = 1
        stack_path.append(u)
        for v in succ[u]:
            if color[v] == 1:
                return stack_path[stack_path.index(v):] + [v]
            if color[v] == 0:
                found = dfs(v)
                if found:
                    return found
        stack_path.pop()
        color[u] = 2
        return None

    for s in range(n):
        if color[s] == 0:
            found = dfs(s)
            if found:
                return found
    return []


def components(p: Poset):
    """Connected components of the Hasse diagram, as lists of names."""
    n = len(p)
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= p.up[i] | p.down[i]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append([p.elements[i] for i in bits(comp)])
    return comps


def is_connected(p: Poset) -> bool:
    return len(p) > 0 and len(components(p)) == 1


def from_covers(elements: Sequence[str], relations: Iterable[tuple], *,
                allow_disconnected=False, name=None) -> Poset:
    """Build a poset from generating relations ``(a, b)`` meaning a < b.

    The relations need not be covers; the transitive closure is taken and
    covers are re-derived.
    """
    elements = list(elements)
    index = {}
    for e in elements:
        if e in index:
            raise DuplicateElement(e)
        index[e] = len(index)
    n = len(elements)
    succ = [[] for _ in range(n)]
    for a, b in relations:
        if a not in index:
            raise UnknownElement(a)
        if b not in index:
            raise UnknownElement(b)
        succ[index[a]].append(index[b])

    indeg = [0] * n
    for u in range(n):
        for v in succ[u]:
            indeg[v] += 1
    order = [u for u in range(n) if indeg[u] == 0]
    k = 0
    while k < len(order):
        u = order[k]
        k += 1
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                order.append(v)
    if len(order) < n:
        cyc = _find_cycle(n, succ)
        raise CycleDetected([elements[i] for i in cyc])

    up = [0] * n
    for u in reversed(order):
        m = 0
        for v in succ[u]:
            m |= (1 << v) | up[v]
        up[u] = m
    p = Poset(elements, up, name=name)
    if not allow_disconnected and n > 1:
        comps = components(p)
        if len(comps) > 1:
            raise Disconnected(comps)
    return p


def chain(k: int, prefix="c", name=None) -> Poset:
    names = [f"{prefix}{i}" for i in range(1, k + 1)]
    return from_covers(names, zip(names, names[1:]), name=name or f"chain{k}")


# -- levels and gradedness --------------------------------------------------

def _ranks(p: Poset):
    """Mirsky rank (1-based): length of the longest chain ending at each element."""
    n = len(p)
    rank = [0] * n
    remaining = (1 << n) - 1
    level = 0
    while remaining:
        level += 1
        mins = 0
        for i in bits(remaining):
            if not p.down[i] & remaining:
                mins |= 1 << i
        for i in bits(mins):
            rank[i] = level
        remaining &= ~mins
    return rank


def height(p: Poset) -> int:
    return max(_ranks(p), default=0)


@dataclass(frozen=True)
class LevelDecomposition:
    levels: tuple
    rank: dict

    def level_of(self, name) -> int:
        return self.rank[name]

    def sizes(self):
        return [len(L) for L in self.levels]


def mirsky_levels(p: Poset) -> LevelDecomposition:
    r = _ranks(p)
    h = max(r, default=0)
    levels = [[] for _ in range(h)]
    for i, e in enumerate(p.elements):
        levels[r[i] - 1].append(e)
    return LevelDecomposition(
        tuple(tuple(L) for L in levels), {e: r[i] for i, e in enumerate(p.elements)}
    )


def shortest_maximal_chain(p: Poset):
    """A maximal chain (bottom to top, by name) with the fewest elements."""
    n = len(p)
    if n == 0:
        return []
    rank = _ranks(p)
    order = sorted(range(n), key=lambda i: rank[i])
    best = [0] * n
    back = [-1] * n
    for i in order:
        lower = [j for j in bits(p.down[i]) if p.cover_up[j] >> i & 1]
        if not lower:
            best[i] = 1
        else:
            j = min(lower, key=lambda j: best[j])
            best[i] = best[j] + 1
            back[i] = j
    tops = [i for i in range(n) if not p.up[i]]
    i = min(tops, key=lambda i: best[i])
    out = []
    while i != -1:
        out.append(p.elements[i])
        i = back[i]
    return out[::-1]


def maximal_chains(p: Poset):
    """Enumerate every maximal chain (brute force; small posets only)."""
    n = len(p)
    out = []

    def extend(path):
        i = path[-1]
        ups = list(bits(p.cover_up[i]))
        if not ups:
            out.append([p.elements[k] for k in path])
            return
        for j in ups:
            extend(path + [j])

    for i in range(n):
        if not p.down[i]:
            extend([i])
    return out


def is_graded(p: Poset):
    """Return ``(graded, witness)``; witness is a maximal chain shorter than h."""
    h = height(p)
    short = shortest_maximal_chain(p)
    if len(short) < h:
        return False, short
    return True, None


@dataclass(frozen=True)
class GradedPoset:
    poset: Poset
    decomposition: LevelDecomposition
    height: int

    @classmethod
    def of(cls, p: Poset) -> "GradedPoset":
        if isinstance(p, GradedPoset):
            return p
        ok, witness = is_graded(p)
        if not ok:
            raise NotGraded(witness)
        dec = mirsky_levels(p)
        return cls(p, dec, len(dec.levels))

    @property
    def levels(self):
        return self.decomposition.levels

    @property
    def rank(self):
        return self.decomposition.rank

    def __len__(self):
        return len(self.poset)


def as_poset(p) -> Poset:
    """Unwrap a GradedPoset or IntervalChain; plain posets pass through."""
    return p if isinstance(p, Poset) else p.poset


def incomparable(p: Poset, a, b) -> bool:
    i, j = p.idx(a), p.idx(b)
    return i != j and not (p.up[i] >> j & 1) and not (p.up[j] >> i & 1)


# -- constructions ----------------------------------------------------------

def dual(p: Poset, name=None) -> Poset:
    return Poset(p.elements, p.down, name=name or (p.name and f"{p.name}_dual"))


def _disjoint_names(p1: Poset, p2: Poset):
    taken = set(p1.elements)
    mapping = {}
    for e in p2.elements:
        new = e
        while new in taken:
            new = "b_" + new
        taken.add(new)
        if new != e:
            mapping[e] = new
    return p2.renamed(mapping) if mapping else p2


def oplus(p1: Poset, p2: Poset, name=None) -> Poset:
    """Linear sum: every element of p1 below every element of p2."""
    p2 = _disjoint_names(p1, p2)
    rel = list(p1.covers()) + list(p2.covers())
    rel += [(a, b) for a in p1.maximal() for b in p2.minimal()]
    return from_covers(list(p1.elements) + list(p2.elements), rel, name=name)


def greatest(p: Poset):
    tops = p.maximal()
    if len(tops) != 1:
        raise NoGreatestElement(f"{len(tops)} maximal elements")
    return tops[0]


def least(p: Poset):
    bots = p.minimal()
    if len(bots) != 1:
        raise NoLeastElement(f"{len(bots)} minimal elements")
    return bots[0]


def otimes(p1: Poset, p2: Poset, name=None) -> Poset:
    """Glue the greatest element of p1 to the least element of p2."""
    g = greatest(p1)
    low = least(p2)
    p2 = _disjoint_names(p1, p2.renamed({low: g + "__glue"}))
    glued = g + "__glue"
    rel = list(p1.covers())
    for a, b in p2.covers():
        rel.append((g if a == glued else a, g if b == glued else b))
    elems = list(p1.elements) + [e for e in p2.elements if e != glued]
    return from_covers(elems, rel, name=name)


# -- text format and DOT ----------------------------------------------------

def parse_poset(text: str, *, allow_disconnected=False) -> Poset:
    name = None
    elements = []
    relations = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("poset ") or line == "poset":
            if seen_content:
                raise ParseError(lineno, "'poset' header must come first")
            parts = line.split(None, 1)
            if len(parts) != 2 or len(parts[1].split()) != 1:
                raise ParseError(lineno, "bad poset header")
            name = parts[1].strip()
            seen_content = True
            continue
        seen_content = True
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("elements", "relations"):
            raise ParseError(lineno, f"expected 'elements:' or 'relations:', got {line!r}")
        for tok in rest.split():
            if key == "elements":
                if not NAME_RE.match(tok):
                    raise ParseError(lineno, f"bad element name {tok!r}")
                if tok in elements:
                    raise ParseError(lineno, f"duplicate element {tok!r}")
                elements.append(tok)
            else:
                a, lt, b = tok.partition("<")
                if not lt or not NAME_RE.match(a) or not NAME_RE.match(b):
                    raise ParseError(lineno, f"bad relation {tok!r}")
                relations.append((a, b))
    declared = set(elements)
    for a, b in relations:
        for e in (a, b):
            if e not in declared:
                raise ParseError(0, f"relation uses undeclared element {e!r}")
    if not elements:
        raise ParseError(0, "no elements declared")
    return from_covers(elements, relations, allow_disconnected=allow_disconnected, name=name)


def format_poset(p: Poset, name=None) -> str:
    name = name or p.name
    lines = []
    if name:
        lines.append(f"poset {name}")
    lines.append("elements: " + " ".join(p.elements))
    cov = p.covers()
    if cov:
        lines.append("relations: " + " ".join(f"{a}<{b}" for a, b in cov))
    return "\n".join(lines) + "\n"


def to_dot(p: Poset, name=None) -> str:
    dec = mirsky_levels(p)
    gname = name or p.name or "P"
    out = [f'digraph "{gname}" {{', "  rankdir=BT;"]
    for k, level in enumerate(dec.levels, start=1):
        nodes = " ".join(f'"{e}";' for e in level)
        out.append(f"  {{ rank=same; {nodes} }}  // L{k}")
    for a, b in p.covers():
        out.append(f'  "{a}" -> "{b}";')
    out.append("}")
    return "\n".join(out) + "\n"
