"""Boolean lattices, k-interval chains and level windows as posets of subsets.

Subsets of ``[n] = {1..n}`` are int bitmasks with bit ``j-1`` standing for
``j``.  The underlying full chain is the identity one,
``l_m = {1..m}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidParams
from .poset import Poset


def _subset_up(subsets):
    n = len(subsets)
    up = []
    for i in range(n):
        a = subsets[i]
        m = 0
        for j in range(n):
            b = subsets[j]
            if a != b and a & b == a:
                m |= 1 << j
        up.append(m)
    return up


def subset_poset(named_subsets, name=None) -> Poset:
    names = [s for s, _ in named_subsets]
    return Poset(names, _subset_up([m for _, m in named_subsets]), name=name)


def subset_members(mask: int):
    return [j + 1 for j in range(mask.bit_length()) if mask >> j & 1]


@dataclass(frozen=True)
class IntervalChain:
    n: int
    k: int
    poset: Poset
    subsets: tuple  # bitmask per element, aligned with poset.elements

    @property
    def linear_order(self):
        """Canonical linear extension (``l0, l1, r1, l2, r2, ...`` for k=2)."""
        return self.poset.elements

    def subset_of(self, name):
        return subset_members(self.subsets[self.poset.idx(name)])

    def describe(self):
        return f"chain:k={self.k},n={self.n}"


def _chain_name(m, rel_mask, k):
    if k == 2 and rel_mask == 0b10:
        return f"r{m + 1}"
    return f"S_{m}_{rel_mask}"


def build_interval_chain(n: int, k: int) -> IntervalChain:
    if not (1 <= k <= n):
        raise InvalidParams(f"need 1 <= k <= n, got n={n}, k={k}")
    full = [(1 << m) - 1 for m in range(n + 1)]
    found = {s: f"l{m}" for m, s in enumerate(full)}
    for m in range(0, n - k + 1):
        base = full[m]
        for rel in range(1, (1 << k) - 1):
            s = base | (rel << m)
            if s in found:
                continue
            # canonical window: longest full-chain prefix contained in s
            low = 0
            while low < n and s >> low & 1:
                low += 1
            rel_mask = (s >> low) & ((1 << k) - 1)
            found[s] = _chain_name(low, rel_mask, k)

    def key(s):
        return (s.bit_length(), s.bit_count(), s)

    subsets = sorted(found, key=key)
    poset = subset_poset([(found[s], s) for s in subsets], name=f"C{k}({n})")
    return IntervalChain(n, k, poset, tuple(subsets))


def double_chain(n: int) -> IntervalChain:
    if n < 2:
        raise InvalidParams(f"double chain needs n >= 2, got {n}")
    return build_interval_chain(n, 2)


def as_poset(c: IntervalChain) -> Poset:
    return c.poset


def _level_name(mask):
    return "s_" + "_".join(str(j) for j in subset_members(mask))


def level_window(n: int, i: int, m: int) -> Poset:
    """Induced subposet of B_n on all subsets with sizes ``i .. i+m-1``."""
    if n < 0 or m < 1 or i < 0 or i + m - 1 > n:
        raise InvalidParams(f"bad window n={n}, i={i}, m={m}")
    subsets = []
    for size in range(i, i + m):
        for combo in combinations(range(n), size):
            s = 0
            for j in combo:
                s |= 1 << j
            subsets.append(s)
    return subset_poset([(_level_name(s), s) for s in subsets], name=f"B{n}[{i}:{i + m}]")


def boolean_lattice(n: int) -> Poset:
    p = level_window(n, 0, n + 1)
    p.name = f"B{n}"
    return p


# -- double-chain coordinates ------------------------------------------------
# Canonical positions: l0 -> 0, l_i -> 2i-1, r_i -> 2i (i >= 1).

def chain_position(name: str) -> int:
    kind, num = name[0], int(name[1:])
    if kind == "l":
        return 0 if num == 0 else 2 * num - 1
    if kind == "r":
        return 2 * num
    raise InvalidParams(f"not a double-chain element: {name!r}")


def position_name(pos: int) -> str:
    if pos == 0:
        return "l0"
    return f"l{(pos + 1) // 2}" if pos % 2 else f"r{pos // 2}"


# -- host spec strings -------------------------------------------------------

def _params(text):
    out = {}
    for part in filter(None, text.split(",")):
        key, eq, val = part.partition("=")
        if not eq:
            raise InvalidParams(f"bad host parameter {part!r}")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise InvalidParams(f"host parameter {key} must be an integer") from None
    return out


def parse_host(spec: str):
    """Parse ``chain:k=2,n=10``, ``boolean:n=5`` or ``window:n=5,i=1,m=3``.

    Returns ``(poset, interval_chain_or_None)``.
    """
    kind, _, rest = spec.partition(":")
    prm = _params(rest)
    try:
        if kind == "chain":
            c = build_interval_chain(prm["n"], prm["k"])
            return c.poset, c
        if kind == "boolean":
            return boolean_lattice(prm["n"]), None
        if kind == "window":
            return level_window(prm["n"], prm["i"], prm["m"]), None
    except KeyError as exc:
        raise InvalidParams(f"host spec {spec!r} is missing {exc.args[0]}") from None
    raise InvalidParams(f"unknown host kind {kind!r}")
