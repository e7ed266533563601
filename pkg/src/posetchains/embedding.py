"""Weak-subposet containment and exact La(Q, P) for small hosts.

An embedding is an injective map f with a <= b implying f(a) <= f(b); the
image need not reflect the order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .chains import IntervalChain, boolean_lattice, build_interval_chain, position_name
from .errors import InvalidParams, TooLarge
from .poset import Poset, _ranks, as_poset, bits


@dataclass
class Embedding:
    mapping: dict
    verified: bool = False


@dataclass
class LaResult:
    host: str
    pattern: str
    value: int
    witness_family: list
    nodes: int
    method: str
    time_ms: float = 0.0

    def to_json(self):
        return {
            "host": self.host,
            "pattern": self.pattern,
            "value": self.value,
            "witness": self.witness_family,
            "nodes": self.nodes,
            "method": self.method,
            "time_ms": round(self.time_ms, 3),
        }


class _Pattern:
    """Per-pattern data reused across many searches."""

    def __init__(self, p: Poset):
        self.p = p
        n = len(p)
        self.n = n
        self.rank = _ranks(p)
        self.corank = _ranks(Poset(p.elements, p.down))
        self.upcnt = [m.bit_count() for m in p.up]
        self.downcnt = [m.bit_count() for m in p.down]
        self.linear = sorted(range(n), key=lambda i: (self.rank[i], i))


_PATTERN_CACHE: dict = {}


def _pattern(p: Poset) -> _Pattern:
    key = (p.elements, p.up)
    got = _PATTERN_CACHE.get(key)
    if got is None:
        if len(_PATTERN_CACHE) > 256:
            _PATTERN_CACHE.clear()
        got = _PATTERN_CACHE[key] = _Pattern(p)
    return got


def _host_profile(host: Poset, allowed: int):
    """Up/down counts and chain lengths of each allowed host element, restricted to allowed."""
    n = len(host)
    upc = [0] * n
    downc = [0] * n
    rank = [0] * n
    corank = [0] * n
    members = list(bits(allowed))
    for c in members:
        upc[c] = (host.up[c] & allowed).bit_count()
        downc[c] = (host.down[c] & allowed).bit_count()
    # host declaration order is not assumed to be a linear extension
    order = sorted(members, key=lambda c: downc[c])
    for c in order:
        r = 0
        for d in bits(host.down[c] & allowed):
            if rank[d] > r:
                r = rank[d]
        rank[c] = r + 1
    for c in reversed(order):
        r = 0
        for d in bits(host.up[c] & allowed):
            if corank[d] > r:
                r = corank[d]
        corank[c] = r + 1
    return upc, downc, rank, corank


class _Counter:
    __slots__ = ("nodes",)

    def __init__(self):
        self.nodes = 0


def _search(pat: Poset, host: Poset, allowed=None, must=None, counter=None):
    """Backtracking search; returns a list (pattern index -> host index) or None."""
    P = _pattern(pat)
    if allowed is None:
        allowed = (1 << len(host)) - 1
    if P.n == 0:
        return []
    if P.n > allowed.bit_count():
        return None
    upc, downc, hrank, hcorank = _host_profile(host, allowed)
    cand0 = []
    for a in range(P.n):
        m = 0
        ua, da, ra, ca = P.upcnt[a], P.downcnt[a], P.rank[a], P.corank[a]
        for c in bits(allowed):
            if upc[c] >= ua and downc[c] >= da and hrank[c] >= ra and hcorank[c] >= ca:
                m |= 1 << c
        if not m:
            return None
        cand0.append(m)

    counter = counter or _Counter()

    def run(order, first_image):
        pos = {a: k for k, a in enumerate(order)}
        below = []
        above = []
        for a in order:
            k = pos[a]
            below.append([b for b in bits(pat.down[a]) if pos[b] < k])
            above.append([b for b in bits(pat.up[a]) if pos[b] < k])
        f = [None] * P.n
        hup, hdown = host.up, host.down

        def rec(k, used):
            counter.nodes += 1
            if k == P.n:
                return True
            a = order[k]
            if k == 0 and first_image is not None:
                cands = 1 << first_image
            else:
                cands = cand0[a] & ~used
                for b in below[k]:
                    cands &= hup[f[b]]
                    if not cands:
                        return False
                for b in above[k]:
                    cands &= hdown[f[b]]
                    if not cands:
                        return False
            while cands:
                low = cands & -cands
                c = low.bit_length() - 1
                f[a] = c
                if rec(k + 1, used | low):
                    return True
                cands ^= low
            f[a] = None
            return False

        if rec(0, 0):
            return list(f)
        return None

    if must is None:
        return run(P.linear, None)
    for a in P.linear:
        if cand0[a] >> must & 1:
            order = [a] + [b for b in P.linear if b != a]
            got = run(order, must)
            if got is not None:
                return got
    return None


def verify_embedding(pattern: Poset, host: Poset, mapping: dict) -> bool:
    """Independent check: total on the pattern, injective, order-preserving."""
    pattern, host = as_poset(pattern), as_poset(host)
    if set(mapping) != set(pattern.elements):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images):
        return False
    if any(v not in host.index for v in images):
        return False
    for a in pattern.elements:
        for b in pattern.elements:
            if pattern.lt(a, b) and not host.lt(mapping[a], mapping[b]):
                return False
    return True


def embeds(pattern, host, allowed=None) -> Embedding | None:
    pattern, host = as_poset(pattern), as_poset(host)
    f = _search(pattern, host, allowed)
    if f is None:
        return None
    mapping = {pattern.elements[a]: host.elements[c] for a, c in enumerate(f)}
    return Embedding(mapping, verified=verify_embedding(pattern, host, mapping))


def _family_mask(host: Poset, family):
    m = 0
    for e in family:
        m |= 1 << host.idx(e)
    return m


def is_p_free(family, pattern, host) -> bool:
    pattern, host = as_poset(pattern), as_poset(host)
    return _search(pattern, host, _family_mask(host, family)) is None


def is_isomorphic(p, q) -> bool:
    """A bijective order-preserving map between posets with equally many
    relations is an isomorphism."""
    p, q = as_poset(p), as_poset(q)
    if len(p) != len(q) or p.relation_count() != q.relation_count():
        return False
    return _search(p, q) is not None


# -- exact La ----------------------------------------------------------------

DEFAULT_HOST_CAP = 26


def _host_poset(host):
    if isinstance(host, IntervalChain):
        return host.poset, host
    return host, None


def la_exact(host, pattern, cap=DEFAULT_HOST_CAP) -> LaResult:
    """Largest P-free subfamily of the host by branch-and-bound.

    Double-chain hosts use a gap-compressed search: in C_2 two elements are
    incomparable only when they are (l_i, r_i) or (r_i, r_{i+1}), so the
    induced order of a family depends only on the gaps between consecutive
    members in the canonical order, and gaps beyond 4 can be shortened.
    """
    hp, chain = _host_poset(host)
    pattern = as_poset(pattern)
    if len(hp) > cap:
        raise TooLarge(f"host has {len(hp)} elements, cap is {cap}")
    t0 = time.perf_counter()
    if chain is not None and chain.k == 2:
        value, fam, nodes = _la_double_chain(chain, pattern)
        method = "gap-compressed"
    else:
        value, fam, nodes = _la_branch_and_bound(hp, pattern)
        method = "branch-and-bound"
    witness = [hp.elements[i] for i in fam]
    if not is_p_free(witness, pattern, hp) or len(witness) != value:
        raise AssertionError("La witness failed re-verification")
    return LaResult(
        host=chain.describe() if chain is not None else (hp.name or "host"),
        pattern=pattern.name or "P",
        value=value,
        witness_family=witness,
        nodes=nodes,
        method=method,
        time_ms=(time.perf_counter() - t0) * 1000,
    )


def _la_branch_and_bound(host: Poset, pattern: Poset):
    n = len(host)
    best = [0, []]
    counter = _Counter()
    chosen = []

    def rec(i, mask, size):
        counter.nodes += 1
        if size > best[0]:
            best[0] = size
            best[1] = list(chosen)
        if i == n or size + (n - i) <= best[0]:
            return
        bit = 1 << i
        if _search(pattern, host, mask | bit, must=i) is None:
            chosen.append(i)
            rec(i + 1, mask | bit, size + 1)
            chosen.pop()
        rec(i + 1, mask, size)

    rec(0, 0, 0)
    return best[0], best[1], counter.nodes


def _la_double_chain(chain: IntervalChain, pattern: Poset):
    host = chain.poset
    npos = 2 * chain.n
    at = [host.idx(position_name(q)) for q in range(npos)]
    best = [0, []]
    counter = _Counter()
    seq = []

    def gaps(last):
        if last == 0:
            return (1, 2)
        return (1, 2, 3) if last % 2 else (1, 2, 3, 4)

    def rec(last, mask):
        counter.nodes += 1
        size = len(seq)
        if size > best[0]:
            best[0] = size
            best[1] = [at[q] for q in seq]
        if size + (npos - 1 - last) <= best[0]:
            return
        for g in gaps(last):
            q = last + g
            if q >= npos:
                break
            bit = 1 << at[q]
            if _search(pattern, host, mask | bit, must=at[q]) is None:
                seq.append(q)
                rec(q, mask | bit)
                seq.pop()

    for start in (0, 1, 2):
        if start >= npos:
            break
        if best[0] >= npos - start:
            break
        bit = 1 << at[start]
        if _search(pattern, host, bit, must=at[start]) is None:
            seq.append(start)
            rec(start, bit)
            seq.pop()
    return best[0], best[1], counter.nodes


def la_chain_sequence(pattern, n: int, k_max: int, cap=DEFAULT_HOST_CAP):
    if not 1 <= k_max <= n:
        raise InvalidParams(f"need 1 <= k_max <= n, got k_max={k_max}, n={n}")
    out = []
    for k in range(1, k_max + 1):
        out.append(la_exact(build_interval_chain(n, k), pattern, cap=cap))
    for a, b in zip(out, out[1:]):
        if a.value > b.value:
            raise AssertionError(f"La over interval chains decreased: {a.value} > {b.value}")
    return out


# -- e(P) estimates over level windows ---------------------------------------

DEFAULT_WINDOW_CAP = 128


def _window_masks(n):
    b = boolean_lattice(n)
    sizes = [0] * (n + 1)
    level_mask = [0] * (n + 1)
    for idx, name in enumerate(b.elements):
        k = 0 if name == "s_" else name.count("_")
        level_mask[k] |= 1 << idx
        sizes[k] += 1
    return b, level_mask


def window_contains(pattern, n, i, m):
    b, level_mask = _window_masks(n)
    allowed = 0
    for k in range(i, i + m):
        allowed |= level_mask[k]
    return _search(as_poset(pattern), b, allowed) is not None


def e_n(pattern, n, mode="every"):
    """Largest m such that every (or, with mode='exists', some) window of m
    consecutive levels of B_n is P-free.  Capped at n+1 (all of B_n)."""
    if mode not in ("every", "exists"):
        raise InvalidParams(f"unknown mode {mode!r}")
    pattern = as_poset(pattern)
    b, level_mask = _window_masks(n)
    best = 0
    for m in range(1, n + 2):
        free = []
        for i in range(0, n - m + 2):
            allowed = 0
            for k in range(i, i + m):
                allowed |= level_mask[k]
            free.append(_search(pattern, b, allowed) is None)
        ok = all(free) if mode == "every" else any(free)
        if not ok:
            break
        best = m
    return best


def e_estimate(pattern, n_max: int, mode="every", n_min=1, cap=DEFAULT_WINDOW_CAP):
    if 2 ** n_max > cap:
        raise TooLarge(f"B_{n_max} has {2 ** n_max} elements, cap is {cap}")
    seq = {}
    for n in range(n_min, n_max + 1):
        seq[n] = e_n(pattern, n, mode)
    ns = sorted(seq)
    last = [seq[k] for k in ns[-2:]]
    saturated = bool(ns) and seq[ns[-1]] == ns[-1] + 1
    stabilized = len(last) == 2 and last[0] == last[1] and not saturated
    return {
        "mode": mode,
        "sequence": seq,
        "stabilized": stabilized,
        "value": last[-1] if stabilized else None,
    }
