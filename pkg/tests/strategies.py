"""Hypothesis strategies for small random posets."""

from hypothesis import strategies as st

from posetchains.poset import from_covers


@st.composite
def posets(draw, max_size=7, connected=False):
    n = draw(st.integers(1, max_size))
    names = [f"a{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    rel = [(names[i], names[j]) for i, j in chosen]
    if connected:
        rel += [(names[0], names[j]) for j in range(1, n)]
    # shuffle declaration order so index order is not a linear extension
    order = draw(st.permutations(names))
    return from_covers(order, rel, allow_disconnected=True)


def brute_lt(p):
    """Reachability by naive transitive closure of the cover pairs."""
    n = len(p)
    idx = p.index
    m = [[False] * n for _ in range(n)]
    for a, b in p.covers():
        m[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            if m[i][k]:
                for j in range(n):
                    if m[k][j]:
                        m[i][j] = True
    return m
