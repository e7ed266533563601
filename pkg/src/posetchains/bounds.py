"""Closed-form upper bounds on La(n, P) and La(C_k, P), as exact rationals.

A "coefficient" c means La(n, P) <= c * binom(n, floor(n/2)) for large n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import InvalidParams, NotGraded
from .poset import GradedPoset, Poset, as_poset, height


def burcsi_nagy(size: int, h: int):
    """Return (C_2 bound, coefficient) from |P| and h alone."""
    if size < 1 or h < 1:
        raise InvalidParams("size and height must be >= 1")
    b = size + h - 2
    return b, Fraction(b, 2)


def theorem_main(size: int, h: int, alpha: int):
    """Double-chain bound improved by the independence number of the triple graph."""
    if alpha < 0:
        raise InvalidParams("alpha must be >= 0")
    b = size + h - alpha - 2
    return b, Fraction(b, 2)


def grosz_ck(size: int, h: int, k: int) -> int:
    if k < 2:
        raise InvalidParams("k must be >= 2")
    return size + (h - 1) * (3 * k - 5) * 2 ** (k - 2) - 1


def chenli_coeff(size: int, h: int, k: int) -> Fraction:
    if k < 1:
        raise InvalidParams("k must be >= 1")
    inner = size + Fraction((k * k + 3 * k - 2) * (h - 1), 2) - 1
    return inner / (k + 1)


def grosz_coeff(size: int, h: int, k: int) -> Fraction:
    if k < 2:
        raise InvalidParams("k must be >= 2")
    return Fraction(size + (3 * k - 5) * (h * 2 ** (k - 2) - 1) - 1, 2 ** (k - 1))


def best_coefficient(size: int, h: int, alpha: int | None = None, k_range=range(1, 7)):
    """Smallest coefficient over every formula and every k in range.

    Returns (value, name, k)."""
    cands = [(burcsi_nagy(size, h)[1], "burcsi_nagy", None)]
    if alpha is not None:
        cands.append((theorem_main(size, h, alpha)[1], "theorem_main", None))
    for k in k_range:
        if k >= 1:
            cands.append((chenli_coeff(size, h, k), "chenli", k))
        if k >= 2:
            cands.append((grosz_coeff(size, h, k), "grosz", k))
    return min(cands, key=lambda t: (t[0], t[1], t[2] or 0))


def la_upper(coefficient: Fraction, n: int) -> Fraction:
    return coefficient * comb(n, n // 2)


@dataclass
class BoundEntry:
    name: str
    k: int | None
    value: Fraction | int
    kind: str  # "coefficient" or "chain"

    def to_json(self):
        v = self.value
        return {"name": self.name, "k": self.k, "kind": self.kind,
                "value": str(v) if isinstance(v, Fraction) else v}


@dataclass
class BoundReport:
    size: int
    height: int
    alpha: int | None
    entries: list = field(default_factory=list)
    equality: dict | None = None

    def to_json(self):
        return {
            "size": self.size,
            "height": self.height,
            "alpha": self.alpha,
            "entries": [e.to_json() for e in self.entries],
            "equality_check": self.equality,
        }

    def to_text(self):
        head = f"|P|={self.size} h={self.height} alpha={'-' if self.alpha is None else self.alpha}"
        rows = [head, f"{'bound':<20}{'k':>3}  {'kind':<12}value"]
        for e in self.entries:
            k = "" if e.k is None else str(e.k)
            rows.append(f"{e.name:<20}{k:>3}  {e.kind:<12}{e.value}")
        if self.equality:
            rows.append(f"equality check: {self.equality['outcome']}")
        return "\n".join(rows) + "\n"


def _alpha_of(p: Poset):
    from .auxgraph import alpha_dp, build_aux_graph

    try:
        gp = GradedPoset.of(p)
    except NotGraded:
        return None
    return alpha_dp(build_aux_graph(gp)).size


def bound_report(p, k_values=range(1, 7)) -> BoundReport:
    p = as_poset(p)
    size, h = len(p), height(p)
    alpha = _alpha_of(p)
    rep = BoundReport(size, h, alpha)
    c2, coef = burcsi_nagy(size, h)
    rep.entries += [BoundEntry("burcsi_nagy", None, c2, "chain"),
                    BoundEntry("burcsi_nagy", None, coef, "coefficient")]
    if alpha is not None:
        c2, coef = theorem_main(size, h, alpha)
        rep.entries += [BoundEntry("theorem_main", None, c2, "chain"),
                        BoundEntry("theorem_main", None, coef, "coefficient")]
    for k in k_values:
        if k >= 2:
            rep.entries.append(BoundEntry("grosz_ck", k, grosz_ck(size, h, k), "chain"))
            rep.entries.append(BoundEntry("grosz", k, grosz_coeff(size, h, k), "coefficient"))
        if k >= 1:
            rep.entries.append(BoundEntry("chenli", k, chenli_coeff(size, h, k), "coefficient"))
    best = best_coefficient(size, h, alpha, k_values)
    rep.entries.append(BoundEntry(f"best:{best[1]}", best[2], best[0], "coefficient"))
    return rep


HOLDS, FAILS, UNSTABLE = "HOLDS", "FAILS", "UNSTABLE"


def equality_check(p, n_max: int = 6, n_min: int = 1) -> dict:
    """Compare per-n window values e_n against (|P|+h-alpha-2)/2.

    Only finite-n evidence is reported; nothing asymptotic is claimed."""
    from .embedding import e_estimate, window_contains

    p = as_poset(p)
    gp = GradedPoset.of(p)
    alpha = _alpha_of(p)
    target = theorem_main(len(p), gp.height, alpha)[1]
    est = e_estimate(p, n_max, n_min=n_min)
    out = {
        "target": str(target),
        "alpha": alpha,
        "sequence": {str(k): v for k, v in est["sequence"].items()},
        "tested_n": n_max,
    }
    if not est["stabilized"]:
        out["outcome"] = UNSTABLE
        return out
    value = est["value"]
    out["value"] = value
    if value == target:
        out["outcome"] = HOLDS
        return out
    out["outcome"] = FAILS
    m = value + 1
    for i in range(0, n_max - m + 2):
        if window_contains(p, n_max, i, m):
            out["witness_window"] = {"n": n_max, "i": i, "m": m}
            break
    return out
