"""Strata S_{D,I} of algebraic stability conditions and their combinatorics.

A stratum is a node D of the covering poset with a subset I of the simples
of its heart.  Central charges are exact: each value is a pair of Fractions
(real part, imaginary part), so every cell test is pure sign logic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import _linalg as la
from .tiltp import CoveringPoset, Node, Region, TiltError, strata_in_region
from .topo import FinitePoset

Charge = Tuple[Fraction, Fraction]


class StrataError(ValueError):
    pass


class Stratum(NamedTuple):
    node: Node
    I: FrozenSet[int]

    @property
    def codim(self) -> int:
        return len(self.I)


def stratum(node: Node, I: Iterable[int] = ()) -> Stratum:
    return Stratum(node, frozenset(I))


@dataclass(frozen=True)
class ChargeClass:
    kind: str  # "interior", "boundary" or "outside"
    subset: FrozenSet[int]

    def __str__(self) -> str:
        if self.kind == "outside":
            return "Outside"
        name = "Interior" if self.kind == "interior" else "BoundaryFace"
        return f"{name}({sorted(i + 1 for i in self.subset)})"


def as_charge(z: object) -> Charge:
    """Accepts (re, im) pairs, complex numbers, or strings "re,im" such as "-1/2,3"."""
    if isinstance(z, (tuple, list)) and len(z) == 2:
        return Fraction(z[0]), Fraction(z[1])
    if isinstance(z, complex):
        return Fraction(z.real), Fraction(z.imag)
    if isinstance(z, (int, Fraction)):
        return Fraction(z), Fraction(0)
    if isinstance(z, str) and z.count(",") == 1:
        re, im = z.split(",")
        return Fraction(re.strip()), Fraction(im.strip())
    raise StrataError(f"cannot read a charge from {z!r}")


def classify_charge(h: object, Z: Sequence[object]) -> ChargeClass:
    """Position of a charge (values on the simples of h) relative to the cell of h.

    ``h`` is a heart or just the number of simples.
    """
    n = h if isinstance(h, int) else len(h.simples)
    if len(Z) != n:
        raise StrataError(f"expected {n} charge values, got {len(Z)}")
    zs = [as_charge(z) for z in Z]
    if any(im < 0 for _, im in zs):
        return ChargeClass("outside", frozenset())
    flat = frozenset(i for i, (_, im) in enumerate(zs) if im == 0)
    if all(zs[i][0] < 0 for i in flat):
        return ChargeClass("interior", flat)
    return ChargeClass("boundary", flat)


def sample_charge(n: int, I: Iterable[int], rng: random.Random) -> List[Charge]:
    """A random exact point of H^(n-|I|) x R_<0^|I|."""
    I = set(I)
    out = []
    for i in range(n):
        re = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        if i in I:
            out.append((-abs(re) - Fraction(1, rng.randint(1, 9)), Fraction(0)))
        else:
            out.append((re, Fraction(rng.randint(1, 60), rng.randint(1, 9))))
    return out


def chart_basis(P: CoveringPoset, x: Node, I: Iterable[int] = ()) -> Tuple[List[Tuple[int, ...]], FrozenSet[int]]:
    """Ordered classes of the simples of x in the standard basis, with the subset I."""
    return P.classes(x), frozenset(I)


def charge_roundtrip(P: CoveringPoset, s: Stratum, rng: random.Random) -> bool:
    """Sample a charge in the cell, push it to a homomorphism on K and read it back."""
    classes, _ = chart_basis(P, s.node, s.I)
    n = P.n
    z = sample_charge(n, s.I, rng)
    # Z on the standard basis: solve classes^T w = z for real and imaginary parts
    m = [[Fraction(classes[j][i]) for i in range(n)] for j in range(n)]
    inv = la.inverse(m)
    w = [(sum(inv[i][j] * z[j][0] for j in range(n)), sum(inv[i][j] * z[j][1] for j in range(n))) for i in range(n)]
    back = [
        (sum(c[i] * w[i][0] for i in range(n)), sum(c[i] * w[i][1] for i in range(n))) for c in classes
    ]
    return classify_charge(n, back) == ChargeClass("interior", s.I)


# -- frontier ------------------------------------------------------------------
def frontier(P: CoveringPoset, lower: Stratum, upper: Stratum) -> bool:
    """S_lower lies in the closure of S_upper: E <= D <= L_I D <= L_J E."""
    E, J = lower
    D, I = upper
    if not P.leq(E, D):
        return False
    LI = P.tilt_set(D, I)
    if not P.leq(D, LI):
        return False
    return P.leq(LI, P.tilt_set(E, J))


def shift_window(P: CoveringPoset, D: Node) -> Region:
    """[D[1], D[-1]], which holds every stratum meeting the closure of S_D."""
    lo, hi = P.shift_up(D), P.shift_down(D)
    return P.interval(lo, hi)


def closure_poset(P: CoveringPoset, D: Node, reg: Optional[Region] = None) -> FinitePoset:
    """Strata in the closure of S_{D, empty}, ordered by closure."""
    reg = reg or shift_window(P, D)
    base = [E for E in reg.nodes if reg.leq(E, D)]
    full = strata_in_region(P, reg, base)
    keep = [a for a in full.elements if reg.leq(D, P.tilt_set_in(reg, a[0], a[1]))]
    ks = set(keep)
    return FinitePoset(keep, [(a, b) for a, b in full.relations() if a in ks and b in ks])


@dataclass
class PurityReport:
    pure: bool
    size: int
    chains: int
    failures: List[str]


def purity_report(P: CoveringPoset, D: Node, reg: Optional[Region] = None) -> PurityReport:
    """Every maximal chain runs from a codim-n stratum up to (D, empty) one codimension at a time."""
    cp = closure_poset(P, D, reg)
    fails: List[str] = []
    n = P.n
    top = (D, frozenset())
    if cp.maximal() != [top]:
        fails.append("closure does not have (D, empty) as its unique top")
    for m in cp.minimal():
        if len(m[1]) != n:
            fails.append(f"minimal stratum of codimension {len(m[1])}")
    for a, b in cp.covers():
        if len(a[1]) != len(b[1]) + 1:
            fails.append("cover changes codimension by more than one")
    chains = cp.maximal_chains()
    for c in chains:
        if len(c) != n + 1:
            fails.append(f"maximal chain of length {len(c) - 1}")
    return PurityReport(not fails, len(cp), len(chains), fails)


# -- closed intervals -----------------------------------------------------------
def _flat_set(P: CoveringPoset, D: Node, other: Stratum) -> FrozenSet[int]:
    """Simples s of D whose class lies in the span of the classes of other.I.

    These are the s with Im Z(s) = 0 at a generic point of the other stratum.
    """
    base = P.classes(D)
    span = [list(map(Fraction, P.classes(other.node)[i])) for i in sorted(other.I)]
    r = la.rank(span, P.n) if span else 0
    out = set()
    for i, v in enumerate(base):
        if la.rank(span + [list(map(Fraction, v))], P.n) == r:
            out.add(i)
    return frozenset(out)


@dataclass
class IntervalReport:
    size: int
    I: FrozenSet[int]
    K: FrozenSet[int]
    embeds: bool
    isomorphic: bool
    poset: FinitePoset


def closed_interval(P: CoveringPoset, lower: Stratum, upper: Stratum) -> IntervalReport:
    """[S_lower, S_upper] and its comparison with the Boolean interval [I, K]^op."""
    if not frontier(P, lower, upper):
        raise StrataError("lower stratum is not in the closure of the upper one")
    E, J = lower
    D, I = upper
    reg = P.interval(E, P.tilt_set(E, J))
    full = strata_in_region(P, reg, [x for x in reg.nodes if reg.leq(x, D)])
    elems = [
        a
        for a in full.elements
        if _in_closure(P, reg, lower, a) and _in_closure(P, reg, a, upper)
    ]
    es = set(elems)
    sub = FinitePoset(elems, [(a, b) for a, b in full.relations() if a in es and b in es])
    K = _flat_set(P, D, Stratum(*lower))
    labels = {a: _flat_set(P, D, Stratum(*a)) for a in elems}
    inside = all(I <= L <= K for L in labels.values())
    injective = len(set(labels.values())) == len(elems)
    reverses = all(
        sub.leq(a, b) == (labels[a] >= labels[b]) for a in elems for b in elems
    )
    embeds = inside and injective and reverses
    iso = embeds and len(elems) == 2 ** len(K - I)
    return IntervalReport(len(elems), frozenset(I), K, embeds, iso, sub)


def _in_closure(P: CoveringPoset, reg: Region, a, b) -> bool:
    (E, J), (D, I) = a, b
    if E not in reg or D not in reg:
        return False
    ti, tj = P.tilt_set_in(reg, D, I), P.tilt_set_in(reg, E, J)
    if ti is None or tj is None:
        return False
    return reg.leq(E, D) and reg.leq(D, ti) and reg.leq(ti, tj)


def strata_poset(P: CoveringPoset, reg: Region) -> FinitePoset:
    """All strata (D, I) with D and L_I D in the convex region."""
    return strata_in_region(P, reg, reg.nodes)


def strata_table(P: CoveringPoset, poset: FinitePoset) -> List[Dict]:
    rows = []
    for node, I in poset.elements:
        rows.append(
            {
                "braid": P.G.format(node.braid),
                "heart": [[list(r), k] for r, k in P.heart(node).key()],
                "I": sorted(i + 1 for i in I),
                "codim": len(I),
            }
        )
    return rows
