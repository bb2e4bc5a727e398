"""Hearts of the fundamental domain and their simple tilts.

A fundamental heart is recorded by its n simple objects, all images of
indecomposables of D(Q) with shift in [2-N, 0], together with the braid
generator attached to each simple.  Tilts that leave the domain are brought
back by the inverse twist at the tilted simple; the twist is never applied
to objects directly.  Instead the identity

    phi_s^{-1} L_s E = R_{s[N-3]} ... R_{s[1]} R_s E

(and its mirror for right tilts) rewrites it as a run of tilts that stay
inside the domain, which is then checked against the expected simple s[N-2].
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .braid import ArtinGroup, BraidElement, group
from .dynkin import Quiver, parse_quiver
from .repq import DerivedCategory, IndecObject, category

LEFT, RIGHT = "left", "right"


class HeartError(RuntimeError):
    pass


@dataclass(frozen=True)
class FundHeart:
    simples: Tuple[IndecObject, ...]  # sorted
    decoration: Tuple[BraidElement, ...]  # aligned with simples

    def key(self) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        return heart_key(self)

    def index(self, s: IndecObject) -> int:
        try:
            return self.simples.index(s)
        except ValueError:
            raise HeartError(f"{s.label()} is not simple in this heart") from None

    def braid_of(self, s: IndecObject) -> BraidElement:
        return self.decoration[self.index(s)]


def heart_key(h: FundHeart) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    return tuple((s.root, s.shift) for s in sorted(h.simples))


def _make(pairs: Sequence[Tuple[IndecObject, BraidElement]]) -> FundHeart:
    pairs = sorted(pairs, key=lambda p: p[0])
    return FundHeart(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


@dataclass(frozen=True)
class TiltResult:
    heart: FundHeart
    stays: bool
    braid_factor: Optional[BraidElement]


class HeartCalculus:
    """Tilting rules for the CY-N category of a Dynkin quiver."""

    def __init__(self, q: Quiver, N: int):
        if N < 2:
            raise HeartError("N must be at least 2")
        self.q = q
        self.N = N
        self.n = q.rank
        self.C: DerivedCategory = category(q)
        self.G: ArtinGroup = group(q.diagram)

    # -- graded Hom in the doubled grading ----------------------------------
    def hom1(self, s: IndecObject, t: IndecObject) -> int:
        """dim Hom^1_Gamma(s, t), refusing the case carried by the dual summand."""
        direct = self.C.hom(s, t, 1)
        dual = self.C.hom(t, s, self.N - 1)
        if dual:
            raise HeartError(
                f"Hom^1({s.label()}, {t.label()}) has a dual-side contribution; "
                "its twist cannot be computed from D(Q) cones"
            )
        return direct

    def linked(self, s: IndecObject, t: IndecObject) -> bool:
        """Some graded Hom between s and t in the CY category is nonzero."""
        return bool(self.C.graded_hom_cy(s, t, self.N))

    # -- standard heart ------------------------------------------------------
    def standard_heart(self) -> FundHeart:
        return _make([(self.C.simple(i), self.G.generator(i + 1)) for i in range(self.n)])

    def in_domain(self, h: FundHeart) -> bool:
        return all(2 - self.N <= s.shift <= 0 for s in h.simples)

    # -- tilts that stay in the domain ----------------------------------------
    def _left(self, h: FundHeart, s: IndecObject) -> FundHeart:
        b_s = h.braid_of(s)
        b_inv = self.G.inverse(b_s)
        out = [(s.shifted(-1), b_s)]
        for t, b_t in zip(h.simples, h.decoration):
            if t == s:
                continue
            e = self.hom1(s, t)
            if e == 0:
                out.append((t, b_t))
            elif e == 1:
                cone = self.C.cone_onedim(s, t, 1)
                if len(cone) != 1:
                    raise HeartError(f"twist of {t.label()} at {s.label()} is decomposable")
                out.append((cone[0], self.G.product(b_s, b_t, b_inv)))
            else:
                raise HeartError(f"Hom^1({s.label()}, {t.label()}) has dimension {e}")
        return _make(out)

    def _right(self, h: FundHeart, t: IndecObject) -> FundHeart:
        b_t = h.braid_of(t)
        b_inv = self.G.inverse(b_t)
        out = [(t.shifted(1), b_t)]
        for u, b_u in zip(h.simples, h.decoration):
            if u == t:
                continue
            e = self.hom1(u, t)
            if e == 0:
                out.append((u, b_u))
            elif e == 1:
                cone = self.C.cone_onedim(u, t, 1)
                if len(cone) != 1:
                    raise HeartError(f"inverse twist of {u.label()} at {t.label()} is decomposable")
                out.append((cone[0], self.G.product(b_inv, b_u, b_t)))
            else:
                raise HeartError(f"Hom^1({u.label()}, {t.label()}) has dimension {e}")
        return _make(out)

    def left_stays(self, s: IndecObject) -> bool:
        return s.shift >= 3 - self.N

    def right_stays(self, t: IndecObject) -> bool:
        return t.shift <= -1

    def simple_tilt(self, h: FundHeart, s: IndecObject, direction: str = LEFT) -> TiltResult:
        if s not in h.simples:
            raise HeartError(f"{s.label()} is not simple in this heart")
        if direction == LEFT:
            if self.left_stays(s):
                return TiltResult(self._left(h, s), True, None)
            return TiltResult(self._untwisted_left(h, s), False, h.braid_of(s))
        if direction == RIGHT:
            if self.right_stays(s):
                return TiltResult(self._right(h, s), True, None)
            return TiltResult(self._untwisted_right(h, s), False, self.G.inverse(h.braid_of(s)))
        raise HeartError(f"unknown direction {direction!r}")

    def _untwisted_left(self, h: FundHeart, s: IndecObject) -> FundHeart:
        """phi_s^{-1} L_s h for s in the bottom layer, as N-2 right tilts."""
        cur = h
        for j in range(self.N - 2):
            cur = self._right(cur, s.shifted(j))
        top = s.shifted(self.N - 2)
        if top not in cur.simples:
            raise HeartError(f"untwisted tilt at {s.label()} lost {top.label()}")
        if cur.braid_of(top) != h.braid_of(s):
            raise HeartError("untwisted tilt changed the decoration of the tilted simple")
        for t in h.simples:
            if t != s and self.C.hom(s, t, 1) and t not in cur.simples:
                raise HeartError(f"untwisted tilt at {s.label()} moved linked simple {t.label()}")
        if not self.in_domain(cur):
            raise HeartError("untwisted tilt left the fundamental domain")
        return cur

    def _untwisted_right(self, h: FundHeart, t: IndecObject) -> FundHeart:
        """phi_t R_t h for t in the top layer, as N-2 left tilts."""
        cur = h
        for j in range(self.N - 2):
            cur = self._left(cur, t.shifted(-j))
        bottom = t.shifted(2 - self.N)
        if bottom not in cur.simples:
            raise HeartError(f"untwisted tilt at {t.label()} lost {bottom.label()}")
        if cur.braid_of(bottom) != h.braid_of(t):
            raise HeartError("untwisted tilt changed the decoration of the tilted simple")
        for u in h.simples:
            if u != t and self.C.hom(u, t, 1) and u not in cur.simples:
                raise HeartError(f"untwisted tilt at {t.label()} moved linked simple {u.label()}")
        if not self.in_domain(cur):
            raise HeartError("untwisted tilt left the fundamental domain")
        return cur

    # -- checks ----------------------------------------------------------------
    def heart_violations(self, h: FundHeart) -> List[str]:
        """Heart axioms for the simples, the pairwise Hom^1 bound and the braid dichotomy."""
        out: List[str] = []
        from ._linalg import int_det

        if len(h.simples) != self.n:
            out.append("wrong number of simples")
        if not self.in_domain(h):
            out.append("simple outside the fundamental domain")
        if abs(int_det([s.k_class() for s in h.simples])) != 1:
            out.append("simple classes are not a basis")
        G = self.G
        for a, s in enumerate(h.simples):
            for b, t in enumerate(h.simples):
                g = self.C.graded_hom_cy(s, t, self.N)
                if a == b:
                    if g != {0: 1, self.N: 1}:
                        out.append(f"{s.label()} is not {self.N}-spherical: {g}")
                    continue
                if any(d <= 0 for d in g):
                    out.append(f"Hom^<=0({s.label()}, {t.label()}) nonzero: {g}")
                if b > a:
                    # the bound needs N >= 3; at N = 2 Hom^1 is symmetric
                    if self.N >= 3 and g.get(1, 0) + self.C.graded_hom_cy(t, s, self.N).get(1, 0) > 1:
                        out.append(f"Hom^1 bound fails for {s.label()}, {t.label()}")
                    x, y = h.decoration[a], h.decoration[b]
                    commute = G.multiply(x, y) == G.multiply(y, x)
                    braid = G.product(x, y, x) == G.product(y, x, y)
                    if self.linked(s, t):
                        if not braid or commute:
                            out.append(f"decorations of {s.label()}, {t.label()} should braid")
                    elif not commute or braid:
                        out.append(f"decorations of {s.label()}, {t.label()} should commute")
        return out

    def heart_json(self, h: FundHeart) -> Dict:
        return {
            "simples": [
                {"root": list(s.root), "shift": s.shift, "braid": self.G.word_string(b)}
                for s, b in zip(h.simples, h.decoration)
            ]
        }


class FundamentalDomain:
    """Every heart between the standard one and its shift by 2-N, with all tilts.

    left[h][i] / right[h][i] give (target index, braid factor or None) for the
    tilt of heart h at its i-th simple.
    """

    def __init__(self, q: Quiver, N: int, budget: Optional[int] = None):
        from .budget import Counter

        self.calc = HeartCalculus(q, N)
        self.q, self.N, self.n = q, N, q.rank
        G = self.calc.G
        counter = Counter(budget, "fundamental domain")
        start = self.calc.standard_heart()
        seen: Dict[Tuple, FundHeart] = {heart_key(start): start}
        self.violations: List[str] = []
        queue = deque([start])
        while queue:
            h = queue.popleft()
            counter.tick()
            for s in h.simples:
                for direction, ok in ((LEFT, self.calc.left_stays(s)), (RIGHT, self.calc.right_stays(s))):
                    if not ok:
                        continue
                    r = self.calc.simple_tilt(h, s, direction)
                    k = heart_key(r.heart)
                    if k in seen:
                        if seen[k].decoration != r.heart.decoration:
                            self.violations.append(f"decoration depends on the path at {k}")
                    else:
                        seen[k] = r.heart
                        queue.append(r.heart)
        keys = sorted(seen, key=lambda k: (-sum(sh for _, sh in k), k))
        self.hearts: List[FundHeart] = [seen[k] for k in keys]
        self.index: Dict[Tuple, int] = {k: i for i, k in enumerate(keys)}
        self.standard = self.index[heart_key(start)]
        self.left: List[List[Tuple[int, Optional[BraidElement]]]] = []
        self.right: List[List[Tuple[int, Optional[BraidElement]]]] = []
        for h in self.hearts:
            lrow, rrow = [], []
            for s in h.simples:
                for direction, row in ((LEFT, lrow), (RIGHT, rrow)):
                    r = self.calc.simple_tilt(h, s, direction)
                    k = heart_key(r.heart)
                    if k not in self.index:
                        raise HeartError(f"tilt produced a heart outside the enumerated domain: {k}")
                    if seen[k].decoration != r.heart.decoration:
                        self.violations.append(f"decoration depends on the path at {k}")
                    row.append((self.index[k], r.braid_factor))
            self.left.append(lrow)
            self.right.append(rrow)
        # b depends only on the root
        self.root_braid: Dict[Tuple[int, ...], BraidElement] = {}
        for h in self.hearts:
            for s, b in zip(h.simples, h.decoration):
                old = self.root_braid.setdefault(s.root, b)
                if old != b:
                    self.violations.append(f"root {s.root} carries two braids")
        del G

    def __len__(self) -> int:
        return len(self.hearts)

    def tilt_inverse_violations(self) -> List[str]:
        """Left then right tilt at the matching simple is the identity."""
        out = []
        for a, h in enumerate(self.hearts):
            for i, s in enumerate(h.simples):
                b, fac = self.left[a][i]
                tgt = self.hearts[b]
                if fac is None:
                    back_simple = s.shifted(-1)
                else:
                    back_simple = s.shifted(self.N - 2)
                j = tgt.index(back_simple)
                c, fac2 = self.right[b][j]
                if c != a:
                    out.append(f"right tilt does not undo left tilt at heart {a}, simple {i}")
                elif (fac is None) != (fac2 is None):
                    out.append(f"braid factors disagree at heart {a}, simple {i}")
                elif fac is not None and not self.calc.G.is_identity(self.calc.G.multiply(fac, fac2)):
                    out.append(f"braid factors are not inverse at heart {a}, simple {i}")
        return out


_DOMAINS: Dict[Tuple, FundamentalDomain] = {}


def fundamental_domain(q: Quiver, N: int) -> FundamentalDomain:
    q = parse_quiver(q)
    key = (q.name, q.arrows, N)
    if key not in _DOMAINS:
        _DOMAINS[key] = FundamentalDomain(q, N)
    return _DOMAINS[key]
