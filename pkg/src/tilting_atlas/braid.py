"""Artin braid groups of ADE diagrams with Garside left-greedy normal forms.

A braid is stored as Δ^k · a_1 ⋯ a_r where Δ is the positive lift of the
longest Weyl element w0 and each a_i is a Weyl element other than 1 and w0,
identified with its positive (reduced-word) lift.  Consecutive factors are
left-weighted: the left descent set of a_{i+1} is contained in the right
descent set of a_i.  This form is unique, so equality of braids is equality
of (k, factors).

Weyl elements are integer matrices acting on the root lattice (column i is
w(α_i) in simple-root coordinates).  Each distinct matrix gets a small
integer id the first time it is seen and every operation on ids is memoised,
so the group is explored lazily and never enumerated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .dynkin import DynkinDiagram, build_diagram

Mat = Tuple[Tuple[int, ...], ...]  # tuple of columns


class BraidError(ValueError):
    pass


class WeylGroup:
    """Lazily interned Weyl group of a simply-laced diagram."""

    def __init__(self, d: DynkinDiagram):
        self.diagram = d
        self.n = d.rank
        self.cartan = d.cartan()
        self._mats: List[Mat] = []
        self._ids: Dict[Mat, int] = {}
        self._rdesc: List[FrozenSet[int]] = []
        self._rgen: Dict[Tuple[int, int], int] = {}
        self._lgen: Dict[Tuple[int, int], int] = {}
        self._mul: Dict[Tuple[int, int], int] = {}
        self._inv: Dict[int, int] = {}
        self._lw: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self._word: Dict[int, Tuple[int, ...]] = {}
        n = self.n
        self.e = self._intern(tuple(tuple(int(i == j) for i in range(n)) for j in range(n)))
        self.gens = [self._intern(self._reflection(j)) for j in range(n)]
        w = self.e
        while len(self.rdesc(w)) < n:
            j = next(j for j in range(n) if j not in self.rdesc(w))
            w = self.right_gen(w, j)
        self.w0 = w

    # -- basic data ---------------------------------------------------------
    def _reflection(self, j: int) -> Mat:
        n = self.n
        cols = []
        for i in range(n):
            v = [int(i == k) for k in range(n)]
            v[j] -= self.cartan[j][i]
            cols.append(tuple(v))
        return tuple(cols)

    def _intern(self, m: Mat) -> int:
        k = self._ids.get(m)
        if k is None:
            k = len(self._mats)
            self._mats.append(m)
            self._ids[m] = k
            self._rdesc.append(frozenset(i for i, c in enumerate(m) if any(x < 0 for x in c)))
        return k

    def matrix(self, w: int) -> Mat:
        return self._mats[w]

    def act(self, w: int, v: Sequence[int]) -> Tuple[int, ...]:
        m = self._mats[w]
        out = [0] * self.n
        for i, c in enumerate(v):
            if c:
                col = m[i]
                for r in range(self.n):
                    out[r] += c * col[r]
        return tuple(out)

    def rdesc(self, w: int) -> FrozenSet[int]:
        return self._rdesc[w]

    def ldesc(self, w: int) -> FrozenSet[int]:
        return self._rdesc[self.inv(w)]

    # -- products -------------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        r = self._mul.get(key)
        if r is None:
            mb = self._mats[b]
            r = self._intern(tuple(self.act(a, col) for col in mb))
            self._mul[key] = r
        return r

    def right_gen(self, w: int, j: int) -> int:
        key = (w, j)
        r = self._rgen.get(key)
        if r is None:
            r = self.mul(w, self.gens[j])
            self._rgen[key] = r
        return r

    def left_gen(self, j: int, w: int) -> int:
        key = (j, w)
        r = self._lgen.get(key)
        if r is None:
            r = self.mul(self.gens[j], w)
            self._lgen[key] = r
        return r

    def word(self, w: int) -> Tuple[int, ...]:
        """Reduced word, lexicographically first by peeling left descents."""
        r = self._word.get(w)
        if r is None:
            out = []
            x = w
            while x != self.e:
                j = min(self.ldesc(x))
                out.append(j)
                x = self.left_gen(j, x)
            r = tuple(out)
            self._word[w] = r
        return r

    def length(self, w: int) -> int:
        return len(self.word(w))

    def inv(self, w: int) -> int:
        r = self._inv.get(w)
        if r is None:
            # w^{-1}: peel a right descent at a time
            x, out = w, self.e
            while x != self.e:
                j = min(self._rdesc[x])
                x = self.right_gen(x, j)
                out = self.right_gen(out, j)
            r = out
            self._inv[w] = r
            self._inv[r] = w
        return r

    def tau(self, w: int) -> int:
        return self.mul(self.mul(self.w0, w), self.w0)

    def left_weight(self, u: int, v: int) -> Tuple[int, int]:
        """Slide generators from the front of v to the back of u until (u, v) is left-weighted."""
        key = (u, v)
        r = self._lw.get(key)
        if r is None:
            a, b = u, v
            while True:
                move = self.ldesc(b) - self.rdesc(a)
                if not move:
                    break
                j = min(move)
                a = self.right_gen(a, j)
                b = self.left_gen(j, b)
            r = (a, b)
            self._lw[key] = r
        return r

    def size_seen(self) -> int:
        return len(self._mats)


@dataclass(frozen=True)
class BraidElement:
    """Δ^infimum · factors (Weyl element ids of the group ``typ``)."""

    typ: str
    infimum: int
    factors: Tuple[int, ...]

    def __repr__(self) -> str:
        return f"BraidElement({self.typ}, {group(self.typ).format(self)!r})"


_GROUPS: Dict[str, "ArtinGroup"] = {}


def group(d: DynkinDiagram | str) -> "ArtinGroup":
    if isinstance(d, str):
        name = d
        if name not in _GROUPS:
            m = re.match(r"([ADE])(\d+)$", name)
            if not m:
                raise BraidError(f"unknown type {name!r}")
            _GROUPS[name] = ArtinGroup(build_diagram(m.group(1), int(m.group(2))))
        return _GROUPS[name]
    if d.name not in _GROUPS:
        _GROUPS[d.name] = ArtinGroup(d)
    return _GROUPS[d.name]


_TOKEN = re.compile(r"^b(\d+)(?:\^(-?\d+))?$")


class ArtinGroup:
    def __init__(self, d: DynkinDiagram):
        self.diagram = d
        self.name = d.name
        self.W = WeylGroup(d)
        self.n = d.rank
        self._delta_len = self.W.length(self.W.w0)

    # -- constructors -------------------------------------------------------
    def identity(self) -> BraidElement:
        return BraidElement(self.name, 0, ())

    def delta(self, k: int = 1) -> BraidElement:
        return BraidElement(self.name, k, ())

    def generator(self, i: int, sign: int = 1) -> BraidElement:
        """b_i (1-based vertex), or its inverse when sign = -1."""
        if not 1 <= i <= self.n:
            raise BraidError(f"vertex {i} not in 1..{self.n}")
        if self.n == 1 and sign > 0:
            # s_1 is w0 itself in rank one
            return BraidElement(self.name, 1, ())
        if sign > 0:
            return BraidElement(self.name, 0, (self.W.gens[i - 1],))
        return self.inverse(self.generator(i))

    def from_word(self, word: str | Iterable[Tuple[int, int]]) -> BraidElement:
        """Normal form of a word: "b1 b2 b1^-1" or [(1, 1), (2, 1), (1, -1)]."""
        out = self.identity()
        for i, e in (parse_word(word) if isinstance(word, str) else word):
            g = self.generator(i, 1 if e > 0 else -1)
            for _ in range(abs(e)):
                out = self.multiply(out, g)
        return out

    # -- normal form machinery ---------------------------------------------
    def _tau_k(self, facs: Sequence[int], k: int) -> List[int]:
        if k % 2 == 0:
            return list(facs)
        return [self.W.tau(a) for a in facs]

    def _append(self, k: int, facs: List[int], x: int) -> Tuple[int, List[int]]:
        W = self.W
        if x == W.e:
            return k, facs
        if x == W.w0:
            return k + 1, self._tau_k(facs, 1)
        facs = facs + [x]
        for i in range(len(facs) - 2, -1, -1):
            a, b = W.left_weight(facs[i], facs[i + 1])
            if (a, b) == (facs[i], facs[i + 1]):
                break
            facs[i], facs[i + 1] = a, b
        while facs and facs[0] == W.w0:
            facs.pop(0)
            k += 1
        while facs and facs[-1] == W.e:
            facs.pop()
        return k, facs

    def multiply(self, a: BraidElement, b: BraidElement) -> BraidElement:
        k = a.infimum + b.infimum
        facs = self._tau_k(a.factors, b.infimum)
        for x in b.factors:
            k, facs = self._append(k, facs, x)
        return BraidElement(self.name, k, tuple(facs))

    def product(self, *elems: BraidElement) -> BraidElement:
        out = self.identity()
        for e in elems:
            out = self.multiply(out, e)
        return out

    def inverse(self, a: BraidElement) -> BraidElement:
        # (Δ^k a_1..a_r)^{-1} = a_r^{-1} .. a_1^{-1} Δ^{-k}, with a^{-1} = Δ^{-1} (w0 a^{-1})
        W = self.W
        out = self.identity()
        for x in reversed(a.factors):
            comp = W.mul(W.w0, W.inv(x))
            out = self.multiply(out, BraidElement(self.name, -1, (comp,) if comp != W.e else ()))
        return self.multiply(out, BraidElement(self.name, -a.infimum, ()))

    def conjugate(self, g: BraidElement, x: BraidElement) -> BraidElement:
        return self.multiply(self.multiply(g, x), self.inverse(g))

    def is_identity(self, a: BraidElement) -> bool:
        return a.infimum == 0 and not a.factors

    def abelianization(self, a: BraidElement) -> int:
        """Exponent sum (every b_i maps to 1)."""
        return a.infimum * self._delta_len + sum(self.W.length(x) for x in a.factors)

    def is_left_weighted(self, a: BraidElement) -> bool:
        W = self.W
        if any(x in (W.e, W.w0) for x in a.factors):
            return False
        return all(W.ldesc(v) <= W.rdesc(u) for u, v in zip(a.factors, a.factors[1:]))

    def positive_word(self, a: BraidElement) -> List[Tuple[int, int]]:
        """A word for a: Δ^k as signed powers, then reduced words of the factors (1-based)."""
        out: List[Tuple[int, int]] = []
        dw = self.W.word(self.W.w0)
        if a.infimum >= 0:
            out += [(j + 1, 1) for _ in range(a.infimum) for j in dw]
        else:
            out += [(j + 1, -1) for _ in range(-a.infimum) for j in reversed(dw)]
        for x in a.factors:
            out += [(j + 1, 1) for j in self.W.word(x)]
        return out

    # -- text ---------------------------------------------------------------
    def format(self, a: BraidElement) -> str:
        facs = ".".join("".join(f"s{j + 1}" for j in self.W.word(x)) for x in a.factors)
        return f"D^{a.infimum} | {facs or 'e'}"

    def word_string(self, a: BraidElement) -> str:
        return format_word(self.positive_word(a))


def parse_word(text: str) -> List[Tuple[int, int]]:
    out = []
    for tok in text.replace(",", " ").replace("*", " ").split():
        if tok == "e":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise BraidError(f"bad braid token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e:
            out.append((int(m.group(1)), e))
    return out


def format_word(word: Sequence[Tuple[int, int]]) -> str:
    return " ".join(f"b{i}" if e == 1 else f"b{i}^{e}" for i, e in word) or "e"


def invert_word(word: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    return [(i, -e) for i, e in reversed(word)]


# module level conveniences mirroring the operation names
def generator(d: DynkinDiagram | str, i: int) -> BraidElement:
    return group(d).generator(i)


def multiply(a: BraidElement, b: BraidElement) -> BraidElement:
    if a.typ != b.typ:
        raise BraidError("braids from different groups")
    return group(a.typ).multiply(a, b)


def conjugate(g: BraidElement, x: BraidElement) -> BraidElement:
    return group(g.typ).conjugate(g, x)


def inverse(a: BraidElement) -> BraidElement:
    return group(a.typ).inverse(a)


def normal_form(d: DynkinDiagram | str, word: str) -> str:
    G = group(d)
    return G.format(G.from_word(word))
