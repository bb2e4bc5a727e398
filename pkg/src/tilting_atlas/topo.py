"""Finite posets, order complexes and exact integral simplicial homology."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from ._linalg import smith_diagonal
from .budget import BudgetExceeded


class FinitePoset:
    """Elements plus the strict order, stored as the full relation (transitively closed)."""

    def __init__(self, elements: Iterable[Hashable], less: Iterable[Tuple[Hashable, Hashable]]):
        self.elements: List[Hashable] = list(dict.fromkeys(elements))
        idx = {e: i for i, e in enumerate(self.elements)}
        self._index = idx
        up: List[Set[int]] = [set() for _ in self.elements]
        for a, b in less:
            if a != b:
                up[idx[a]].add(idx[b])
        # transitive closure via DFS from each element
        closed: List[FrozenSet[int]] = []
        for i in range(len(up)):
            seen: Set[int] = set()
            stack = list(up[i])
            while stack:
                j = stack.pop()
                if j not in seen:
                    seen.add(j)
                    stack.extend(up[j])
            if i in seen:
                raise ValueError("relation has a cycle")
            closed.append(frozenset(seen))
        self._above = closed

    @classmethod
    def from_leq(cls, elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]) -> "FinitePoset":
        els = list(elements)
        return cls(els, [(a, b) for a in els for b in els if a != b and leq(a, b)])

    def __len__(self) -> int:
        return len(self.elements)

    def less(self, a: Hashable, b: Hashable) -> bool:
        return self._index[b] in self._above[self._index[a]]

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return a == b or self.less(a, b)

    def covers(self) -> List[Tuple[Hashable, Hashable]]:
        out = []
        for i, ups in enumerate(self._above):
            for j in ups:
                if not any(j in self._above[k] for k in ups if k != j):
                    out.append((self.elements[i], self.elements[j]))
        return out

    def minimal(self) -> List[Hashable]:
        below = set().union(*self._above) if self._above else set()
        return [e for i, e in enumerate(self.elements) if i not in below]

    def maximal(self) -> List[Hashable]:
        return [e for i, e in enumerate(self.elements) if not self._above[i]]

    def maximal_chains(self) -> List[List[Hashable]]:
        cov: Dict[int, List[int]] = {i: [] for i in range(len(self.elements))}
        for a, b in self.covers():
            cov[self._index[a]].append(self._index[b])
        out: List[List[Hashable]] = []

        def walk(path: List[int]):
            nxt = cov[path[-1]]
            if not nxt:
                out.append([self.elements[i] for i in path])
                return
            for j in nxt:
                walk(path + [j])

        for m in self.minimal():
            walk([self._index[m]])
        return out

    def opposite(self) -> "FinitePoset":
        return FinitePoset(self.elements, [(b, a) for a, b in self.relations()])

    def relations(self) -> List[Tuple[Hashable, Hashable]]:
        return [(self.elements[i], self.elements[j]) for i, ups in enumerate(self._above) for j in sorted(ups)]

    def is_isomorphic_to_boolean(self, k: int) -> bool:
        """Size 2^k, unique bottom and top, every maximal chain of length k, and
        the down-set sizes of B_k.  Enough to pin B_k for the small k used here."""
        if len(self) != 2 ** k or len(self.minimal()) != 1 or len(self.maximal()) != 1:
            return False
        if any(len(c) != k + 1 for c in self.maximal_chains()):
            return False
        downs = sorted(sum(1 for f in self.elements if self.less(f, e)) for e in self.elements)
        return downs == sorted(_boolean_down_sizes(k))


def _boolean_down_sizes(k: int) -> List[int]:
    # strict down-set sizes in B_k: an element of rank r has 2^r - 1 elements below it
    from math import comb

    return [2 ** r - 1 for r in range(k + 1) for _ in range(comb(k, r))]


@dataclass
class SimplicialComplex:
    """Downward closed set of simplices (sorted vertex tuples)."""

    simplices: Set[Tuple[int, ...]] = field(default_factory=set)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        out: Set[Tuple[int, ...]] = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            if f in out:
                continue
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return cls(out)

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def f_vector(self) -> List[int]:
        f = [0] * (self.dimension + 1)
        for s in self.simplices:
            f[len(s) - 1] += 1
        return f

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * v for i, v in enumerate(self.f_vector()))

    def facets(self) -> List[Tuple[int, ...]]:
        by_size = sorted(self.simplices, key=len, reverse=True)
        out: List[Tuple[int, ...]] = []
        for s in by_size:
            ss = set(s)
            if not any(ss < set(f) for f in out):
                out.append(s)
        return sorted(out)

    def to_json(self) -> str:
        return json.dumps({"facets": [list(f) for f in self.facets()]})

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        return cls.from_facets(json.loads(text)["facets"])

    def disjoint_union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        shift = 1 + max((v for s in self.simplices for v in s), default=-1)
        moved = {tuple(v + shift for v in s) for s in other.simplices}
        return SimplicialComplex(set(self.simplices) | moved)


def order_complex(p: FinitePoset) -> SimplicialComplex:
    """Chains of p as simplices; vertices are indices into p.elements."""
    n = len(p)
    up = [sorted(j for j in range(n) if p.less(p.elements[i], p.elements[j])) for i in range(n)]
    out: Set[Tuple[int, ...]] = set()

    def extend(chain: Tuple[int, ...]):
        out.add(tuple(sorted(chain)))
        for j in up[chain[-1]]:
            extend(chain + (j,))

    for i in range(n):
        extend((i,))
    return SimplicialComplex(out)


@dataclass(frozen=True)
class HomologyResult:
    betti: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...]

    def reduced_betti(self) -> Tuple[int, ...]:
        if not self.betti:
            return ()
        return (max(self.betti[0] - 1, 0),) + self.betti[1:]

    def is_acyclic(self) -> bool:
        """Reduced homology vanishes in every degree (torsion included)."""
        return bool(self.betti) and self.betti[0] == 1 and not any(self.betti[1:]) and not any(self.torsion)

    def to_json(self) -> Dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def homology(c: SimplicialComplex) -> HomologyResult:
    if not c.simplices:
        return HomologyResult((), ())
    dim = c.dimension
    by_dim: List[List[Tuple[int, ...]]] = [[] for _ in range(dim + 1)]
    for s in c.simplices:
        by_dim[len(s) - 1].append(s)
    index = []
    for k in range(dim + 1):
        by_dim[k].sort()
        index.append({s: i for i, s in enumerate(by_dim[k])})
    # invariant factors of the boundary maps d_k : C_k -> C_{k-1}
    diags: List[List[int]] = [[]]
    for k in range(1, dim + 1):
        entries = {}
        for j, s in enumerate(by_dim[k]):
            for t in range(len(s)):
                face = s[:t] + s[t + 1 :]
                entries[(index[k - 1][face], j)] = (-1) ** t
        diags.append(smith_diagonal(entries, len(by_dim[k - 1]), len(by_dim[k])))
    diags.append([])
    betti, torsion = [], []
    for k in range(dim + 1):
        rank_out = len(diags[k])  # rank of d_k
        rank_in = len(diags[k + 1])  # rank of d_{k+1}
        betti.append(len(by_dim[k]) - rank_out - rank_in)
        torsion.append(tuple(d for d in diags[k + 1] if d > 1))
    return HomologyResult(tuple(betti), tuple(torsion))


def is_contractible_certificate(c: SimplicialComplex, budget: int = 20000) -> str:
    """'collapsible', 'homology-trivial' or 'unknown'.

    Tries to collapse the complex to a point by elementary collapses (a free
    face together with its unique coface), backtracking over the choice of
    free pair while the node budget lasts.  If that fails the reduced
    homology is checked; that only certifies acyclicity, which is why it is
    reported under its own name.
    """
    try:
        if _collapse_to_point(c, budget):
            return "collapsible"
    except BudgetExceeded:
        pass
    if homology(c).is_acyclic():
        return "homology-trivial"
    return "unknown"


def _collapse_to_point(c: SimplicialComplex, budget: int) -> bool:
    counter = [0]
    start = frozenset(c.simplices)
    seen_dead: Set[FrozenSet[Tuple[int, ...]]] = set()

    def free_pairs(cx: FrozenSet[Tuple[int, ...]]) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        cof: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
        for s in cx:
            if len(s) > 1:
                for t in range(len(s)):
                    cof.setdefault(s[:t] + s[t + 1 :], []).append(s)
        pairs = []
        for f, cs in cof.items():
            if len(cs) == 1:
                pairs.append((f, cs[0]))
        pairs.sort(key=lambda p: (-len(p[1]), p))
        return pairs

    def rec(cx: FrozenSet[Tuple[int, ...]]) -> bool:
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded("collapse search")
        if len(cx) == 1:
            return True
        if cx in seen_dead:
            return False
        pairs = free_pairs(cx)
        for f, s in pairs:
            if rec(cx - {f, s}):
                return True
        seen_dead.add(cx)
        return False

    return rec(start)


def reduced_homology_vanishes(c: SimplicialComplex) -> bool:
    return homology(c).is_acyclic()
