"""The covering poset P = Br(Q) x (fundamental hearts).

A node (b, E) stands for the t-structure b.E.  Its left tilt at a simple s
is (b, L_s E) when L_s E stays in the fundamental domain and
(b . b_s, phi_s^{-1} L_s E) otherwise.

P is infinite, so all order computations run against a height

    h(b, E) = C * ab(b) + lvl(E)

where ab is the exponent sum, lvl(E) the longest run of in-domain left tilts
reaching E, and C is one more than the largest drop of lvl along an
out-of-domain tilt.  h goes up by at least one along every left tilt, so
a <= b only involves nodes of height between h(a) and h(b), and searches
ordered by h visit each node after all of its predecessors.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from .braid import BraidElement
from .budget import BudgetExceeded, Counter
from .dynkin import Quiver, parse_quiver
from .hearts import FundamentalDomain, FundHeart, fundamental_domain
from .repq import IndecObject
from .topo import FinitePoset

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


class Node(NamedTuple):
    braid: BraidElement
    heart: int  # index into the fundamental domain


class TiltError(RuntimeError):
    pass


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


@dataclass
class Region:
    """A finite convex set of nodes with its order, from reachability inside it."""

    nodes: List[Node]
    index: Dict[Node, int]
    up: List[int]  # bitset of strict successors (transitively closed)
    edges: List[Tuple[int, int, int]]  # (source, target, simple index)

    def __contains__(self, x: Node) -> bool:
        return x in self.index

    def __len__(self) -> int:
        return len(self.nodes)

    def leq(self, a: Node, b: Node) -> bool:
        i, j = self.index[a], self.index[b]
        return i == j or bool(self.up[i] >> j & 1)

    def poset(self) -> FinitePoset:
        rel = [(self.nodes[i], self.nodes[j]) for i, m in enumerate(self.up) for j in _bits(m)]
        return FinitePoset(self.nodes, rel)


def _bits(m: int) -> Iterable[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


class CoveringPoset:
    def __init__(self, q: Quiver, N: int, budget: Optional[int] = None):
        self.q, self.N, self.n = q, N, q.rank
        self.dom: FundamentalDomain = fundamental_domain(q, N)
        self.calc = self.dom.calc
        self.G = self.calc.G
        self.C = self.calc.C
        self.budget = budget
        self._levels()
        self._rho_cache: Dict[int, Matrix] = {}
        self._int_cache: Dict[Node, Region] = {}
        self._lj_cache: Dict[Tuple[Node, FrozenSet[int]], Node] = {}
        n = self.n
        self._gen_rho = [
            tuple(tuple(r) for r in self.C.twist_matrix(tuple(int(i == j) for i in range(n)), N))
            for j in range(n)
        ]

    # -- heights ---------------------------------------------------------------
    def _levels(self) -> None:
        m = len(self.dom)
        preds: List[List[int]] = [[] for _ in range(m)]
        for a in range(m):
            for b, fac in self.dom.left[a]:
                if fac is None:
                    preds[b].append(a)
        lvl: List[Optional[int]] = [None] * m

        def level(x: int) -> int:
            stack = [x]
            while stack:
                y = stack[-1]
                todo = [p for p in preds[y] if lvl[p] is None]
                if todo:
                    stack.extend(todo)
                    continue
                stack.pop()
                if lvl[y] is None:
                    lvl[y] = 1 + max((lvl[p] for p in preds[y]), default=-1)
            return lvl[x]

        self.lvl = [level(x) for x in range(m)]
        drop = 0
        for a in range(m):
            for b, fac in self.dom.left[a]:
                if fac is not None:
                    drop = max(drop, self.lvl[a] - self.lvl[b])
        self.height_step = drop + 1

    def height(self, x: Node) -> int:
        return self.height_step * self.G.abelianization(x.braid) + self.lvl[x.heart]

    # -- basic structure ----------------------------------------------------
    def standard(self) -> Node:
        return Node(self.G.identity(), self.dom.standard)

    def heart(self, x: Node) -> FundHeart:
        return self.dom.hearts[x.heart]

    def left(self, x: Node, i: int) -> Node:
        b, fac = self.dom.left[x.heart][i]
        return Node(x.braid if fac is None else self.G.multiply(x.braid, fac), b)

    def right(self, x: Node, i: int) -> Node:
        b, fac = self.dom.right[x.heart][i]
        return Node(x.braid if fac is None else self.G.multiply(x.braid, fac), b)

    def successors(self, x: Node) -> List[Tuple[int, Node]]:
        return [(i, self.left(x, i)) for i in range(self.n)]

    def predecessors(self, x: Node) -> List[Tuple[int, Node]]:
        return [(i, self.right(x, i)) for i in range(self.n)]

    def tilt_node(self, x: Node, s: IndecObject | int, direction: str = "left") -> Node:
        i = s if isinstance(s, int) else self.heart(x).index(s)
        return self.left(x, i) if direction == "left" else self.right(x, i)

    def key(self, x: Node) -> Tuple:
        return (x.braid.infimum, x.braid.factors, x.heart)

    def label(self, x: Node) -> str:
        simples = ",".join(s.label() for s in self.heart(x).simples)
        return f"{self.G.format(x.braid)} :: {simples}"

    def edge_label(self, x: Node, i: int) -> str:
        return "tilt:" + self.heart(x).simples[i].label()

    # -- K-theory ------------------------------------------------------------
    def rho(self, b: BraidElement) -> Matrix:
        """Action of b on K(Gamma) = Z^n, b_i acting by the twist at S_i."""
        n = self.n
        W = self.G.W
        out: Matrix = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        delta = self._rho_weyl(W.w0)
        if b.infimum:
            d = delta if b.infimum > 0 else self._rho_inverse(delta)
            for _ in range(abs(b.infimum)):
                out = _matmul(out, d)
        for f in b.factors:
            out = _matmul(out, self._rho_weyl(f))
        return out

    def _rho_weyl(self, w: int) -> Matrix:
        m = self._rho_cache.get(w)
        if m is None:
            n = self.n
            m = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            for j in self.G.W.word(w):
                m = _matmul(m, self._gen_rho[j])
            self._rho_cache[w] = m
        return m

    def _rho_inverse(self, m: Matrix) -> Matrix:
        from ._linalg import int_inverse

        return tuple(tuple(r) for r in int_inverse(m))

    def classes(self, x: Node) -> List[Vector]:
        r = self.rho(x.braid)
        return [_matvec(r, s.k_class()) for s in self.heart(x).simples]

    def relative_classes(self, x: Node, base: Node) -> List[Vector]:
        """Classes of x's simples in the basis given by base's simples."""
        from ._linalg import int_inverse

        b = self.classes(base)
        inv = int_inverse([[b[j][i] for j in range(self.n)] for i in range(self.n)])
        return [_matvec(inv, v) for v in self.classes(x)]

    # -- order ---------------------------------------------------------------
    def _counter(self, what: str) -> Counter:
        return Counter(self.budget, what)

    def leq(self, a: Node, b: Node) -> bool:
        if a == b:
            return True
        hb = self.height(b)
        if self.height(a) >= hb:
            return False
        counter = self._counter("order test")
        seen = {a}
        heap = [(self.height(a), 0, a)]
        tie = 1
        while heap:
            h, _, x = heapq.heappop(heap)
            counter.tick()
            for _, y in self.successors(x):
                if y == b:
                    return True
                hy = self.height(y)
                if y not in seen and hy < hb:
                    seen.add(y)
                    heapq.heappush(heap, (hy, tie, y))
                    tie += 1
        return False

    def up_set(self, a: Node, max_height: int) -> Set[Node]:
        return self._sweep(a, max_height, up=True)

    def down_set(self, b: Node, min_height: int) -> Set[Node]:
        return self._sweep(b, min_height, up=False)

    def _sweep(self, start: Node, bound: int, up: bool) -> Set[Node]:
        counter = self._counter("sweep")
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            counter.tick()
            nxt = self.successors(x) if up else self.predecessors(x)
            for _, y in nxt:
                hy = self.height(y)
                if y not in seen and (hy <= bound if up else hy >= bound):
                    seen.add(y)
                    stack.append(y)
        return seen

    def interval(self, a: Node, b: Node) -> Region:
        if not self.leq(a, b):
            return self.region([])
        ups = self.up_set(a, self.height(b))
        downs = self.down_set(b, self.height(a))
        return self.region(ups & downs)

    def _bound(self, a: Node, b: Node, up: bool) -> Node:
        counter = self._counter("join" if up else "meet")
        sign = 1 if up else -1
        reach: Dict[Node, int] = {a: 1}
        reach[b] = reach.get(b, 0) | 2
        heap = [(sign * self.height(a), 0, a)]
        if b != a:
            heap.append((sign * self.height(b), 1, b))
        heapq.heapify(heap)
        tie = 2
        done: Set[Node] = set()
        while heap:
            _, _, x = heapq.heappop(heap)
            if x in done:
                continue
            done.add(x)
            counter.tick()
            if reach[x] == 3:
                return x
            for _, y in self.successors(x) if up else self.predecessors(x):
                old = reach.get(y, 0)
                reach[y] = old | reach[x]
                if y not in done:
                    heapq.heappush(heap, (sign * self.height(y), tie, y))
                    tie += 1
        raise TiltError("no common bound found")

    def join(self, a: Node, b: Node) -> Node:
        return self._bound(a, b, up=True)

    def meet(self, a: Node, b: Node) -> Node:
        return self._bound(a, b, up=False)

    def sup(self, nodes: Iterable[Node]) -> Node:
        it = iter(nodes)
        out = next(it)
        for x in it:
            out = self.join(out, x)
        return out

    # -- finite regions ------------------------------------------------------
    def region(self, nodes: Iterable[Node]) -> Region:
        ns = sorted(set(nodes), key=lambda x: (self.height(x), self.key(x)))
        index = {x: i for i, x in enumerate(ns)}
        edges = []
        succ: List[List[int]] = [[] for _ in ns]
        for i, x in enumerate(ns):
            for k, y in self.successors(x):
                j = index.get(y)
                if j is not None:
                    edges.append((i, j, k))
                    succ[i].append(j)
        up = [0] * len(ns)
        for i in range(len(ns) - 1, -1, -1):  # heights increase along edges
            m = 0
            for j in succ[i]:
                m |= (1 << j) | up[j]
            up[i] = m
        return Region(ns, index, up, edges)

    def int_region(self, x: Node) -> Region:
        """Int(x) = [x, x[-1]]: left tilts at simples lying in x's heart."""
        r = self._int_cache.get(x)
        if r is None:
            counter = self._counter("interval [x, x[-1]]")
            seen = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                counter.tick()
                rel = self.relative_classes(y, x)
                for i, v in enumerate(rel):
                    if all(c >= 0 for c in v):
                        z = self.left(y, i)
                        if z not in seen:
                            seen.add(z)
                            stack.append(z)
            r = self.region(seen)
            self._int_cache[x] = r
        return r

    def shift_down(self, x: Node) -> Node:
        """x[-1], the top of Int(x)."""
        r = self.int_region(x)
        tops = [y for y in r.nodes if all(all(c <= 0 for c in v) for v in self.relative_classes(y, x))]
        if len(tops) != 1:
            raise TiltError(f"Int(x) has {len(tops)} candidate tops")
        return tops[0]

    def shift_up(self, x: Node) -> Node:
        """x[1], found by right tilts at simples lying in x's heart."""
        counter = self._counter("interval [x[1], x]")
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            counter.tick()
            for i, v in enumerate(self.relative_classes(y, x)):
                if all(c >= 0 for c in v):
                    z = self.right(y, i)
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        bottoms = [y for y in seen if all(all(c <= 0 for c in v) for v in self.relative_classes(y, x))]
        if len(bottoms) != 1:
            raise TiltError(f"[x[1], x] has {len(bottoms)} candidate bottoms")
        return bottoms[0]

    def tilt_set(self, x: Node, J: Iterable[int]) -> Node:
        """L_J x, the join of the simple tilts L_i x for i in J."""
        key = (x, frozenset(J))
        r = self._lj_cache.get(key)
        if r is None:
            r = x
            for i in sorted(key[1]):
                r = self.join(r, self.left(x, i))
            self._lj_cache[key] = r
        return r

    def tilt_set_in(self, reg: Region, x: Node, J: Iterable[int]) -> Optional[Node]:
        """L_J x if it lies in the convex region ``reg``, else None."""
        J = sorted(set(J))
        if not J:
            return x
        targets = [self.left(x, i) for i in J]
        if any(t not in reg for t in targets):
            return None
        ups = None
        for t in targets:
            i = reg.index[t]
            m = reg.up[i] | (1 << i)
            ups = m if ups is None else ups & m
        if not ups:
            return None
        best = min(_bits(ups), key=lambda j: self.height(reg.nodes[j]))
        return reg.nodes[best]

    # -- exploration ---------------------------------------------------------
    def explore(self, start: Node, depth: int, both: bool = False) -> "PosetWindow":
        """Nodes within ``depth`` tilts of start (left tilts only unless ``both``)."""
        counter = self._counter("explore")
        dist = {start: 0}
        frontier = [start]
        order = [start]
        for d in range(depth):
            nxt = []
            for x in frontier:
                counter.tick()
                moves = self.successors(x) + (self.predecessors(x) if both else [])
                for _, y in moves:
                    if y not in dist:
                        dist[y] = d + 1
                        nxt.append(y)
                        order.append(y)
            frontier = nxt
        nodes = sorted(dist, key=lambda x: (self.height(x), self.key(x)))
        idx = {x: i for i, x in enumerate(nodes)}
        edges = []
        for x in nodes:
            for i, y in self.successors(x):
                if y in idx:
                    edges.append((idx[x], idx[y], self.edge_label(x, i)))
        return PosetWindow(self, nodes, sorted(edges), start, depth)

    # -- local structure -----------------------------------------------------
    def local_diagram(self, x: Node, i: int, j: int) -> "LocalDiagram":
        if i == j:
            raise TiltError("need two distinct simples")
        h = self.heart(x)
        si, sj = h.simples[i], h.simples[j]
        a_ij = self.calc.C.hom_cy(si, sj, self.N, 1)
        a_ji = self.calc.C.hom_cy(sj, si, self.N, 1)
        top = self.join(self.left(x, i), self.left(x, j))
        size = len(self.interval(x, top))
        if a_ij == 0 and a_ji == 0:
            return LocalDiagram("square", x, top, (i, j), None, size)
        if self.N == 2:
            # Hom^1 is symmetric at N = 2 and the interval is a hexagon
            return LocalDiagram("hexagon", x, top, (i, j), None, size)
        a, b = (i, j) if a_ij else (j, i)
        first = self.left(x, a)
        # e = phi_{s_a}(s_b) has class [s_a] + [s_b]
        cls = self.classes(x)
        want = tuple(u + v for u, v in zip(cls[a], cls[b]))
        k = next((k for k, c in enumerate(self.classes(first)) if c == want), None)
        if k is None:
            raise TiltError("extension simple not found after the first tilt")
        mid = self.left(first, k)
        return LocalDiagram("pentagon", x, top, (a, b), mid, size)


class LocalDiagram(NamedTuple):
    kind: str
    bottom: Node
    top: Node
    order: Tuple[int, int]  # long side starts with the first index
    intermediate: Optional[Node]
    size: int


@dataclass
class PosetWindow:
    P: CoveringPoset
    nodes: List[Node]
    edges: List[Tuple[int, int, str]]
    start: Node
    depth: int

    def is_chain(self) -> bool:
        return len(self.edges) == len(self.nodes) - 1 and all(
            a == k and b == k + 1 for k, (a, b, _) in enumerate(self.edges)
        )

    def to_json(self) -> Dict:
        P = self.P
        return {
            "start": P.label(self.start),
            "depth": self.depth,
            "nodes": [
                {
                    "id": i,
                    "braid": P.G.format(x.braid),
                    "height": P.height(x),
                    **P.calc.heart_json(P.heart(x)),
                }
                for i, x in enumerate(self.nodes)
            ],
            "edges": [{"source": a, "target": b, "label": l} for a, b, l in self.edges],
        }

    def to_dot(self) -> str:
        P = self.P
        lines = ["digraph window {", "  rankdir=BT;"]
        for i, x in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{P.label(x)}"];')
        for a, b, l in self.edges:
            lines.append(f'  n{a} -> n{b} [label="{l}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


_POSETS: Dict[Tuple, CoveringPoset] = {}


def covering_poset(q: Quiver, N: int) -> CoveringPoset:
    q = parse_quiver(q)
    key = (q.name, q.arrows, N)
    if key not in _POSETS:
        _POSETS[key] = CoveringPoset(q, N)
    return _POSETS[key]


def cone_poset(P: CoveringPoset, F: Iterable[Node]) -> FinitePoset:
    """C(F): strata (E, J) with F0 <= E <= L_J E <= sup F for some F0 in F.

    Elements are (node, frozenset of simple indices); (E, J) < (D, I) when
    S_{E,J} lies in the closure of S_{D,I}, i.e. E <= D <= L_I D <= L_J E.
    """
    F = list(dict.fromkeys(F))
    if not F:
        raise TiltError("empty cone")
    top = P.sup(F)
    low = min(P.height(f) for f in F)
    downs = P.down_set(top, low)
    ups: Set[Node] = set()
    for f in F:
        if not P.leq(f, top):
            raise TiltError("sup is not above every element of F")
        ups |= P.up_set(f, P.height(top))
    reg = P.region(ups & downs)
    return strata_in_region(P, reg, reg.nodes)


def strata_in_region(P: CoveringPoset, reg: Region, bases: Iterable[Node]) -> FinitePoset:
    """All strata (E, J) with E in ``bases`` and L_J E inside the convex region, under the closure order."""
    elems: List[Tuple[Node, FrozenSet[int]]] = []
    tops: Dict[Tuple[Node, FrozenSet[int]], Node] = {}
    for e in bases:
        for k in range(P.n + 1):
            for J in combinations(range(P.n), k):
                t = P.tilt_set_in(reg, e, J)
                if t is not None:
                    key = (e, frozenset(J))
                    elems.append(key)
                    tops[key] = t
    rel = []
    for a in elems:
        for b in elems:
            if a != b and _closure_leq(reg, a, b, tops):
                rel.append((a, b))
    return FinitePoset(elems, rel)


def _closure_leq(reg: Region, a, b, tops) -> bool:
    (e, _), (d, _) = a, b
    return reg.leq(e, d) and reg.leq(d, tops[b]) and reg.leq(tops[b], tops[a])
