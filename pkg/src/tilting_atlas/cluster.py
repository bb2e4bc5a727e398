"""Higher cluster categories D(Q)/Sigma_m with m = N-1, cluster tilting sets and mutation.

Hearts of the fundamental domain map to cluster tilting sets through their
silting duals: the object P_i with Hom^k(P_i, s_j) = 1 exactly when i = j and
k = 0.  Two routes to the cluster sets are kept apart on purpose: the image of
the fundamental domain, and a brute-force search for every maximal
Ext-configuration.  They are compared, never merged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from ._linalg import smith_diagonal
from .braid import BraidElement
from .dynkin import Quiver, parse_quiver
from .hearts import FundHeart
from .repq import DerivedCategory, IndecObject, category
from .tiltp import CoveringPoset, Node, covering_poset

ClusterSet = FrozenSet[IndecObject]


class ClusterError(RuntimeError):
    pass


class ClusterCategory:
    def __init__(self, q: Quiver, N: int):
        if N < 3:
            raise ClusterError("the cluster category needs N >= 3 (m = N - 1 >= 2)")
        self.q, self.N, self.n = q, N, q.rank
        self.m = N - 1
        self.C: DerivedCategory = category(q)
        self._canon: Dict[IndecObject, IndecObject] = {}
        self._hom: Dict[Tuple[IndecObject, IndecObject, int], int] = {}

    # -- orbits ----------------------------------------------------------------
    def sigma(self, x: IndecObject, power: int = 1) -> IndecObject:
        return self.C.cluster_shift(x, self.m, power)

    def canonical(self, x: IndecObject) -> IndecObject:
        """Orbit element with the smallest nonnegative shift (shifts grow along the orbit)."""
        r = self._canon.get(x)
        if r is None:
            y = x
            while y.shift < 0:
                y = self.sigma(y)
            while True:
                z = self.sigma(y, -1)
                if z.shift < 0:
                    break
                y = z
            r = y
            self._canon[x] = r
        return r

    def objects(self) -> List[IndecObject]:
        """One representative per orbit."""
        reps = {self.canonical(x) for x in self.C.all_indecomposables(range(0, self.m + 1))}
        return sorted(reps, key=lambda o: (o.shift, o.root))

    def orbit_window(self, y: IndecObject, lo: int, hi: int) -> List[IndecObject]:
        """Members of y's orbit with shift in [lo, hi]."""
        out = []
        z = self.canonical(y)
        while z.shift > lo:
            z = self.sigma(z, -1)
        while z.shift <= hi:
            if z.shift >= lo:
                out.append(z)
            z = self.sigma(z)
        return out

    def cluster_hom(self, x: IndecObject, y: IndecObject, k: int) -> int:
        key = (x, self.canonical(y), k)
        v = self._hom.get(key)
        if v is None:
            # Hom^k(M[a], M'[b]) can only be nonzero when b is a - k or a - k + 1
            v = sum(self.C.hom(x, z, k) for z in self.orbit_window(y, x.shift - k, x.shift - k + 1))
            self._hom[key] = v
        return v

    def ext_vanish(self, x: IndecObject, y: IndecObject) -> bool:
        return all(
            self.cluster_hom(x, y, k) == 0 and self.cluster_hom(y, x, k) == 0 for k in range(1, self.m)
        )

    def is_cluster_tilting(self, S: Sequence[IndecObject]) -> bool:
        reps = {self.canonical(x) for x in S}
        if len(reps) != len(S) or len(reps) != self.n:
            return False
        rs = sorted(reps)
        return all(self.ext_vanish(a, b) for i, a in enumerate(rs) for b in rs[i:])

    # -- exhaustive enumeration ------------------------------------------------
    def all_cluster_tilting_sets(self) -> List[ClusterSet]:
        objs = [o for o in self.objects() if self.ext_vanish(o, o)]
        compat = {a: {b for b in objs if b != a and self.ext_vanish(a, b)} for a in objs}
        out: List[ClusterSet] = []

        def grow(chosen: List[IndecObject], cands: List[IndecObject]):
            if len(chosen) == self.n:
                out.append(frozenset(chosen))
                return
            for i, c in enumerate(cands):
                grow(chosen + [c], [d for d in cands[i + 1 :] if d in compat[c]])

        grow([], objs)
        return sorted(out, key=_set_key)

    def complements(self, S: ClusterSet, p: IndecObject) -> List[IndecObject]:
        rest = [x for x in S if x != p]
        return [
            o
            for o in self.objects()
            if o not in rest and self.ext_vanish(o, o) and all(self.ext_vanish(o, r) for r in rest)
        ]


def _set_key(s: ClusterSet) -> Tuple:
    return tuple(sorted((o.shift, o.root) for o in s))


@dataclass
class MutationGraph:
    """Vertices: fundamental hearts (= cluster tilting sets); edges: backward mutations."""

    P: CoveringPoset
    K: ClusterCategory
    sets: List[ClusterSet]
    edges: List[Tuple[int, int, int]]  # (source heart, simple index, target heart)
    cells: List[Tuple[str, List[Tuple[int, int]], List[Tuple[int, int]]]]  # kind, path1, path2

    def to_dot(self) -> str:
        lines = ["digraph mutations {"]
        for i, s in enumerate(self.sets):
            lab = " ".join(o.label() for o in sorted(s))
            lines.append(f'  v{i} [label="{lab}"];')
        for a, k, b in self.edges:
            lines.append(f'  v{a} -> v{b} [label="mu{k + 1}"];')
        for t, (kind, p1, p2) in enumerate(self.cells):
            lines.append(f"  // cell {t}: {kind} {p1} = {p2}")
        lines.append("}")
        return "\n".join(lines) + "\n"


def silting_dual(C: DerivedCategory, h: FundHeart, N: int) -> List[IndecObject]:
    """P_i with Hom^k(P_i, s_j) = [i == j and k == 0] for the simples s_j of h."""
    out = []
    shifts = range(-N, 2)
    cands = C.all_indecomposables(shifts)
    for i, s in enumerate(h.simples):
        hits = []
        for x in cands:
            ok = True
            for j, t in enumerate(h.simples):
                want = {0: 1} if i == j else {}
                if C.hom_dims(x, t) != want:
                    ok = False
                    break
            if ok:
                hits.append(x)
        if len(hits) != 1:
            raise ClusterError(f"silting dual of {s.label()} is not unique ({len(hits)} candidates)")
        out.append(hits[0])
    return out


def heart_cluster(K: ClusterCategory, h: FundHeart) -> ClusterSet:
    return frozenset(K.canonical(x) for x in silting_dual(K.C, h, K.N))


def mutate(K: ClusterCategory, P: CoveringPoset, S: ClusterSet, p: IndecObject, direction: str = "backward") -> ClusterSet:
    """Mutation at p, read off from a simple tilt of the heart lying over S."""
    graph = mutation_category(P.q, P.N)
    try:
        a = graph.sets.index(frozenset(S))
    except ValueError:
        raise ClusterError("not a cluster tilting set of this category") from None
    h = P.dom.hearts[a]
    dual = silting_dual(K.C, h, K.N)
    reps = [K.canonical(x) for x in dual]
    if p not in reps:
        raise ClusterError(f"{p.label()} is not in the cluster tilting set")
    i = reps.index(p)
    b, _ = (P.dom.left if direction == "backward" else P.dom.right)[a][i]
    return graph.sets[b]


def exchange_violations(K: ClusterCategory, S: ClusterSet, T: ClusterSet, direction: str) -> List[str]:
    """Checks the replaced summand against the exchange-triangle criterion."""
    gone = list(S - T)
    new = list(T - S)
    if len(gone) != 1 or len(new) != 1:
        return [f"mutation changed {len(gone)} summands"]
    p, x = gone[0], new[0]
    comps = K.complements(S, p)
    if x not in comps:
        return [f"{x.label()} is not a complement of {p.label()}"]
    if direction == "backward":
        fits = [c for c in comps if c != p and K.cluster_hom(p, c, 1)]
    else:
        fits = [c for c in comps if c != p and K.cluster_hom(c, p, 1)]
    if fits != [x]:
        return [f"exchange criterion picks {[c.label() for c in fits]}, tilt gives {x.label()}"]
    return []


_GRAPHS: Dict[Tuple, MutationGraph] = {}


def mutation_category(q: Quiver, N: int) -> MutationGraph:
    q = parse_quiver(q)
    key = (q.name, q.arrows, N)
    if key in _GRAPHS:
        return _GRAPHS[key]
    P = covering_poset(q, N)
    K = ClusterCategory(q, N)
    sets = [heart_cluster(K, h) for h in P.dom.hearts]
    if len(set(sets)) != len(sets):
        raise ClusterError("two fundamental hearts give the same cluster tilting set")
    edges = [(a, i, b) for a in range(len(sets)) for i, (b, _) in enumerate(P.dom.left[a])]
    cells = []
    for a in range(len(sets)):
        x = Node(P.G.identity(), a)
        for i, j in combinations(range(P.n), 2):
            d = P.local_diagram(x, i, j)
            if d.kind == "square":
                p1 = _path_edges(P, [x, P.left(x, i), d.top])
                p2 = _path_edges(P, [x, P.left(x, j), d.top])
            else:
                a0, b0 = d.order
                p1 = _path_edges(P, [x, P.left(x, a0), d.intermediate, d.top])
                p2 = _path_edges(P, [x, P.left(x, b0), d.top])
            cells.append((d.kind, p1, p2))
    g = MutationGraph(P, K, sets, edges, cells)
    _GRAPHS[key] = g
    return g


def _path_edges(P: CoveringPoset, path: List[Node]) -> List[Tuple[int, int]]:
    out = []
    for u, v in zip(path, path[1:]):
        k = next((k for k in range(P.n) if P.left(u, k) == v), None)
        if k is None:
            raise ClusterError("2-cell boundary is not a path of simple tilts")
        out.append((u.heart, k))
    return out


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: Tuple[int, ...]

    def __str__(self) -> str:
        parts = (["Z"] * self.rank if self.rank <= 3 else [f"Z^{self.rank}"]) + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def h1_of_nerve(g: MutationGraph) -> AbelianGroup:
    """H_1 of the 2-complex: hearts, tilt edges, square and pentagon cells."""
    eidx = {(a, i): k for k, (a, i, _) in enumerate(g.edges)}
    d1 = {}
    for k, (a, _, b) in enumerate(g.edges):
        if a != b:
            d1[(a, k)] = d1.get((a, k), 0) - 1
            d1[(b, k)] = d1.get((b, k), 0) + 1
    d2: Dict[Tuple[int, int], int] = {}
    for c, (_, p1, p2) in enumerate(g.cells):
        for e in p1:
            d2[(eidx[e], c)] = d2.get((eidx[e], c), 0) + 1
        for e in p2:
            d2[(eidx[e], c)] = d2.get((eidx[e], c), 0) - 1
    r1 = len(smith_diagonal(d1, len(g.sets), len(g.edges)))
    diag2 = smith_diagonal(d2, len(g.edges), len(g.cells))
    rank = len(g.edges) - r1 - len(diag2)
    return AbelianGroup(rank, tuple(d for d in diag2 if d > 1))


@dataclass
class GarsideReport:
    passed: bool
    vertices: int
    morphisms_checked: int
    pairs_checked: int
    failures: List[str]

    def to_json(self) -> Dict:
        return {
            "passed": self.passed,
            "vertices": self.vertices,
            "morphisms_checked": self.morphisms_checked,
            "pairs_checked": self.pairs_checked,
            "failures": self.failures[:20],
        }


def garside_check(q: Quiver, N: int, d: int = 1, samples: int = 30, seed: int = 0) -> GarsideReport:
    """Garside axioms on the category with one object per fundamental heart.

    Delta_P is the chain from P to P[-d].  Morphisms are compared in the
    covering poset over the identity braid, which is enough by equivariance.
    """
    q = parse_quiver(q)
    P = covering_poset(q, N)
    rng = random.Random(seed)
    failures: List[str] = []
    morphisms = pairs = 0
    for a in range(len(P.dom)):
        x = Node(P.G.identity(), a)
        top = x
        for _ in range(d):
            top = P.shift_down(top)
        reg = P.interval(x, top)
        # each generator leaving x divides Delta
        for i in range(P.n):
            if P.left(x, i) not in reg:
                failures.append(f"generator {i + 1} at heart {a} does not divide Delta")
        # atomicity: chain lengths bounded by the height difference
        longest = _longest_chain(reg)
        bound = P.height(top) - P.height(x)
        morphisms += sum(bin(m).count("1") for m in reg.up) + len(reg)
        if longest > bound:
            failures.append(f"chain of length {longest} exceeds bound {bound} at heart {a}")
        # meets and joins of sampled pairs under the common bound
        nodes = reg.nodes
        for _ in range(samples):
            u, v = rng.choice(nodes), rng.choice(nodes)
            pairs += 1
            j, m = P.join(u, v), P.meet(u, v)
            if j not in reg or m not in reg:
                failures.append(f"join or meet left the interval at heart {a}")
                continue
            ups = [w for w in nodes if reg.leq(u, w) and reg.leq(v, w)]
            downs = [w for w in nodes if reg.leq(w, u) and reg.leq(w, v)]
            if not all(reg.leq(j, w) for w in ups) or j not in ups:
                failures.append(f"join is not least at heart {a}")
            if not all(reg.leq(w, m) for w in downs) or m not in downs:
                failures.append(f"meet is not greatest at heart {a}")
    return GarsideReport(not failures, len(P.dom), morphisms, pairs, failures)


def _longest_chain(reg) -> int:
    n = len(reg)
    best = [0] * n
    for i in range(n - 1, -1, -1):
        succ = [j for (a, j, _) in reg.edges if a == i]
        best[i] = max((1 + best[j] for j in succ), default=0)
    return max(best, default=0)
