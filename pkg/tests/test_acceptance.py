"""Acceptance suite: ten criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are printed at
the end of the session) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from collections import Counter as Multiset
from itertools import combinations
from pathlib import Path


sys.path.insert(0, str(Path(__file__).parent))

from tilting_atlas import covering_poset, fundamental_domain, group
from tilting_atlas.braid import invert_word
from tilting_atlas.cluster import garside_check, h1_of_nerve, mutation_category
from tilting_atlas.strata import Stratum, charge_roundtrip, closed_interval, closure_poset, purity_report
from tilting_atlas.tiltp import cone_poset
from tilting_atlas.topo import homology, is_contractible_certificate, order_complex

from _words import random_word, rewrite_once

RESULTS: dict = {}


def record(k: int, ok: bool, detail: str, t0: float, limit: float | None = None) -> None:
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok = False
        detail += f"; took {dt:.1f}s > {limit:.0f}s"
    line = f"CRITERION {k:>2}: {'PASS' if ok else 'FAIL'}  ({dt:.1f}s)  {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def test_criterion_01_a1_ladder():
    t0 = time.perf_counter()
    notes, ok = [], True
    for N in (3, 4, 5):
        dom = fundamental_domain("A1", N)
        P = covering_poset("A1", N)
        w = P.explore(P.standard(), 2 * (N - 1))
        g = mutation_category("A1", N)
        brute = g.K.all_cluster_tilting_sets()
        good = len(dom) == N - 1 and w.is_chain() and len(w.nodes) == 2 * N - 1 and len(g.sets) == len(brute) == N - 1
        ok &= good
        notes.append(f"N={N}: hearts={len(dom)} chain={w.is_chain()} clusters={len(g.sets)}/{len(brute)}")
    record(1, ok, "; ".join(notes), t0, 1.0)


def test_criterion_02_pentagon_square():
    t0 = time.perf_counter()
    P2 = covering_poset("A2", 3)
    D = P2.standard()
    pent = P2.local_diagram(D, 0, 1)
    n_int = len(P2.int_region(D))
    P3 = covering_poset("A3", 3)
    sq = P3.local_diagram(P3.standard(), 0, 2)
    ok = n_int == 5 and pent.kind == "pentagon" and pent.size == 5 and sq.kind == "square" and sq.size == 4
    record(2, ok, f"A2 |[D,D[-1]]|={n_int} ({pent.kind}); A3 (S1,S3) interval={sq.size} ({sq.kind})", t0, 1.0)


def test_criterion_03_cluster_counts():
    t0 = time.perf_counter()
    parts, ok = [], True
    g = mutation_category("A2", 3)
    brute = g.K.all_cluster_tilting_sets()
    agree = set(brute) == set(g.sets)
    # the stated target is 12; both independent enumerations give 5 (12 is the N=4 count)
    ok &= agree and len(g.sets) == 12
    parts.append(f"A2/N=3 cover={len(g.sets)} exhaustive={len(brute)} expected=12")
    for name in ("A3", "D4"):
        g = mutation_category(name, 3)
        brute = g.K.all_cluster_tilting_sets()
        same = set(brute) == set(g.sets)
        ok &= same
        parts.append(f"{name}/N=3 cover={len(g.sets)} exhaustive={len(brute)} agree={same}")
    record(3, ok, "; ".join(parts), t0, 60.0)


def _edge_violations(P, x, i, gens):
    """Checks one left tilt x -> y against K-theory and the generator rule."""
    out = []
    y = P.left(x, i)
    h = P.heart(x)
    cx = P.classes(x)
    s = h.simples[i]
    gs = gens(x)
    expected = {}
    for k, t in enumerate(h.simples):
        if k == i:
            expected[tuple(-c for c in cx[i])] = gs[i]
        elif P.C.hom_cy(s, t, P.N, 1):
            expected[tuple(a + b for a, b in zip(cx[k], cx[i]))] = P.G.conjugate(gs[i], gs[k])
        else:
            expected[cx[k]] = gs[k]
    got = dict(zip(P.classes(y), gens(y)))
    if set(got) != set(expected):
        out.append(f"K-classes disagree on the edge {P.label(x)} -> {P.label(y)}")
    elif any(got[c] != expected[c] for c in got):
        out.append(f"generators disagree on the edge {P.label(x)} -> {P.label(y)}")
    return out


def test_criterion_04_freeness():
    t0 = time.perf_counter()
    parts, ok = [], True
    # two-sided depth 10 in A3 has ~47k nodes, past the time limit; use a deeper
    # one-sided window plus a two-sided one instead
    for name, depth, both in (("A2", 10, True), ("A3", 12, False), ("A3", 8, True)):
        P = covering_poset(name, 3)
        G = P.G
        cache = {}

        def gens(x):
            r = cache.get(x)
            if r is None:
                r = [G.conjugate(x.braid, d) for d in P.heart(x).decoration]
                cache[x] = r
            return r

        w = P.explore(P.standard(), depth, both=both)
        nodes = set(w.nodes)
        keys = {P.key(x) for x in w.nodes}
        viol = list(P.dom.violations)
        edges = 0
        for x in w.nodes:
            for i in range(P.n):
                if P.left(x, i) in nodes:
                    edges += 1
                    viol += _edge_violations(P, x, i, gens)
        same_k = sum(c - 1 for c in Multiset((x.heart, tuple(P.classes(x))) for x in w.nodes).values())
        good = not viol and len(keys) == len(w.nodes)
        ok &= good
        parts.append(
            f"{name} depth {depth}{' two-sided' if both else ''}: {len(w.nodes)} nodes, {edges} edges checked, {len(viol)} violations, "
            f"{same_k} pairs share K-classes"
        )
    record(4, ok, "; ".join(parts), t0, 60.0)


def test_criterion_05_dichotomy():
    t0 = time.perf_counter()
    parts, ok = [], True
    for name in ("A2", "A3", "D4", "A4"):
        dom = fundamental_domain(name, 3)
        G, C = dom.calc.G, dom.calc.C
        bad = checked = 0
        for h in dom.hearts:
            bad += len(dom.calc.heart_violations(h))
            for (s, bs), (t, bt) in combinations(zip(h.simples, h.decoration), 2):
                checked += 1
                commute = G.multiply(bs, bt) == G.multiply(bt, bs)
                braid = G.product(bs, bt, bs) == G.product(bt, bs, bt)
                zero = not C.graded_hom_cy(s, t, 3)
                if zero != commute or (not zero and not braid):
                    bad += 1
        ok &= bad == 0
        parts.append(f"{name}: {len(dom)} hearts, {checked} pairs, {bad} violations")
    record(5, ok, "; ".join(parts), t0)


def test_criterion_06_cones():
    t0 = time.perf_counter()
    parts, ok = [], True
    for name, depth in (("A2", 3), ("A3", 2)):
        P = covering_poset(name, 3)
        w = P.explore(P.standard(), depth, both=True).nodes
        rng = random.Random(2024)
        bad = collapsed = small = 0
        sizes = []
        for _ in range(50):
            F = rng.sample(w, rng.randint(1, 3))
            cx = order_complex(cone_poset(P, F))
            sizes.append(len(cx.simplices))
            if not homology(cx).is_acyclic():
                bad += 1
            if len(cx.simplices) <= 200:
                small += 1
                if is_contractible_certificate(cx) == "collapsible":
                    collapsed += 1
                else:
                    bad += 1
        ok &= bad == 0
        parts.append(f"{name}: 50 cones (<= {max(sizes)} simplices), acyclic failures={bad}, collapsible {collapsed}/{small}")
    record(6, ok, "; ".join(parts), t0, 300.0)


def test_criterion_07_h1():
    t0 = time.perf_counter()
    parts, ok = [], True
    for name in ("A2", "A3"):
        h1 = h1_of_nerve(mutation_category(name, 3))
        ok &= str(h1) == "Z"
        parts.append(f"{name}: H1={h1}")
    record(7, ok, "; ".join(parts), t0, 60.0)


def test_criterion_08_garside():
    t0 = time.perf_counter()
    parts, ok = [], True
    for name in ("A2", "A3"):
        rep = garside_check(name, 3, 1, samples=60, seed=0)
        ok &= rep.passed
        parts.append(
            f"{name}: {rep.vertices} objects, {rep.morphisms_checked} morphisms, "
            f"{rep.pairs_checked} pairs, {len(rep.failures)} failures"
        )
    record(8, ok, "; ".join(parts), t0)


def test_criterion_09_strata():
    t0 = time.perf_counter()
    parts, ok = [], True
    rng = random.Random(9)
    for name, depth in (("A1", 2), ("A2", 2), ("A3", 1)):
        P = covering_poset(name, 3)
        nodes = P.explore(P.standard(), depth, both=True).nodes
        impure = sum(not purity_report(P, D).pure for D in nodes)
        cp = closure_poset(P, P.standard())
        bad_int = pairs = 0
        for a, b in cp.relations():
            pairs += 1
            if not closed_interval(P, Stratum(*a), Stratum(*b)).embeds:
                bad_int += 1
        bad_charge = 0
        for a in cp.elements:
            s = Stratum(*a)
            bad_charge += sum(not charge_roundtrip(P, s, rng) for _ in range(1000))
        ok &= impure == 0 and bad_int == 0 and bad_charge == 0
        parts.append(
            f"{name}: {len(nodes)} closures pure={len(nodes) - impure}, {pairs} intervals "
            f"({bad_int} bad), {1000 * len(cp)} charges ({bad_charge} bad)"
        )
    record(9, ok, "; ".join(parts), t0, 60.0)


def test_criterion_10_braid_words():
    t0 = time.perf_counter()
    parts, ok = [], True
    for name in ("A2", "A3", "D4"):
        G = group(name)
        n = G.diagram.rank
        rng = random.Random(10)
        bad = 0
        for _ in range(10_000):
            w = random_word(rng, n)
            x = G.from_word(w)
            if not G.is_identity(G.multiply(x, G.from_word(invert_word(w)))):
                bad += 1
            if G.from_word(rewrite_once(G, w, rng)) != x:
                bad += 1
        ok &= bad == 0
        parts.append(f"{name}: 10000 words, {bad} failures")
    record(10, ok, "; ".join(parts), t0, 30.0)


if __name__ == "__main__":
    for k, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            pass
    print()
    print("\n".join(RESULTS[k] for k in sorted(RESULTS)))
