"""Command line front end.  JSON reports go to stdout, diagnostics to stderr."""

from __future__ import annotations

import json
import random
import sys
from typing import Dict, Optional

import click

from .budget import BudgetExceeded, global_budget
from .dynkin import DynkinError, Quiver, parse_quiver


def _quiver(ctx, param, value: str) -> Quiver:
    try:
        return parse_quiver(value)
    except (DynkinError, ValueError, KeyError) as e:
        raise click.BadParameter(str(e)) from None


def _emit(command: str, cfg: Dict, result: Dict) -> None:
    out = {"command": command, "config": cfg, command: result}
    click.echo(json.dumps(out, indent=2, sort_keys=True))


def _log(msg: str) -> None:
    click.echo(msg, err=True)


quiver_opt = click.option("--quiver", "q", required=True, callback=_quiver, help='e.g. A2, D4 or a JSON quiver.')
n_opt = click.option("--N", "N", type=click.IntRange(min=2), default=3, show_default=True, help="Calabi-Yau dimension.")
seed_opt = click.option("--seed", type=int, default=0, show_default=True)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except BudgetExceeded as e:
            _log(f"budget exceeded: {e}")
            sys.exit(3)


@click.group(cls=_Group)
def main() -> None:
    """Tilting posets, braid actions and cluster combinatorics of CY-N Dynkin categories."""
    try:
        global_budget()
    except ValueError as e:
        raise click.UsageError(str(e)) from None


@main.command()
@quiver_opt
@n_opt
@click.option("--depth", type=click.IntRange(min=0), default=4, show_default=True)
@click.option("--both", is_flag=True, help="Use right tilts as well as left tilts.")
@click.option("--dot", type=click.Path(dir_okay=False), default=None, help="Write the Hasse diagram here.")
def explore(q: Quiver, N: int, depth: int, both: bool, dot: Optional[str]) -> None:
    """Window of the covering poset around the standard heart."""
    from .tiltp import covering_poset

    P = covering_poset(q, N)
    w = P.explore(P.standard(), depth, both=both)
    _log(f"explored {len(w.nodes)} nodes")
    if dot:
        with open(dot, "w") as fh:
            fh.write(w.to_dot())
    res = w.to_json()
    res["size"] = len(w.nodes)
    res["is_chain"] = w.is_chain()
    _emit("explore", {"quiver": q.to_json(), "N": N, "depth": depth, "both": both}, res)


@main.command()
@quiver_opt
@n_opt
@click.option("--count", "count_only", is_flag=True, help="Only report counts.")
@click.option("--export", type=click.Path(dir_okay=False), default=None, help="Write the exchange graph as DOT.")
def clusters(q: Quiver, N: int, count_only: bool, export: Optional[str]) -> None:
    """Cluster tilting sets of the (N-1)-cluster category, two ways."""
    cfg = {"quiver": q.to_json(), "N": N}
    if N == 2:
        _log("N = 2: the braid group acts transitively, one cluster object; enumeration skipped")
        _emit("clusters", cfg, {"count": 1, "skipped": True})
        return
    from .cluster import h1_of_nerve, mutation_category

    g = mutation_category(q, N)
    exhaustive = g.K.all_cluster_tilting_sets()
    res: Dict = {
        "count": len(g.sets),
        "exhaustive_count": len(exhaustive),
        "agree": set(exhaustive) == set(g.sets),
        "h1": str(h1_of_nerve(g)),
    }
    if not count_only:
        res["sets"] = [sorted(o.label() for o in s) for s in g.sets]
    if export:
        with open(export, "w") as fh:
            fh.write(g.to_dot())
    _emit("clusters", cfg, res)


@main.command()
@quiver_opt
@n_opt
@click.option("--cone-samples", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--window-depth", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--max-size", type=click.IntRange(min=1), default=3, show_default=True, help="Largest |F|.")
@seed_opt
def homology(q: Quiver, N: int, cone_samples: int, window_depth: int, max_size: int, seed: int) -> None:
    """Integral homology of order complexes of random cones C(F)."""
    from .tiltp import cone_poset, covering_poset
    from .topo import homology as hom
    from .topo import is_contractible_certificate, order_complex

    P = covering_poset(q, N)
    w = P.explore(P.standard(), window_depth, both=True)
    rng = random.Random(seed)
    _log(f"seed {seed}, window of {len(w.nodes)} nodes")
    samples = []
    for _ in range(cone_samples):
        F = rng.sample(w.nodes, rng.randint(1, min(max_size, len(w.nodes))))
        cp = cone_poset(P, F)
        cx = order_complex(cp)
        h = hom(cx)
        cert = is_contractible_certificate(cx) if len(cx.simplices) <= 200 else ("homology-trivial" if h.is_acyclic() else "unknown")
        samples.append(
            {
                "F": [P.label(x) for x in F],
                "strata": len(cp),
                "f_vector": cx.f_vector(),
                "reduced_betti": list(h.reduced_betti()),
                "torsion": [list(t) for t in h.torsion],
                "certificate": cert,
            }
        )
    res = {
        "samples": samples,
        "all_reduced_betti_zero": all(not any(s["reduced_betti"]) and not any(s["torsion"]) for s in samples),
    }
    _emit("homology", {"quiver": q.to_json(), "N": N, "cone_samples": cone_samples, "window_depth": window_depth, "seed": seed}, res)


@main.command()
@quiver_opt
@n_opt
@click.option("--d", "d", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--samples", type=click.IntRange(min=0), default=30, show_default=True)
@seed_opt
def garside(q: Quiver, N: int, d: int, samples: int, seed: int) -> None:
    """Garside axioms on the cluster mutation category."""
    from .cluster import garside_check

    if N < 3:
        raise click.BadParameter("the mutation category needs N >= 3", param_hint="--N")
    rep = garside_check(q, N, d, samples=samples, seed=seed)
    _emit("garside", {"quiver": q.to_json(), "N": N, "d": d, "samples": samples, "seed": seed}, rep.to_json())


@main.command()
@quiver_opt
@n_opt
@click.option("--depth", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Write the strata table of the standard closure.")
def strata(q: Quiver, N: int, depth: int, csv_path: Optional[str]) -> None:
    """Purity of closures of top strata in a window, and closed-interval structure."""
    from .strata import Stratum, closed_interval, closure_poset, purity_report, strata_table
    from .tiltp import covering_poset

    P = covering_poset(q, N)
    w = P.explore(P.standard(), depth, both=True)
    pure = embeds = iso = intervals = 0
    failures = []
    for D in w.nodes:
        r = purity_report(P, D)
        pure += r.pure
        failures += r.failures[:2]
    cp = closure_poset(P, P.standard())
    top = Stratum(P.standard(), frozenset())
    for a in cp.elements:
        rep = closed_interval(P, Stratum(*a), top)
        intervals += 1
        embeds += rep.embeds
        iso += rep.isomorphic
    table = strata_table(P, cp)
    if csv_path:
        import csv

        with open(csv_path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["braid", "heart", "I", "codim"])
            for row in table:
                wr.writerow([row["braid"], json.dumps(row["heart"]), json.dumps(row["I"]), row["codim"]])
    res = {
        "nodes": len(w.nodes),
        "pure": pure,
        "failures": failures[:20],
        "closure_of_standard": len(cp),
        "intervals": intervals,
        "embed_in_boolean": embeds,
        "isomorphic_to_boolean": iso,
    }
    _emit("strata", {"quiver": q.to_json(), "N": N, "depth": depth}, res)


@main.command("braid-nf")
@click.option("--type", "typ", required=True, help="Diagram, e.g. A2.")
@click.argument("word")
def braid_nf(typ: str, word: str) -> None:
    """Garside normal form of a braid word such as "b1 b2 b1^-1"."""
    from .braid import BraidError, group

    try:
        q = parse_quiver(typ)
    except (DynkinError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="--type") from None
    G = group(q.diagram)
    try:
        b = G.from_word(word)
    except BraidError as e:
        raise click.BadParameter(str(e), param_hint="WORD") from None
    res = {"word": word, "normal_form": G.format(b), "infimum": b.infimum, "abelianization": G.abelianization(b)}
    _emit("braid-nf", {"type": q.name}, res)


if __name__ == "__main__":
    main()
