"""ADE Dynkin diagrams, quiver orientations, positive roots and the Euler form.

Vertices are numbered 1..n in the user-facing API (JSON, CLI, braid words) and
0..n-1 internally.  The numbering is fixed per family:

    A_n   1 - 2 - ... - n
    D_n   1 - 2 - ... - (n-2), with n-1 and n both attached to n-2
    E_n   1 - 3 - 4 - 5 - ... - n, with 2 attached to 4   (Bourbaki)

The default orientation sends every edge {i, j} with i < j to the arrow i -> j.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

Vector = Tuple[int, ...]


class DynkinError(ValueError):
    pass


_COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2}
_E_COXETER = {6: 12, 7: 18, 8: 30}


def _edges(family: str, rank: int) -> List[Tuple[int, int]]:
    if family == "A":
        if rank < 1:
            raise DynkinError(f"A_n needs n >= 1, got {rank}")
        return [(i, i + 1) for i in range(rank - 1)]
    if family == "D":
        if rank < 4:
            raise DynkinError(f"D_n needs n >= 4, got {rank}")
        path = [(i, i + 1) for i in range(rank - 3)]
        return path + [(rank - 3, rank - 2), (rank - 3, rank - 1)]
    if family == "E":
        if rank not in (6, 7, 8):
            raise DynkinError(f"E_n needs n in 6..8, got {rank}")
        # Bourbaki labels 1..n -> 0..n-1
        es = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
        return es
    raise DynkinError(f"unknown family {family!r}")


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int
    adjacency: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def edges(self) -> List[Tuple[int, int]]:
        n = self.rank
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.adjacency[i][j]]

    def neighbours(self, i: int) -> List[int]:
        return [j for j in range(self.rank) if self.adjacency[i][j]]

    def cartan(self) -> Tuple[Tuple[int, ...], ...]:
        n = self.rank
        return tuple(
            tuple(2 if i == j else -self.adjacency[i][j] for j in range(n)) for i in range(n)
        )

    def coxeter_number(self) -> int:
        if self.family == "E":
            return _E_COXETER[self.rank]
        return _COXETER[self.family](self.rank)

    def tits_form(self, x: Sequence[int]) -> int:
        """q(x) = sum x_i^2 - sum over edges x_i x_j."""
        return sum(v * v for v in x) - sum(x[i] * x[j] for i, j in self.edges)

    def highest_root(self) -> Vector:
        """Coordinates of the highest root, used to bound the root search box."""
        n = self.rank
        if self.family == "A":
            return (1,) * n
        if self.family == "D":
            return (1,) + (2,) * (n - 3) + (1, 1)
        return {
            6: (1, 2, 2, 3, 2, 1),
            7: (2, 2, 3, 4, 3, 2, 1),
            8: (2, 3, 4, 6, 5, 4, 3, 2),
        }[n]


def build_diagram(family: str, rank: int) -> DynkinDiagram:
    family = str(family).upper()
    edges = _edges(family, int(rank))
    adj = [[0] * rank for _ in range(rank)]
    for i, j in edges:
        adj[i][j] = adj[j][i] = 1
    return DynkinDiagram(family, rank, tuple(tuple(r) for r in adj))


@dataclass(frozen=True)
class Quiver:
    diagram: DynkinDiagram
    arrows: Tuple[Tuple[int, int], ...]  # 0-based (source, target)

    @property
    def rank(self) -> int:
        return self.diagram.rank

    @property
    def name(self) -> str:
        return self.diagram.name

    def euler_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        n = self.rank
        m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in self.arrows:
            m[i][j] -= 1
        return tuple(tuple(r) for r in m)

    def to_json(self) -> Dict:
        return {
            "family": self.diagram.family,
            "rank": self.rank,
            "arrows": [[i + 1, j + 1] for i, j in self.arrows],
        }


def build_quiver(family: str, rank: int, arrows: Sequence[Sequence[int]] | None = None) -> Quiver:
    """Quiver on the named diagram; ``arrows`` are 1-based pairs, default i -> j for i < j."""
    d = build_diagram(family, rank)
    if arrows is None:
        return Quiver(d, tuple(d.edges))
    got = []
    for a in arrows:
        i, j = int(a[0]) - 1, int(a[1]) - 1
        if not (0 <= i < rank and 0 <= j < rank) or not d.adjacency[i][j]:
            raise DynkinError(f"arrow {a} is not an edge of {d.name}")
        got.append((i, j))
    if sorted(tuple(sorted(a)) for a in got) != d.edges:
        raise DynkinError(f"arrows must orient each edge of {d.name} exactly once")
    return Quiver(d, tuple(got))


_NAME = re.compile(r"^\s*([ADEade])\s*_?\s*(\d+)\s*$")


def parse_quiver(spec: "str | Dict | Quiver") -> Quiver:
    """Accepts "A2", "D4", or the JSON form {"family":"A","rank":2,"arrows":[[1,2]]}."""
    if isinstance(spec, Quiver):
        return spec
    if not isinstance(spec, (str, dict)):
        raise DynkinError(f"cannot parse quiver {spec!r}")
    if isinstance(spec, dict):
        return build_quiver(spec["family"], int(spec["rank"]), spec.get("arrows"))
    s = spec.strip()
    if s.startswith("{"):
        return parse_quiver(json.loads(s))
    m = _NAME.match(s)
    if not m:
        raise DynkinError(f"cannot parse quiver {spec!r}")
    return build_quiver(m.group(1).upper(), int(m.group(2)))


def quiver_from_json(text: str) -> Quiver:
    return parse_quiver(json.loads(text))


def euler_form(q: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    """<x, y> = sum_i x_i y_i - sum_{a: i -> j} x_i y_j."""
    n = q.rank
    if len(x) != n or len(y) != n:
        raise DynkinError(f"expected vectors of length {n}")
    return sum(x[i] * y[i] for i in range(n)) - sum(x[i] * y[j] for i, j in q.arrows)


def positive_roots(d: DynkinDiagram) -> List[Vector]:
    """All x >= 0 with q(x) = 1, searched inside the box below the highest root.

    Every positive root is dominated coordinatewise by the highest root, so the
    box search is exhaustive.  Output is lexicographically sorted.
    """
    return _positive_roots(d.family, d.rank)


_ROOT_CACHE: Dict[Tuple[str, int], List[Vector]] = {}


def _positive_roots(family: str, rank: int) -> List[Vector]:
    key = (family, rank)
    if key not in _ROOT_CACHE:
        d = build_diagram(family, rank)
        box = [range(h + 1) for h in d.highest_root()]
        roots = [v for v in itertools.product(*box) if any(v) and d.tits_form(v) == 1]
        _ROOT_CACHE[key] = sorted(roots)
    return list(_ROOT_CACHE[key])


def simple_root(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def coxeter_matrix(q: Quiver) -> List[List[object]]:
    """Phi = -E^{-1} E^T on column vectors; dim tau M = Phi(dim M) for M non-projective.

    E is unitriangular after a topological sort, so the inverse is integral.
    """
    from fractions import Fraction

    from ._linalg import inverse

    e = [[Fraction(v) for v in row] for row in q.euler_matrix()]
    einv = inverse(e)
    n = q.rank
    et = [[e[j][i] for j in range(n)] for i in range(n)]
    out = [[-sum(einv[i][k] * et[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[int(v) for v in row] for row in out]
