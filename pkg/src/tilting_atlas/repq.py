"""Representations of a Dynkin quiver and the bounded derived category D(Q).

Indecomposables of D(Q) are pairs (positive root, shift), meaning M_root[shift].
Graded Hom spaces follow from heredity: Hom^d(M[k], M'[k']) is the module Hom
at d = k - k', Ext^1 at d = k - k' + 1 and zero elsewhere.  Module Hom
dimensions come from solving the intertwiner equations over Q; Ext^1 then
follows from the Euler form.

The CY-N category is never modelled directly.  Its graded Homs between images
of D(Q) objects are obtained by doubling,

    Hom^d_Gamma(x, y) = Hom^d(x, y) + Hom^(N-d)(y, x),

and every cone computed here is a cone in D(Q).
"""

from __future__ import annotations

import random
import threading
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import _linalg as la
from .dynkin import Quiver, coxeter_matrix, parse_quiver, euler_form, positive_roots

Vector = Tuple[int, ...]
GradedDims = Dict[int, int]


class RepError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class IndecObject:
    root: Vector
    shift: int

    def shifted(self, k: int) -> "IndecObject":
        return IndecObject(self.root, self.shift + k)

    def k_class(self) -> Vector:
        sign = -1 if self.shift % 2 else 1
        return tuple(sign * v for v in self.root)

    def label(self) -> str:
        return f"{''.join(map(str, self.root))}@{self.shift}"

    def to_json(self) -> Dict:
        return {"root": list(self.root), "shift": self.shift}


@dataclass(frozen=True)
class Rep:
    """Vector space dimensions per vertex and one matrix per arrow (rows = target)."""

    dims: Vector
    maps: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]  # aligned with quiver.arrows

    def to_json(self) -> Dict:
        return {
            "dims": list(self.dims),
            "maps": [[[str(v) for v in row] for row in m] for m in self.maps],
        }


def _mm(a, b, r: int, k: int, c: int) -> la.Matrix:
    """r x k times k x c, tolerating empty dimensions."""
    out = la.zeros(r, c)
    for i in range(r):
        for t in range(k):
            v = a[i][t]
            if v:
                for j in range(c):
                    out[i][j] += v * b[t][j]
    return out


def _freeze(m: la.Matrix) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(r) for r in m)


class DerivedCategory:
    """D(Q) for a Dynkin quiver, with memoised representatives and Hom tables."""

    def __init__(self, q: Quiver, seed: int = 0):
        self.q = q
        self.n = q.rank
        self.roots: List[Vector] = positive_roots(q.diagram)
        self._root_set = set(self.roots)
        self._seed = seed
        self._lock = threading.Lock()
        self._reps: Dict[Vector, Rep] = {}
        self._hom: Dict[Tuple[Vector, Vector], int] = {}
        self.phi = coxeter_matrix(q)
        self.phi_inv = la.int_inverse(self.phi)

    # -- objects -----------------------------------------------------------
    def obj(self, root: Sequence[int], shift: int = 0) -> IndecObject:
        r = tuple(int(v) for v in root)
        if r not in self._root_set:
            raise RepError(f"{r} is not a positive root of {self.q.name}")
        return IndecObject(r, int(shift))

    def simple(self, i: int, shift: int = 0) -> IndecObject:
        return IndecObject(tuple(int(k == i) for k in range(self.n)), shift)

    def projective_root(self, i: int) -> Vector:
        """dim P_i: vertices j reachable from i along arrows (thin for a tree)."""
        out = [0] * self.n
        stack = [i]
        while stack:
            v = stack.pop()
            if out[v]:
                continue
            out[v] = 1
            stack.extend(b for a, b in self.q.arrows if a == v)
        return tuple(out)

    def injective_root(self, i: int) -> Vector:
        out = [0] * self.n
        stack = [i]
        while stack:
            v = stack.pop()
            if out[v]:
                continue
            out[v] = 1
            stack.extend(a for a, b in self.q.arrows if b == v)
        return tuple(out)

    def all_indecomposables(self, shifts: Sequence[int]) -> List[IndecObject]:
        return [IndecObject(r, k) for k in shifts for r in self.roots]

    # -- representatives ---------------------------------------------------
    def indec_rep(self, root: Sequence[int]) -> Rep:
        r = tuple(root)
        if r not in self._root_set:
            raise RepError(f"{r} is not a positive root of {self.q.name}")
        with self._lock:
            rep = self._reps.get(r)
        if rep is not None:
            return rep
        rep = self._build_indec(r)
        with self._lock:
            self._reps.setdefault(r, rep)
        return self._reps[r]

    def _build_indec(self, r: Vector) -> Rep:
        # partial identities first: they give the textbook representative when it exists
        maps = []
        for a, b in self.q.arrows:
            maps.append([[Fraction(int(i == j)) for j in range(r[a])] for i in range(r[b])])
        cand = Rep(r, tuple(_freeze(m) for m in maps))
        if self.end_dim(cand) == 1:
            return cand
        rng = random.Random(zlib.crc32(repr((self.q.name, self.q.arrows, r, self._seed)).encode()))
        for _ in range(200):
            maps = [
                [[Fraction(rng.randint(-3, 3)) for _ in range(r[a])] for _ in range(r[b])]
                for a, b in self.q.arrows
            ]
            cand = Rep(r, tuple(_freeze(m) for m in maps))
            if self.end_dim(cand) == 1:
                return cand
        raise RepError(f"could not find an indecomposable of dimension {r}")

    # -- Hom between arbitrary representations ---------------------------
    def _hom_system(self, x: Rep, y: Rep) -> Tuple[List[List[Fraction]], List[Tuple[int, int, int]]]:
        """Linear system for intertwiners f = (f_i : x_i -> y_i)."""
        var: List[Tuple[int, int, int]] = []
        offs = {}
        for i in range(self.n):
            offs[i] = len(var)
            var += [(i, p, c) for p in range(y.dims[i]) for c in range(x.dims[i])]
        rows: List[List[Fraction]] = []
        nv = len(var)
        for k, (a, b) in enumerate(self.q.arrows):
            xa, ya = x.maps[k], y.maps[k]
            # (y_a f_a - f_b x_a)[p][c] = 0 for p < y_b, c < x_a
            for p in range(y.dims[b]):
                for c in range(x.dims[a]):
                    row = [Fraction(0)] * nv
                    for t in range(y.dims[a]):
                        if ya[p][t]:
                            row[offs[a] + t * x.dims[a] + c] += ya[p][t]
                    for t in range(x.dims[b]):
                        if xa[t][c]:
                            row[offs[b] + p * x.dims[b] + t] -= xa[t][c]
                    if any(row):
                        rows.append(row)
        return rows, var

    def hom_basis(self, x: Rep, y: Rep) -> List[List[la.Matrix]]:
        rows, var = self._hom_system(x, y)
        out = []
        for vec in la.nullspace(rows, len(var)):
            f = [la.zeros(y.dims[i], x.dims[i]) for i in range(self.n)]
            for v, (i, p, c) in zip(vec, var):
                f[i][p][c] = v
            out.append(f)
        return out

    def hom_dim_reps(self, x: Rep, y: Rep) -> int:
        rows, var = self._hom_system(x, y)
        return len(var) - la.rank(rows, len(var)) if rows else len(var)

    def end_dim(self, x: Rep) -> int:
        return self.hom_dim_reps(x, x)

    # -- Hom between indecomposables --------------------------------------
    def module_hom(self, a: Vector, b: Vector) -> int:
        key = (a, b)
        with self._lock:
            v = self._hom.get(key)
        if v is None:
            v = self.hom_dim_reps(self.indec_rep(a), self.indec_rep(b))
            with self._lock:
                self._hom[key] = v
        return v

    def module_ext(self, a: Vector, b: Vector) -> int:
        return self.module_hom(a, b) - euler_form(self.q, a, b)

    def hom_dims(self, x: IndecObject, y: IndecObject) -> GradedDims:
        d = x.shift - y.shift
        out: GradedDims = {}
        h = self.module_hom(x.root, y.root)
        e = self.module_ext(x.root, y.root)
        if h:
            out[d] = h
        if e:
            out[d + 1] = e
        return out

    def hom(self, x: IndecObject, y: IndecObject, d: int) -> int:
        return self.hom_dims(x, y).get(d, 0)

    def graded_hom_cy(self, x: IndecObject, y: IndecObject, N: int) -> GradedDims:
        if N < 2:
            raise RepError("N must be at least 2")
        out = dict(self.hom_dims(x, y))
        for d, v in self.hom_dims(y, x).items():
            out[N - d] = out.get(N - d, 0) + v
        return {d: v for d, v in sorted(out.items()) if v}

    def hom_cy(self, x: IndecObject, y: IndecObject, N: int, d: int) -> int:
        return self.hom(x, y, d) + self.hom(y, x, N - d)

    def chi_cy(self, x: Vector, y: Vector, N: int) -> int:
        """Euler form of the CY-N double on K-classes."""
        sign = -1 if N % 2 else 1
        return euler_form(self.q, x, y) + sign * euler_form(self.q, y, x)

    # -- decomposition ------------------------------------------------------
    def decompose(self, x: Rep) -> List[Vector]:
        """Roots of the indecomposable summands of x, with multiplicity (sorted)."""
        if not any(x.dims):
            return []
        cands = [r for r in self.roots if all(r[i] <= x.dims[i] for i in range(self.n))]
        hom_to_x = [self.hom_dim_reps(self.indec_rep(g), x) for g in cands]
        mat = [[Fraction(self.module_hom(g, b)) for b in cands] for g in cands]
        rhs = [Fraction(v) for v in hom_to_x]
        aug = [row + [r] for row, r in zip(mat, rhs)]
        red, piv = la.rref(aug, len(cands) + 1)
        if len(cands) in piv:
            raise RepError("inconsistent decomposition system")
        mult = [Fraction(0)] * len(cands)
        for row, p in zip(red, piv):
            mult[p] = row[len(cands)]
        out: List[Vector] = []
        for r, m in zip(cands, mult):
            if m.denominator != 1 or m < 0:
                raise RepError("non-integral multiplicity in decomposition")
            out += [r] * int(m)
        total = tuple(sum(r[i] for r in out) for i in range(self.n))
        if total != x.dims:
            raise RepError("decomposition does not account for the dimension vector")
        return sorted(out)

    # -- cones -------------------------------------------------------------
    def cone_onedim(self, x: IndecObject, y: IndecObject, d: int) -> List[IndecObject]:
        """Summands of Cone(x[-d] -> y) for the unique-up-to-scalar such map."""
        if self.hom(x, y, d) != 1:
            raise RepError(f"Hom^{d}({x.label()}, {y.label()}) is not one-dimensional")
        X, Y = self.indec_rep(x.root), self.indec_rep(y.root)
        k = y.shift
        if d == x.shift - y.shift:
            f = self.hom_basis(X, Y)[0]
            ker, coker = self._ker_coker(X, Y, f)
            return sorted(
                [IndecObject(r, k) for r in self.decompose(coker)]
                + [IndecObject(r, k + 1) for r in self.decompose(ker)]
            )
        # Ext^1 class: the middle term of 0 -> Y -> E -> X -> 0, placed at shift k
        return sorted(IndecObject(r, k) for r in self.decompose(self.extension(X, Y)))

    def extension(self, X: Rep, Y: Rep) -> Rep:
        """A non-split extension of X by Y, assuming dim Ext^1(X, Y) >= 1."""
        n = self.n
        # delta: (f_i) |-> (Y_a f_a - f_b X_a)_a ; its cokernel is Ext^1(X, Y)
        blocks = [(a, b, Y.dims[b], X.dims[a]) for a, b in self.q.arrows]
        target = [(k, p, c) for k, (a, b, rb, ca) in enumerate(blocks) for p in range(rb) for c in range(ca)]
        image = []
        for f in self._all_f(X, Y):
            vec = []
            for k, (a, b) in enumerate(self.q.arrows):
                m1 = _mm(Y.maps[k], f[a], Y.dims[b], Y.dims[a], X.dims[a])
                m2 = _mm(f[b], X.maps[k], Y.dims[b], X.dims[b], X.dims[a])
                for p in range(Y.dims[b]):
                    for c in range(X.dims[a]):
                        vec.append(m1[p][c] - m2[p][c])
            image.append(vec)
        r0 = la.rank(image, len(target)) if image else 0
        zeta = None
        for t in range(len(target)):
            e = [Fraction(int(t == u)) for u in range(len(target))]
            if la.rank(image + [e], len(target)) > r0:
                zeta = e
                break
        if zeta is None:
            raise RepError("Ext^1 vanishes, no non-split extension")
        maps = []
        pos = 0
        for k, (a, b) in enumerate(self.q.arrows):
            rb, ca = Y.dims[b], X.dims[a]
            z = [[zeta[pos + p * ca + c] for c in range(ca)] for p in range(rb)]
            pos += rb * ca
            rows = []
            for p in range(rb):
                rows.append(list(Y.maps[k][p]) + z[p])
            for p in range(X.dims[b]):
                rows.append([Fraction(0)] * Y.dims[a] + list(X.maps[k][p]))
            maps.append(_freeze(rows))
        dims = tuple(Y.dims[i] + X.dims[i] for i in range(n))
        return Rep(dims, tuple(maps))

    def _all_f(self, X: Rep, Y: Rep) -> List[List[la.Matrix]]:
        """Elementary matrix units spanning the domain of delta."""
        out = []
        for i in range(self.n):
            for p in range(Y.dims[i]):
                for c in range(X.dims[i]):
                    f = [la.zeros(Y.dims[j], X.dims[j]) for j in range(self.n)]
                    f[i][p][c] = Fraction(1)
                    out.append(f)
        return out

    def _ker_coker(self, X: Rep, Y: Rep, f: List[la.Matrix]) -> Tuple[Rep, Rep]:
        n = self.n
        kbasis: List[List[List[Fraction]]] = []
        cbasis: List[List[List[Fraction]]] = []
        for i in range(n):
            kbasis.append(la.nullspace(f[i], X.dims[i]) if Y.dims[i] else la.identity(X.dims[i]))
            img_cols = [[f[i][p][c] for p in range(Y.dims[i])] for c in range(X.dims[i])]
            img = la.rref(img_cols, Y.dims[i])[0] if img_cols and Y.dims[i] else []
            cbasis.append((img, la.complement_basis(img, Y.dims[i])))
        kmaps, cmaps = [], []
        for k, (a, b) in enumerate(self.q.arrows):
            # kernel: restrict X_a to ker f_a, express in basis of ker f_b
            km = []
            xa = la.to_q(X.maps[k])
            images = []
            for v in kbasis[a]:
                w = [sum(xa[p][c] * v[c] for c in range(X.dims[a])) for p in range(X.dims[b])]
                images.append(la.solve_in_basis(kbasis[b], w) if kbasis[b] else [])
            km = [[images[c][p] for c in range(len(kbasis[a]))] for p in range(len(kbasis[b]))]
            kmaps.append(_freeze(km))
            # cokernel: push Y_a through the quotient by the image
            ya = la.to_q(Y.maps[k])
            img_b, comp_b = cbasis[b]
            cm_cols = []
            for v in cbasis[a][1]:
                w = [sum(ya[p][c] * v[c] for c in range(Y.dims[a])) for p in range(Y.dims[b])]
                coords = la.solve_in_basis(img_b + comp_b, w) if (img_b or comp_b) else []
                cm_cols.append(coords[len(img_b):])
            cm = [[cm_cols[c][p] for c in range(len(cbasis[a][1]))] for p in range(len(cbasis[b][1]))]
            cmaps.append(_freeze(cm))
        ker = Rep(tuple(len(kbasis[i]) for i in range(n)), tuple(kmaps))
        coker = Rep(tuple(len(cbasis[i][1]) for i in range(n)), tuple(cmaps))
        return ker, coker

    # -- AR translate and cluster shift -------------------------------------
    def _apply(self, m: List[List[int]], v: Vector) -> Vector:
        return tuple(sum(m[i][j] * v[j] for j in range(self.n)) for i in range(self.n))

    def ar_translate(self, x: IndecObject) -> IndecObject:
        v = self._apply(self.phi, x.root)
        if all(c >= 0 for c in v):
            return IndecObject(v, x.shift)
        return IndecObject(tuple(-c for c in v), x.shift - 1)

    def ar_translate_inv(self, x: IndecObject) -> IndecObject:
        v = self._apply(self.phi_inv, x.root)
        if all(c >= 0 for c in v):
            return IndecObject(v, x.shift)
        return IndecObject(tuple(-c for c in v), x.shift + 1)

    def cluster_shift(self, x: IndecObject, m: int, power: int = 1) -> IndecObject:
        """Sigma_m = tau^{-1} [m - 1]; negative powers use tau [1 - m]."""
        for _ in range(power):
            x = self.ar_translate_inv(x).shifted(m - 1)
        for _ in range(-power):
            x = self.ar_translate(x.shifted(1 - m))
        return x

    # -- K-theory -----------------------------------------------------------
    def twist_matrix(self, cls: Vector, N: int) -> List[List[int]]:
        """Action of the spherical twist at an object of class ``cls`` on K."""
        n = self.n
        cols = []
        for j in range(n):
            e = tuple(int(i == j) for i in range(n))
            c = self.chi_cy(cls, e, N)
            cols.append([e[i] - c * cls[i] for i in range(n)])
        return [[cols[j][i] for j in range(n)] for i in range(n)]


_CATS: Dict[Tuple, DerivedCategory] = {}
_CATS_LOCK = threading.Lock()


def category(q: Quiver) -> DerivedCategory:
    q = parse_quiver(q)
    key = (q.name, q.arrows)
    with _CATS_LOCK:
        if key not in _CATS:
            _CATS[key] = DerivedCategory(q)
        return _CATS[key]
