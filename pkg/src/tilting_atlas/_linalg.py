"""Small exact linear algebra over Q (Fraction) and Z (Smith normal form).

Matrices are lists of rows.  Everything here is sized for representation
spaces of Dynkin quivers (a few dozen columns), so plain Gaussian elimination
is plenty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

Matrix = List[List[Fraction]]


def to_q(m: Sequence[Sequence[object]]) -> Matrix:
    return [[Fraction(v) for v in row] for row in m]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if not a:
        return []
    k = len(b) if inner is None else inner
    c = len(b[0]) if b else 0
    out = [[Fraction(0)] * c for _ in range(len(a))]
    for i, row in enumerate(a):
        oi = out[i]
        for t in range(k):
            v = row[t]
            if v:
                bt = b[t]
                for j in range(c):
                    if bt[j]:
                        oi[j] += v * bt[j]
    return out


def rref(m: Matrix, ncols: int) -> Tuple[Matrix, List[int]]:
    a = [list(r) for r in m]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        if pv != 1:
            a[r] = [v / pv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ai, ar = a[i], a[r]
                a[i] = [x - f * y for x, y in zip(ai, ar)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m: Matrix, ncols: int | None = None) -> int:
    if not m:
        return 0
    return len(rref(m, len(m[0]) if ncols is None else ncols)[1])


def nullspace(m: Matrix, ncols: int) -> List[List[Fraction]]:
    """Basis of {x : m x = 0}."""
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(x)
    return basis


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(m[i]) + identity(n)[i] for i in range(n)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def complement_basis(vectors: List[List[Fraction]], dim: int) -> List[List[Fraction]]:
    """Standard basis vectors completing span(vectors) to Q^dim."""
    cur = [list(v) for v in vectors]
    out = []
    r = rank(cur, dim) if cur else 0
    for i in range(dim):
        e = [Fraction(int(i == j)) for j in range(dim)]
        if rank(cur + [e], dim) > r:
            cur.append(e)
            out.append(e)
            r += 1
    return out


def solve_in_basis(basis: List[List[Fraction]], v: List[Fraction]) -> List[Fraction]:
    """Coordinates of v in the (independent) list ``basis``; raises if v is outside the span."""
    k = len(basis)
    dim = len(v)
    rows = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(dim)]
    red, piv = rref(rows, k + 1)
    if k in piv:
        raise ValueError("vector not in span")
    x = [Fraction(0)] * k
    for row, p in zip(red, piv):
        x[p] = row[k]
    return x


def int_det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = to_q(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return int(det)


def int_inverse(m: Sequence[Sequence[int]]) -> List[List[int]]:
    inv = inverse(to_q(m))
    out = [[int(v) for v in row] for row in inv]
    if any(v.denominator != 1 for row in inv for v in row):
        raise ValueError("matrix is not unimodular")
    return out


def smith_diagonal(entries: Dict[Tuple[int, int], int], nrows: int, ncols: int) -> List[int]:
    """Nonzero invariant factors of a sparse integer matrix, via exact elimination.

    The matrix is given as {(row, col): value}.  Rows are eliminated with a
    unit pivot whenever one exists (the common case for boundary matrices);
    otherwise the smallest entry is used and gcd steps are carried out
    explicitly.  The returned list is the diagonal d_1 | d_2 | ... of the SNF.
    """
    rows: Dict[int, Dict[int, int]] = {}
    for (i, j), v in entries.items():
        if v:
            rows.setdefault(i, {})[j] = v
    cols: Dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag: List[int] = []

    def _pivot():
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                if abs(v) == 1:
                    return i, j
                if best is None or abs(v) < abs(rows[best[0]][best[1]]):
                    best = (i, j)
        return best

    def _row_add(dst: int, src: int, f: int):
        rd, rs = rows[dst], rows[src]
        for j, v in rs.items():
            nv = rd.get(j, 0) + f * v
            if nv:
                if j not in rd:
                    cols.setdefault(j, set()).add(dst)
                rd[j] = nv
            elif j in rd:
                del rd[j]
                cols[j].discard(dst)
        if not rd:
            del rows[dst]

    def _col_add(dst: int, src: int, f: int):
        for i in list(cols.get(src, ())):
            r = rows[i]
            nv = r.get(dst, 0) + f * r[src]
            if nv:
                if dst not in r:
                    cols.setdefault(dst, set()).add(i)
                r[dst] = nv
            elif dst in r:
                del r[dst]
                cols[dst].discard(i)

    def _drop(i: int, j: int):
        for jj in rows[i]:
            cols[jj].discard(i)
        del rows[i]

    while rows:
        i, j = _pivot()
        while True:
            p = rows[i][j]
            changed = False
            for k in list(cols.get(j, ())):
                if k == i:
                    continue
                q, _ = divmod(rows[k][j], p)
                _row_add(k, i, -q)
                if k in rows and rows[k].get(j):
                    changed = True
            for jj in list(rows[i].keys()):
                if jj == j:
                    continue
                q, _ = divmod(rows[i][jj], p)
                _col_add(jj, j, -q)
                if rows[i].get(jj):
                    changed = True
            if not changed:
                break
            # move a smaller remainder into pivot position
            best = (abs(p), i, j)
            for k in cols.get(j, ()):
                v = rows[k][j]
                if abs(v) < best[0]:
                    best = (abs(v), k, j)
            for jj, v in rows[i].items():
                if abs(v) < best[0]:
                    best = (abs(v), i, jj)
            _, i, j = best
        diag.append(abs(rows[i][j]))
        _drop(i, j)
    # diagonal -> invariant factors
    return _normalise_diagonal(diag)


def _normalise_diagonal(d: List[int]) -> List[int]:
    from math import gcd

    d = [x for x in d if x]
    changed = True
    while changed:
        changed = False
        for a in range(len(d)):
            for b in range(a + 1, len(d)):
                g = gcd(d[a], d[b])
                if d[a] % g or d[b] % d[a]:
                    l = d[a] * d[b] // g
                    if (g, l) != (d[a], d[b]):
                        d[a], d[b] = g, l
                        changed = True
    return sorted(d)
