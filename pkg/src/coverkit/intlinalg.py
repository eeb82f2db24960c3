"""Exact linear algebra over Z and Q on small dense matrices.

Everything here works on plain lists of Python ints (or Fractions), so all
results are exact regardless of magnitude.  Matrices in this package are tiny
(a handful of rows and columns), so clarity beats asymptotics throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, prod


def _copy(mat):
    return [list(row) for row in mat]


def smith_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns min(m, n) nonnegative integers d_1 | d_2 | ... (zeros at the end
    for rank deficiency).  Transform matrices are not tracked.
    """
    a = _copy(mat)
    m = len(a)
    n = len(a[0]) if m else 0
    size = min(m, n)
    diag = []
    t = 0
    while t < size:
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        while True:
            pi, pj = pivot
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            if not dirty:
                for j in range(t + 1, n):
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
            pivot = (t, t)
            best = abs(p)
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(a[i][j])
                    if v and v < best:
                        best, pivot = v, (i, j)
        diag.append(abs(a[t][t]))
        t += 1
    diag += [0] * (size - len(diag))
    # Repair divisibility: diag(a, b) is equivalent to diag(gcd, lcm).
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            if diag[i] and diag[j] % diag[i] == 0:
                continue
            g = gcd(diag[i], diag[j])
            l = diag[i] * diag[j] // g if g else 0
            diag[i], diag[j] = g, l
    return diag


def lattice_row_basis(rows: list[list[int]]) -> list[list[int]]:
    """A basis (as rows) of the lattice spanned by integer row vectors."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    n = len(a[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            done = True
            for i in nz:
                if i == i0:
                    continue
                q = a[i][c] // a[i0][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[i0])]
                if a[i][c]:
                    done = False
            if done:
                a[r], a[i0] = a[i0], a[r]
                if a[r][c] < 0:
                    a[r] = [-x for x in a[r]]
                r += 1
                break
        a = a[:r] + [row for row in a[r:] if any(row)]
    return a[:r]


def rational_rank(mat) -> int:
    """Rank over Q, by Gaussian elimination with exact fractions."""
    a = [[Fraction(x) for x in row] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    for c in range(n):
        pivot = next((i for i in range(rank, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = 1 / a[rank][c]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(m):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def solve_exact(a, b) -> list[Fraction] | None:
    """Solve the square system a x = b over Q; None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a, b)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return None
        m[c], m[pivot] = m[pivot], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def subgroup_order(moduli: list[int], gens: list[list[int]]) -> int:
    """Order of the subgroup of Z_{d_1} x ... x Z_{d_s} generated by gens.

    The subgroup is L/D where D = d_1 Z x ... x d_s Z and L is the lattice
    spanned by the generators together with D; its order is det(D)/det(L).
    """
    s = len(moduli)
    if s == 0:
        return 1
    stacked = [list(g) for g in gens]
    for j, d in enumerate(moduli):
        stacked.append([d if k == j else 0 for k in range(s)])
    diag = smith_diagonal(stacked)
    return prod(moduli) // prod(d for d in diag if d)


def quotient_invariants(moduli: list[int], gens: list[list[int]]) -> list[int]:
    """Invariant factors (each > 1) of the subgroup generated by gens.

    Same subgroup as in subgroup_order: presented as L/D, with presentation
    matrix expressing a basis of D in a basis of L.
    """
    s = len(moduli)
    if s == 0:
        return []
    stacked = [list(g) for g in gens]
    for j, d in enumerate(moduli):
        stacked.append([d if k == j else 0 for k in range(s)])
    basis = lattice_row_basis(stacked)
    if len(basis) != s:
        raise ValueError("generator lattice is not full rank")
    bt = [[basis[i][j] for i in range(s)] for j in range(s)]
    pres = []
    for j, d in enumerate(moduli):
        target = [d if k == j else 0 for k in range(s)]
        coeffs = solve_exact(bt, target)
        assert coeffs is not None
        row = []
        for x in coeffs:
            if x.denominator != 1:
                raise AssertionError("relation lattice not contained in span")
            row.append(x.numerator)
        pres.append(row)
    return [d for d in smith_diagonal(pres) if d > 1]
