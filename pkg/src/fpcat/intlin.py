"""Integer linear algebra: Smith normal form with transforms, lattice kernels,
and quotients of free abelian groups.

Matrices are lists of lists of Python ints so that intermediate values never
overflow.  Everything here works on small dense matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a, b, inner=None):
    """Product of an m×k and a k×n matrix.  ``inner`` is only needed when k = 0."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    n = len(b[0]) if b else 0
    if k == 0:
        return zeros(len(a), n)
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def smith(a, m=None, n=None):
    """Smith normal form of an integer matrix.

    Returns ``(d, U, Uinv, V)`` where ``d`` lists the diagonal entries
    ``d_0 | d_1 | ...`` (length ``min(m, n)``, zeros last), ``U`` and ``V`` are
    unimodular and ``U a V`` is diagonal with entries ``d``.
    """
    m = len(a) if m is None else m
    n = (len(a[0]) if a else 0) if n is None else n
    D = [list(row) for row in a]
    U = identity(m)
    Ui = identity(m)
    V = identity(n)

    def row_add(dst, src, q):
        # row_dst += q * row_src ; Ui compensates with col_src -= q * col_dst
        if q == 0:
            return
        rd, rs = D[dst], D[src]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ud[j] += q * us[j]
        for row in Ui:
            if row[dst]:
                row[src] -= q * row[dst]

    def col_add(dst, src, q):
        if q == 0:
            return
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    def row_swap(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            row_swap(t, pi)
            col_swap(t, pj)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                x = D[i][t]
                if x:
                    row_add(i, t, -(x // p))
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                x = D[t][j]
                if x:
                    col_add(j, t, -(x // p))
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for row in Ui:
                row[t] = -row[t]
    diag = [D[i][i] for i in range(min(m, n))]
    return diag, U, Ui, V


def kernel_basis(a, n=None):
    """Columns spanning the integer kernel ``{x in Z^n : a x = 0}``."""
    m = len(a)
    n = (len(a[0]) if a else 0) if n is None else n
    d, _, _, V = smith(a, m, n)
    rank = sum(1 for x in d if x)
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


def solve(a, b, n=None):
    """An integer solution ``x`` of ``a x = b`` or None."""
    m = len(a)
    n = (len(a[0]) if a else 0) if n is None else n
    d, U, _, V = smith(a, m, n)
    c = matvec(U, b) if m else []
    y = [0] * n
    for i in range(m):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di:
                return None
            y[i] = c[i] // di
    return matvec(V, y) if n else []


def lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Quotient:
    """``Z^n / (diag(moduli) + span(relations))`` in invariant-factor coordinates.

    ``proj`` (r×n) sends ambient vectors to coordinates (row i read mod
    ``invariants[i]``); ``section`` (n×r) sends coordinate unit vectors to
    ambient representatives reduced modulo ``moduli``.
    """

    invariants: tuple
    proj: tuple
    section: tuple
    moduli: tuple

    def to_coords(self, v):
        return tuple(
            sum(x * y for x, y in zip(row, v)) % d
            for row, d in zip(self.proj, self.invariants)
        )

    def lift(self, c):
        n = len(self.moduli)
        out = [0] * n
        for k, x in enumerate(c):
            if x:
                for i in range(n):
                    out[i] += x * self.section[i][k]
        return [x % mod if mod else x for x, mod in zip(out, self.moduli)]


def quotient(moduli, relations=()):
    """Present ``Z^n / (diag(moduli) + span(relations))`` as a finite group.

    All moduli must be positive so the result is finite.
    """
    moduli = tuple(int(x) for x in moduli)
    n = len(moduli)
    if any(x <= 0 for x in moduli):
        raise ValueError("quotient requires positive moduli")
    cols = [[moduli[i] if i == j else 0 for i in range(n)] for j in range(n) if moduli[j] != 1]
    for rel in relations:
        rel = [x % mod for x, mod in zip(rel, moduli)]
        if any(rel):
            cols.append(rel)
    unit = [i for i in range(n) if moduli[i] == 1]
    # coordinates with modulus 1 carry nothing; add unit relations for them
    for i in unit:
        cols.append([1 if k == i else 0 for k in range(n)])
    if n == 0:
        return Quotient((), (), (), ())
    mat = transpose(cols, n) if cols else zeros(n, 0)
    d, U, Ui, _ = smith(mat, n, len(cols))
    d = d + [0] * (n - len(d))
    keep = [i for i in range(n) if d[i] != 1]
    if any(d[i] == 0 for i in keep):
        raise ValueError("quotient is infinite")
    inv = tuple(d[i] for i in keep)
    proj = tuple(tuple(x % d[i] for x in U[i]) for i in keep)
    section = tuple(
        tuple(Ui[r][i] % moduli[r] for i in keep) for r in range(n)
    )
    return Quotient(inv, proj, section, moduli)
