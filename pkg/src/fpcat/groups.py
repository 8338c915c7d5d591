"""Finite abelian groups in invariant-factor coordinates and their homomorphisms.

A group is ``Z/d_1 + ... + Z/d_r`` with ``d_1 | d_2 | ... | d_r`` and every
``d_i >= 2``.  Elements are coordinate tuples.  A homomorphism is an integer
matrix whose columns are the images of the coordinate unit vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Any, Callable, Optional, Sequence

from . import intlin
from .errors import ConsistencyError


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple
    decode: Optional[Callable[[tuple], Any]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariant_factors)
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisor chain: {inv}")
        if any(d < 2 for d in inv):
            raise ValueError(f"invariant factors must be >= 2: {inv}")
        object.__setattr__(self, "invariant_factors", inv)

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def order(self):
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self):
        return not self.invariant_factors

    @property
    def zero(self):
        return (0,) * self.rank

    def normalize(self, c):
        return tuple(int(x) % d for x, d in zip(c, self.invariant_factors))

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a):
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def scale(self, k, a):
        return tuple((k * x) % d for x, d in zip(a, self.invariant_factors))

    def elements(self):
        """All elements in lexicographic coordinate order."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def unit(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def element_order(self, a):
        out = 1
        for x, d in zip(a, self.invariant_factors):
            out = intlin.lcm(out, d // gcd(d, x))
        return out

    def with_decode(self, decode):
        return FiniteAbelianGroup(self.invariant_factors, decode)

    def is_isomorphic(self, other):
        return self.invariant_factors == other.invariant_factors

    def to_json(self):
        return {"invariant_factors": list(self.invariant_factors)}

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


TRIVIAL = FiniteAbelianGroup(())


def _reduce_matrix(mat, rows_mod, ncols):
    return tuple(tuple(int(x) % d for x in row) for row, d in zip(mat, rows_mod)) if rows_mod else ()


class _Solver:
    """Reusable solver for ``M x = y`` in the target group of a homomorphism."""

    def __init__(self, h):
        a = h.source.invariant_factors
        b = h.target.invariant_factors
        self.n = len(a)
        self.src = h.source
        big = [list(h.matrix[i]) + [b[i] if j == i else 0 for j in range(len(b))] for i in range(len(b))]
        self.m = len(b)
        self.width = self.n + self.m
        self.d, self.U, _, self.V = intlin.smith(big, self.m, self.width)

    def __call__(self, y):
        c = intlin.matvec(self.U, list(y)) if self.m else []
        sol = [0] * self.width
        for i in range(self.m):
            di = self.d[i] if i < len(self.d) else 0
            if di == 0:
                if c[i]:
                    return None
            elif c[i] % di:
                return None
            else:
                sol[i] = c[i] // di
        x = intlin.matvec(self.V, sol)[: self.n] if self.width else []
        return self.src.normalize(x)


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    matrix: tuple

    def __post_init__(self):
        mat = _reduce_matrix(self.matrix, self.target.invariant_factors, self.source.rank)
        if self.target.rank and any(len(r) != self.source.rank for r in mat):
            raise ValueError("matrix shape does not match source rank")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_images(cls, source, target, images):
        """Build from the images of the coordinate unit vectors of ``source``."""
        cols = [target.normalize(img) for img in images]
        mat = tuple(tuple(col[i] for col in cols) for i in range(target.rank))
        return cls(source, target, mat)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, tuple((0,) * source.rank for _ in range(target.rank)))

    @classmethod
    def identity(cls, group):
        return cls(group, group, tuple(group.unit(i) for i in range(group.rank)))

    def check(self):
        """Raise if the matrix does not define a homomorphism."""
        for j, a in enumerate(self.source.invariant_factors):
            col = tuple(a * self.matrix[i][j] for i in range(self.target.rank))
            if any(self.target.normalize(col)):
                raise ConsistencyError(f"column {j} is not killed by its order {a}")
        return self

    def __call__(self, x):
        return self.target.normalize(
            sum(r * v for r, v in zip(row, x)) for row in self.matrix
        ) if self.target.rank else ()

    def column(self, j):
        return tuple(row[j] for row in self.matrix)

    def compose(self, other):
        """``self ∘ other``."""
        if other.target.invariant_factors != self.source.invariant_factors:
            raise ValueError("non-composable group homomorphisms")
        inner, ncols = self.source.rank, other.source.rank
        mat = tuple(
            tuple(sum(row[k] * other.matrix[k][j] for k in range(inner)) for j in range(ncols))
            for row in self.matrix
        )
        return GroupHom(other.source, self.target, mat)

    def __add__(self, other):
        mat = tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        return GroupHom(self.source, self.target, mat)

    def __neg__(self):
        return GroupHom(self.source, self.target, tuple(tuple(-x for x in r) for r in self.matrix))

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return all(x == 0 for r in self.matrix for x in r)

    def equals(self, other):
        return (
            self.source.invariant_factors == other.source.invariant_factors
            and self.target.invariant_factors == other.target.invariant_factors
            and self.matrix == other.matrix
        )

    @cached_property
    def _solver(self):
        return _Solver(self)

    def preimage(self, y):
        """Some ``x`` with ``self(x) == y``, or None."""
        return self._solver(self.target.normalize(y))

    @cached_property
    def kernel(self):
        """``(K, inclusion)``."""
        a = self.source.invariant_factors
        b = self.target.invariant_factors
        n, m = len(a), len(b)
        if n == 0:
            return TRIVIAL, GroupHom.zero(TRIVIAL, self.source)
        big = [list(self.matrix[i]) + [b[i] if j == i else 0 for j in range(m)] for i in range(m)]
        gens = intlin.kernel_basis(big, n + m) if m else [
            [1 if i == j else 0 for i in range(n)] for j in range(n)
        ]
        gens = [self.source.normalize(g[:n]) for g in gens]
        return subgroup(self.source, gens)

    @cached_property
    def image(self):
        """``(I, inclusion into target)``."""
        cols = [self.column(j) for j in range(self.source.rank)]
        return subgroup(self.target, cols)

    @cached_property
    def cokernel(self):
        """``(C, projection target -> C, section matrix C -> target)``."""
        cols = [self.column(j) for j in range(self.source.rank)]
        q = intlin.quotient(self.target.invariant_factors, cols)
        c = FiniteAbelianGroup(q.invariants)
        proj = GroupHom(self.target, c, q.proj)
        sec = GroupHom(c, self.target, q.section)
        return c, proj, sec

    def is_injective(self):
        return self.kernel[0].is_trivial

    def is_surjective(self):
        return self.cokernel[0].is_trivial

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()


def subgroup(group, gens):
    """The subgroup generated by ``gens`` as ``(S, inclusion)``."""
    gens = [group.normalize(g) for g in gens]
    seen, uniq = set(), []
    for g in gens:
        if any(g) and g not in seen:
            seen.add(g)
            uniq.append(g)
    if not uniq:
        return TRIVIAL, GroupHom.zero(TRIVIAL, group)
    a = group.invariant_factors
    p, r = len(uniq), len(a)
    orders = [group.element_order(g) for g in uniq]
    big = [[uniq[j][i] for j in range(p)] + [a[i] if k == i else 0 for k in range(r)] for i in range(r)]
    rels = [v[:p] for v in intlin.kernel_basis(big, p + r)]
    q = intlin.quotient(orders, rels)
    s = FiniteAbelianGroup(q.invariants)
    incl_cols = []
    for k in range(s.rank):
        vec = [0] * r
        for j in range(p):
            coef = q.section[j][k]
            if coef:
                for i in range(r):
                    vec[i] += coef * uniq[j][i]
        incl_cols.append(vec)
    return s, GroupHom.from_images(s, group, incl_cols)


def lift_through(incl, h):
    """Factor ``h`` through the injective ``incl``: returns ``g`` with ``incl ∘ g = h``."""
    images = []
    for j in range(h.source.rank):
        x = incl.preimage(h.column(j))
        if x is None:
            raise ConsistencyError("homomorphism does not factor through the given inclusion")
        images.append(x)
    return GroupHom.from_images(h.source, incl.source, images)


def direct_sum(groups):
    """Coordinates of ``G_1 + ... + G_n`` are presented by a fresh invariant-factor
    normal form; returns ``(S, injections, projections)``."""
    moduli = [d for g in groups for d in g.invariant_factors]
    q = intlin.quotient(moduli or (), ())
    s = FiniteAbelianGroup(q.invariants)
    injections, projections = [], []
    offset = 0
    for g in groups:
        inj_cols = []
        for k in range(g.rank):
            vec = [0] * len(moduli)
            vec[offset + k] = 1
            inj_cols.append(q.to_coords(vec))
        injections.append(GroupHom.from_images(g, s, inj_cols))
        rows = tuple(
            tuple(q.section[offset + k][c] for c in range(s.rank)) for k in range(g.rank)
        )
        projections.append(GroupHom(s, g, rows))
        offset += g.rank
    return s, injections, projections


def invariants_from_torsion(order, torsion_count):
    """Invariant factors of a finite abelian group from ``m -> |{g : m g = 0}|``.

    Used by brute-force oracles that only know how to count.
    """
    n = order
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    factors = []
    for p in primes:
        logs = [0]
        k = 1
        while True:
            c = torsion_count(p ** k)
            e = 0
            while c > 1:
                c //= p
                e += 1
            logs.append(e)
            if p ** e == _ppart(order, p):
                break
            k += 1
        # number of cyclic factors of order >= p^k is logs[k] - logs[k-1]
        counts = [logs[k] - logs[k - 1] for k in range(1, len(logs))] + [0]
        cyc = []
        for k in range(1, len(counts)):
            cyc += [p ** k] * (counts[k - 1] - counts[k])
        factors.append(sorted(cyc, reverse=True))
    width = max((len(f) for f in factors), default=0)
    out = []
    for i in range(width):
        d = 1
        for f in factors:
            if i < len(f):
                d *= f[i]
        out.append(d)
    return tuple(sorted(out))


def _ppart(n, p):
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def brute_invariants(elements: Sequence, add, zero):
    """Invariant factors of the finite group on ``elements`` by counting torsion."""
    elements = list(elements)

    def torsion(m):
        count = 0
        for g in elements:
            acc = zero
            for _ in range(m):
                acc = add(acc, g)
            if acc == zero:
                count += 1
        return count

    return invariants_from_torsion(len(elements), torsion)
