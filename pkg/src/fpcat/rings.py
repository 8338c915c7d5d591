"""Finite unital rings given by addition and multiplication tables."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from . import intlin
from .config import settings
from .errors import AxiomError, SizeLimitError, UnsupportedRingError


@dataclass(frozen=True)
class RepresentationBasis:
    """Test modules for extensional checks, per side, as ``(label, relations)`` pairs.

    Relations follow the presentation convention of :func:`fpcat.modules.make_module`.
    """

    right: tuple
    left: tuple

    def swapped(self):
        return RepresentationBasis(self.left, self.right)

    def to_json(self):
        return {
            "right": [{"label": l, "relations": [list(r) for r in rel]} for l, rel in self.right],
            "left": [{"label": l, "relations": [list(r) for r in rel]} for l, rel in self.left],
        }

    @classmethod
    def from_json(cls, data):
        def side(items):
            return tuple((it["label"], tuple(tuple(r) for r in it["relations"])) for it in items)

        return cls(side(data["right"]), side(data["left"]))


@dataclass(frozen=True, eq=False)
class FiniteRing:
    label: str
    add_table: tuple
    mul_table: tuple
    zero: int
    one: int
    basis: Optional[RepresentationBasis] = field(default=None, repr=False)

    @property
    def size(self):
        return len(self.add_table)

    @property
    def elements(self):
        return range(self.size)

    def __eq__(self, other):
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (
            self.add_table == other.add_table
            and self.mul_table == other.mul_table
            and self.zero == other.zero
            and self.one == other.one
        )

    def __hash__(self):
        return hash((self.add_table, self.mul_table))

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    @cached_property
    def neg_table(self):
        out = [None] * self.size
        for a in self.elements:
            for b in self.elements:
                if self.add_table[a][b] == self.zero:
                    out[a] = b
                    break
        return tuple(out)

    def neg(self, a):
        return self.neg_table[a]

    @cached_property
    def is_commutative(self):
        return all(
            self.mul_table[a][b] == self.mul_table[b][a]
            for a in self.elements
            for b in self.elements
        )

    # additive structure in invariant-factor coordinates

    @cached_property
    def _additive(self):
        return _additive_structure(self.add_table, self.zero)

    @property
    def additive_invariants(self):
        """Invariant factors ``e_1 | ... | e_T`` of ``(R, +)``."""
        return self._additive[0]

    @property
    def additive_basis(self):
        """Elements ``b_t`` with coordinates the unit vectors."""
        return self._additive[1]

    def coords(self, a):
        return self._additive[2][a]

    def from_coords(self, c):
        inv = self.additive_invariants
        return self._additive[3][tuple(int(x) % d for x, d in zip(c, inv))]

    @cached_property
    def rmul_matrices(self):
        """``coords(a * s) = rmul_matrices[s] @ coords(a)``."""
        return tuple(self._mult_matrix(s, right=True) for s in self.elements)

    @cached_property
    def lmul_matrices(self):
        """``coords(s * a) = lmul_matrices[s] @ coords(a)``."""
        return tuple(self._mult_matrix(s, right=False) for s in self.elements)

    def _mult_matrix(self, s, right):
        cols = []
        for b in self.additive_basis:
            prod = self.mul_table[b][s] if right else self.mul_table[s][b]
            cols.append(self.coords(prod))
        T = len(self.additive_basis)
        return tuple(tuple(cols[t][i] for t in range(T)) for i in range(T))

    @cached_property
    def opposite(self):
        return opposite(self)

    def to_json(self):
        data = {
            "label": self.label,
            "size": self.size,
            "add": [list(r) for r in self.add_table],
            "mul": [list(r) for r in self.mul_table],
            "zero": self.zero,
            "one": self.one,
        }
        if self.basis is not None:
            data["basis"] = self.basis.to_json()
        return data

    def __str__(self):
        return self.label


def _additive_structure(add, zero):
    """Invariant-factor coordinates of a finite abelian group given by its table."""
    n = len(add)
    gens = []
    span = {zero: ()}
    rels = []
    orders = []
    for cand in range(n):
        if cand in span:
            continue
        t = len(gens)
        gens.append(cand)
        base = {e: v + (0,) for e, v in span.items()}
        for r in rels:
            r.append(0)
        new = dict(base)
        x, m = cand, 1
        while x not in base:
            for e, v in base.items():
                new[add[e][x]] = v[:t] + (m,)
            x = add[x][cand]
            m += 1
        rel = [-c for c in base[x]]
        rel[t] += m
        rels.append(rel)
        span = new
        order, y = 1, cand
        while y != zero:
            y = add[y][cand]
            order += 1
        orders.append(order)
    q = intlin.quotient(orders, rels)
    coords = [None] * n
    for e, v in span.items():
        coords[e] = q.to_coords(v)

    def combine(vec):
        acc = zero
        for g, c in zip(gens, vec):
            for _ in range(c):
                acc = add[acc][g]
        return acc

    basis = tuple(combine(q.lift(tuple(1 if i == t else 0 for i in range(len(q.invariants)))))
                  for t in range(len(q.invariants)))
    inverse = {c: e for e, c in enumerate(coords)}
    return q.invariants, basis, tuple(coords), inverse


def _validate(add, mul, zero, one):
    n = len(add)
    rng = range(n)
    if len(mul) != n or any(len(r) != n for r in add) or any(len(r) != n for r in mul):
        raise AxiomError("shape", (n,))
    for a in rng:
        for b in rng:
            if not (0 <= add[a][b] < n and 0 <= mul[a][b] < n):
                raise AxiomError("closure", (a, b))
    for a in rng:
        if add[zero][a] != a or add[a][zero] != a:
            raise AxiomError("additive identity", (a,))
        if not any(add[a][b] == zero for b in rng):
            raise AxiomError("additive inverse", (a,))
        if mul[one][a] != a or mul[a][one] != a:
            raise AxiomError("multiplicative identity", (a,))
    for a in rng:
        for b in rng:
            if add[a][b] != add[b][a]:
                raise AxiomError("additive commutativity", (a, b))
    for a, b, c in itertools.product(rng, repeat=3):
        if add[add[a][b]][c] != add[a][add[b][c]]:
            raise AxiomError("additive associativity", (a, b, c))
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            raise AxiomError("associativity", (a, b, c))
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            raise AxiomError("left distributivity", (a, b, c))
        if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
            raise AxiomError("right distributivity", (a, b, c))


def validate(ring):
    """Re-check every ring axiom of ``ring``; raises :class:`AxiomError`."""
    _validate(ring.add_table, ring.mul_table, ring.zero, ring.one)
    return ring


def make_table_ring(add_table, mul_table, zero, one, label="R", basis=None):
    add = tuple(tuple(int(x) for x in row) for row in add_table)
    mul = tuple(tuple(int(x) for x in row) for row in mul_table)
    n = len(add)
    if n < 1 or n > settings().max_ring_size:
        raise SizeLimitError(f"ring size {n} outside 1..{settings().max_ring_size}",
                             bound=settings().max_ring_size, predicted=n)
    _validate(add, mul, int(zero), int(one))
    return FiniteRing(label, add, mul, int(zero), int(one), basis)


def opposite(ring):
    """Same elements and addition, multiplication reversed.  Involutive on objects."""
    cached = ring.__dict__.get("opposite")
    if cached is not None:
        return cached
    n = ring.size
    mul = tuple(tuple(ring.mul_table[b][a] for b in range(n)) for a in range(n))
    label = ring.label[:-3] if ring.label.endswith("^op") else ring.label + "^op"
    basis = ring.basis.swapped() if ring.basis is not None else None
    op = FiniteRing(label, ring.add_table, mul, ring.zero, ring.one, basis)
    op.__dict__["opposite"] = ring
    ring.__dict__["opposite"] = op
    return op


def _prime_powers(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _zmod_basis(n):
    mods = []
    for p, k in _prime_powers(n):
        mods += [p ** j for j in range(1, k + 1)]
    if n not in mods and n > 1:
        mods.append(n)
    side = tuple((f"Z/{q}", () if q == n else ((q % n,),)) for q in sorted(mods))
    return RepresentationBasis(side, side)


def make_zmod(n):
    if n < 1 or n > settings().max_ring_size:
        raise SizeLimitError(f"Z/n requires 1 <= n <= {settings().max_ring_size}, got {n}",
                             bound=settings().max_ring_size, predicted=n)
    add = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    mul = tuple(tuple((a * b) % n for b in range(n)) for a in range(n))
    return FiniteRing(f"Z/{n}", add, mul, 0, 1 % n, _zmod_basis(n))


def make_dual_numbers_f2():
    """``F2[x]/(x^2)``; element ``a + b x`` has index ``a + 2 b``."""
    def split(i):
        return i & 1, i >> 1

    add = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
    mul = []
    for i in range(4):
        row = []
        for j in range(4):
            a, b = split(i)
            c, d = split(j)
            row.append((a * c) % 2 + 2 * ((a * d + b * c) % 2))
        mul.append(tuple(row))
    side = (("k", ((2,),)), ("R", ()))
    return make_table_ring(add, mul, 0, 1, "F2[x]/(x^2)", RepresentationBasis(side, side))


def make_upper_triangular_f2():
    """Upper-triangular 2x2 matrices over F2.

    ``[[a, b], [0, c]]`` has index ``a + 2 b + 4 c``; so ``e11 = 1``,
    ``e12 = 2``, ``e22 = 4`` and ``1 = 5``.
    """
    def mat(i):
        return (i & 1, (i >> 1) & 1, (i >> 2) & 1)

    def idx(a, b, c):
        return (a % 2) + 2 * (b % 2) + 4 * (c % 2)

    add = tuple(
        tuple(idx(*(x + y for x, y in zip(mat(i), mat(j)))) for j in range(8)) for i in range(8)
    )
    mul = []
    for i in range(8):
        a, b, c = mat(i)
        row = []
        for j in range(8):
            d, e, f = mat(j)
            row.append(idx(a * d, a * e + b * f, c * f))
        mul.append(tuple(row))
    right = (
        ("e22.T", ((1,),)),
        ("S1", ((4,), (2,))),
        ("e11.T", ((4,),)),
    )
    left = (
        ("T.e11", ((4,),)),
        ("T.e22", ((1,),)),
        ("S2'", ((1,), (2,))),
    )
    return make_table_ring(add, mul, 0, 5, "T2(F2)", RepresentationBasis(right, left))


def ring_from_json(data):
    basis = RepresentationBasis.from_json(data["basis"]) if data.get("basis") else None
    ring = make_table_ring(data["add"], data["mul"], data["zero"], data["one"],
                           data.get("label", "R"), basis)
    if "size" in data and data["size"] != ring.size:
        raise AxiomError("shape", (data["size"], ring.size))
    return ring


def load_ring(path):
    with open(path) as fh:
        return ring_from_json(json.load(fh))


_BUILTIN = {
    "F2[x]/(x^2)": make_dual_numbers_f2,
    "F2x2": make_dual_numbers_f2,
    "T2F2": make_upper_triangular_f2,
    "T2(F2)": make_upper_triangular_f2,
}
_cache = {}


def builtin_ring(name):
    """Rings known by name: ``Z<n>`` / ``Z/<n>``, ``F2x2``, ``T2F2``."""
    if name in _cache:
        return _cache[name]
    key = name.replace("/", "")
    if key.startswith("Z") and key[1:].isdigit():
        ring = make_zmod(int(key[1:]))
    elif name in _BUILTIN:
        ring = _BUILTIN[name]()
    else:
        raise UnsupportedRingError(f"unknown ring {name!r}")
    _cache[name] = ring
    return ring


SUPPORTED_RINGS = ("Z4", "Z6", "F2x2", "T2F2")
