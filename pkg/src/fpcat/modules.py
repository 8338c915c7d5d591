"""Finitely presented one-sided modules over finite rings.

A module with ``k`` generators and relation matrix ``rel`` (``m`` rows) is
``R^k / N`` where ``N`` is spanned by the rows and all their multiples on the
acting side.  Right modules over ``R`` use the relation ``sum_j g_j rel[i][j] = 0``;
left modules use ``sum_j rel[i][j] g_j = 0`` and are handled internally as right
modules over the opposite ring, so there is a single code path.

Internally an element is a coordinate tuple of the additive group of the
module in invariant-factor form.  Ring-element vectors of length ``k`` are
the user-facing encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional

from . import intlin
from .config import settings
from .errors import (BoundExceededError, ConsistencyError, MorphismError, SideMismatchError, SizeLimitError,
                     UnsupportedRingError)
from .groups import FiniteAbelianGroup, GroupHom, brute_invariants, direct_sum as group_sum, subgroup
from .rings import FiniteRing

RIGHT = "right"
LEFT = "left"
SIDES = (RIGHT, LEFT)


def other_side(side):
    return LEFT if side == RIGHT else RIGHT


@dataclass(frozen=True, eq=False)
class FpModule:
    ring: FiniteRing
    side: str
    gens: int
    relations: tuple
    label: str = field(default="", compare=False)

    @cached_property
    def acting(self):
        """The ring acting on the right: ``R`` for right modules, ``R^op`` for left."""
        return self.ring if self.side == RIGHT else self.ring.opposite

    @cached_property
    def _ambient_moduli(self):
        return tuple(self.acting.additive_invariants) * self.gens

    @cached_property
    def _quotient(self):
        S = self.acting
        T = len(S.additive_basis)
        rels = []
        for row in self.relations:
            for b in S.additive_basis:
                vec = []
                for r in row:
                    vec.extend(S.coords(S.mul(r, b)))
                rels.append(vec)
        del T
        return intlin.quotient(self._ambient_moduli, rels)

    @cached_property
    def group(self):
        return FiniteAbelianGroup(self._quotient.invariants)

    @property
    def size(self):
        return self.group.order

    @property
    def is_zero(self):
        return self.group.is_trivial

    def from_vector(self, vec):
        """Coordinates of the element ``sum_j g_j v_j``."""
        if len(vec) != self.gens:
            raise ValueError(f"expected a vector of length {self.gens}, got {len(vec)}")
        S = self.acting
        amb = []
        for r in vec:
            amb.extend(S.coords(int(r)))
        return self._quotient.to_coords(amb)

    def some_vector(self, c):
        """A (non-canonical) ring-element vector representing coordinates ``c``."""
        S = self.acting
        T = len(S.additive_basis)
        amb = self._quotient.lift(c)
        return tuple(S.from_coords(amb[j * T:(j + 1) * T]) for j in range(self.gens))

    def generator(self, j):
        return self.from_vector(tuple(self.acting.one if i == j else self.acting.zero
                                      for i in range(self.gens)))

    def act(self, s):
        """Right action of the acting-ring element ``s`` as a group endomorphism."""
        cache = self.__dict__.setdefault("_act_cache", {})
        hom = cache.get(s)
        if hom is None:
            S = self.acting
            T = len(S.additive_basis)
            rm = S.rmul_matrices[s]
            cols = []
            for c in range(self.group.rank):
                amb = self._quotient.lift(self.group.unit(c))
                out = []
                for j in range(self.gens):
                    blk = amb[j * T:(j + 1) * T]
                    out.extend(sum(rm[i][t] * blk[t] for t in range(T)) for i in range(T))
                cols.append(self._quotient.to_coords(out))
            hom = GroupHom.from_images(self.group, self.group, cols)
            cache[s] = hom
        return hom

    def mul(self, c, s):
        return self.act(s)(c)

    @cached_property
    def _lexmin_data(self):
        """Per generator position, the reachable shifts with witnesses."""
        S = self.acting
        T = len(S.additive_basis)
        amb_q = intlin.quotient(self._ambient_moduli)
        amb = FiniteAbelianGroup(amb_q.invariants)
        gens = []
        for row in self.relations:
            for b in S.additive_basis:
                vec = []
                for r in row:
                    vec.extend(S.coords(S.mul(r, b)))
                gens.append(amb_q.to_coords(vec))
        L, incl = subgroup(amb, gens)
        data = []
        for j in range(self.gens):
            prefix = intlin.quotient(self._ambient_moduli[: j * T])
            pg = FiniteAbelianGroup(prefix.invariants)
            cols = []
            for c in range(L.rank):
                v = amb_q.lift(incl(L.unit(c)))
                cols.append(prefix.to_coords(v[: j * T]))
            to_prefix = GroupHom.from_images(L, pg, cols)
            Lj, inc_j = to_prefix.kernel
            shifts = {}
            for x in Lj.elements():
                v = amb_q.lift(incl(inc_j(x)))
                r = S.from_coords(v[j * T:(j + 1) * T])
                if r not in shifts:
                    shifts[r] = v
            data.append(shifts)
        return amb_q, data

    def canonical_vector(self, c):
        """The lexicographically minimal ring-element vector in the coset ``c``."""
        S = self.acting
        T = len(S.additive_basis)
        amb_q, data = self._lexmin_data
        v = list(self._quotient.lift(c))
        moduli = self._ambient_moduli
        out = []
        for j in range(self.gens):
            cur = v[j * T:(j + 1) * T]
            best, best_shift = None, None
            for r, shift in data[j].items():
                cand = S.from_coords([a + b for a, b in zip(cur, shift[j * T:(j + 1) * T])])
                if best is None or cand < best:
                    best, best_shift = cand, shift
            v = [(a + b) % m for a, b, m in zip(v, best_shift, moduli)]
            out.append(best)
        return tuple(out)

    @cached_property
    def elements(self):
        """Canonical representatives of all elements, sorted lexicographically."""
        if self.size > settings().max_module_size:
            raise SizeLimitError("module too large to enumerate", settings().max_module_size, self.size)
        return sorted(self.canonical_vector(c) for c in self.group.elements())

    def to_json(self):
        return {
            "ring_label": self.ring.label,
            "side": self.side,
            "gens": self.gens,
            "relations": [list(r) for r in self.relations],
        }

    def __str__(self):
        return self.label or f"coker[{self.gens}; {len(self.relations)} rel]"

    __repr__ = __str__


def make_module(ring, side, relations, gens=None, label="", check_size=True):
    """Module presented by ``relations`` (an ``m x k`` matrix of ring indices).

    ``check_size=False`` is for auxiliary presentations built internally, which
    are only handled through their additive groups and never enumerated.
    """
    side = side.lower()
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    rels = tuple(tuple(int(x) for x in row) for row in relations)
    if gens is None:
        if not rels:
            raise ValueError("gens is required when there are no relations")
        gens = len(rels[0])
    if any(len(r) != gens for r in rels):
        raise ValueError("relation rows must all have length gens")
    if any(not 0 <= x < ring.size for r in rels for x in r):
        raise ValueError("relation entries must be ring element indices")
    mod = FpModule(ring, side, gens, rels, label)
    if check_size and mod.size > settings().max_module_size:
        raise SizeLimitError(
            f"module has {mod.size} elements, bound is {settings().max_module_size}",
            bound=settings().max_module_size, predicted=mod.size)
    return mod


def free_module(ring, side, rank, label=None, check_size=False):
    return make_module(ring, side, (), gens=rank, label=label if label is not None else f"R^{rank}",
                       check_size=check_size)


def zero_module(ring, side):
    return make_module(ring, side, (), gens=0, label="0")


def check_compatible(a, b):
    if a.acting != b.acting:
        raise SideMismatchError(f"modules over different rings or sides: {a} ({a.side}) vs {b} ({b.side})")


def check_opposite(a, b):
    if a.acting.opposite != b.acting:
        raise SideMismatchError(f"{a} and {b} are not modules on opposite sides of one ring")


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    source: FpModule
    target: FpModule
    images: tuple

    @cached_property
    def matrix(self):
        """The underlying homomorphism of additive groups."""
        M, N = self.source, self.target
        S = M.acting
        T = len(S.additive_basis)
        w = {}
        for j in range(M.gens):
            for t, b in enumerate(S.additive_basis):
                w[j, t] = N.act(b)(self.images[j])
        cols = []
        for c in range(M.group.rank):
            amb = M._quotient.lift(M.group.unit(c))
            acc = [0] * N.group.rank
            for j in range(M.gens):
                for t in range(T):
                    k = amb[j * T + t]
                    if k:
                        acc = [x + k * y for x, y in zip(acc, w[j, t])]
            cols.append(acc)
        return GroupHom.from_images(M.group, N.group, cols)

    def __call__(self, c):
        return self.matrix(c)

    def compose(self, other):
        """``self ∘ other``."""
        if other.target is not self.source:
            check_compatible(other.target, self.source)
            if other.target.group.invariant_factors != self.source.group.invariant_factors:
                raise ValueError("non-composable morphisms")
        return ModuleMorphism(other.source, self.target, tuple(self.matrix(x) for x in other.images))

    def __add__(self, other):
        return ModuleMorphism(self.source, self.target,
                              tuple(self.target.group.add(a, b) for a, b in zip(self.images, other.images)))

    def __neg__(self):
        return ModuleMorphism(self.source, self.target, tuple(self.target.group.neg(a) for a in self.images))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return ModuleMorphism(self.source, self.target,
                              tuple(self.target.group.scale(k, a) for a in self.images))

    def is_zero(self):
        return not any(any(a) for a in self.images)

    def equals(self, other):
        return self.images == other.images

    def is_mono(self):
        return self.matrix.is_injective()

    def is_epi(self):
        return self.matrix.is_surjective()

    def is_iso(self):
        return self.is_mono() and self.is_epi()

    def image_vectors(self):
        return [list(self.target.canonical_vector(c)) for c in self.images]

    def to_json(self):
        return {
            "ring_label": self.source.ring.label,
            "side": self.source.side,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "images": self.image_vectors(),
        }

    def __repr__(self):
        return f"ModuleMorphism({self.source} -> {self.target}, {self.images})"


def _relation_violation(M, N, images):
    for i, row in enumerate(M.relations):
        acc = N.group.zero
        for img, r in zip(images, row):
            acc = N.group.add(acc, N.act(r)(img))
        if any(acc):
            return i
    return None


def make_morphism(source, target, images, coords=False):
    """Morphism sending generator ``j`` of ``source`` to ``images[j]``.

    Images are ring-element vectors of the target unless ``coords`` is set.
    """
    check_compatible(source, target)
    if len(images) != source.gens:
        raise MorphismError(f"expected {source.gens} images, got {len(images)}")
    if coords:
        imgs = tuple(target.group.normalize(c) for c in images)
    else:
        imgs = tuple(target.from_vector(tuple(v) if isinstance(v, (list, tuple)) else (v,)) for v in images)
    bad = _relation_violation(source, target, imgs)
    if bad is not None:
        raise MorphismError(f"relation {bad} of the source does not map to zero", relation=bad)
    return ModuleMorphism(source, target, imgs)


def identity(M):
    return ModuleMorphism(M, M, tuple(M.generator(j) for j in range(M.gens)))


def zero_morphism(M, N):
    check_compatible(M, N)
    return ModuleMorphism(M, N, tuple(N.group.zero for _ in range(M.gens)))


# ----------------------------------------------------------------------------
# Hom


@dataclass(eq=False)
class HomGroup:
    """``Hom(M, N)`` as a subgroup of ``N^k`` (``k`` = generators of ``M``)."""

    source: FpModule
    target: FpModule
    group: FiniteAbelianGroup
    incl: GroupHom
    injections: list
    projections: list

    def morphism(self, c):
        v = self.incl(c)
        return ModuleMorphism(self.source, self.target, tuple(p(v) for p in self.projections))

    def coords(self, phi):
        amb = self.incl.target.zero
        for inj, img in zip(self.injections, phi.images):
            amb = self.incl.target.add(amb, inj(img))
        x = self.incl.preimage(amb)
        if x is None:
            raise MorphismError("tuple is not a morphism")
        return x

    def elements(self):
        return (self.morphism(c) for c in self.group.elements())

    def hom_from(self, other_group, morphisms):
        """Group homomorphism ``other_group -> Hom`` from images of its unit vectors."""
        return GroupHom.from_images(other_group, self.group, [self.coords(m) for m in morphisms])


@lru_cache(maxsize=50000)
def _hom(M, N):
    N_k, inj, proj = group_sum([N.group] * M.gens)
    if M.relations:
        N_m, inj_m, _ = group_sum([N.group] * len(M.relations))
        cons = GroupHom.zero(N_k, N_m)
        for i, row in enumerate(M.relations):
            for j, r in enumerate(row):
                cons = cons + inj_m[i].compose(N.act(r).compose(proj[j]))
        K, incl = cons.kernel
    else:
        K, incl = N_k, GroupHom.identity(N_k)
    hg = HomGroup(M, N, K, incl, inj, proj)
    hg.group = K.with_decode(hg.morphism)
    return hg


def hom_group(M, N, method="fast"):
    """``Hom(M, N)``; the group's ``decode`` returns the morphism for coordinates.

    ``method="brute"`` enumerates all generator-image tuples and returns only
    the invariant factors; it is the oracle for the default path.
    """
    check_compatible(M, N)
    if method == "brute":
        return FiniteAbelianGroup(brute_hom_invariants(M, N))
    return _hom(M, N)


def brute_hom_invariants(M, N, limit=200000):
    total = N.size ** M.gens
    if total > limit:
        raise BoundExceededError(f"brute-force Hom would scan {total} tuples", limit)
    elems = list(N.group.elements())
    sols = [t for t in itertools.product(elems, repeat=M.gens)
            if _relation_violation(M, N, t) is None]
    G = N.group

    def add(a, b):
        return tuple(G.add(x, y) for x, y in zip(a, b))

    return brute_invariants(sols, add, tuple(G.zero for _ in range(M.gens)))


def postcompose(hg_src, hg_dst, a):
    """``Hom(X, A) -> Hom(X, B)``, ``phi -> a ∘ phi``, for ``a : A -> B``."""
    cols = []
    for c in range(hg_src.group.rank):
        phi = hg_src.morphism(hg_src.group.unit(c))
        cols.append(hg_dst.coords(a.compose(phi)))
    return GroupHom.from_images(hg_src.group, hg_dst.group, cols)


def precompose(hg_src, hg_dst, f):
    """``Hom(Y, A) -> Hom(X, A)``, ``phi -> phi ∘ f``, for ``f : X -> Y``."""
    cols = []
    for c in range(hg_src.group.rank):
        phi = hg_src.morphism(hg_src.group.unit(c))
        cols.append(hg_dst.coords(phi.compose(f)))
    return GroupHom.from_images(hg_src.group, hg_dst.group, cols)


def solve_postcompose(e, h):
    """Some ``phi`` with ``e ∘ phi = h`` (``h : P -> B``, ``e : A -> B``), or None."""
    P = h.source
    src, dst = _hom(P, e.source), _hom(P, e.target)
    x = postcompose(src, dst, e).preimage(dst.coords(h))
    return None if x is None else src.morphism(x)


def solve_precompose(g, h):
    """Some ``psi`` with ``psi ∘ g = h`` (``g : X -> Y``, ``h : X -> A``), or None."""
    A = h.target
    src, dst = _hom(g.target, A), _hom(g.source, A)
    x = precompose(src, dst, g).preimage(dst.coords(h))
    return None if x is None else src.morphism(x)


# ----------------------------------------------------------------------------
# Tensor


@dataclass(eq=False)
class TensorGroup:
    """``M ⊗ N`` as a quotient of ``N^k``; element ``(n_j)`` means ``sum_j g_j ⊗ n_j``."""

    left: FpModule
    right: FpModule
    group: FiniteAbelianGroup
    injections: list
    projections: list
    proj: GroupHom
    section: GroupHom

    def from_tuple(self, ns):
        amb = self.proj.source.zero
        for inj, n in zip(self.injections, ns):
            amb = self.proj.source.add(amb, inj(n))
        return self.proj(amb)

    def simple(self, m, n):
        """Class of ``m ⊗ n`` for element coordinates ``m`` of the left factor."""
        vec = self.left.some_vector(m)
        return self.from_tuple([self.right.act(r)(n) if False else self.right.act(r)(n) for r in vec])

    def decode(self, c):
        amb = self.section(c)
        return [(j, self.right.canonical_vector(p(amb))) for j, p in enumerate(self.projections)]


@lru_cache(maxsize=50000)
def _tensor(M, N):
    N_k, inj, proj = group_sum([N.group] * M.gens)
    N_m, inj_m, proj_m = group_sum([N.group] * len(M.relations))
    rel = GroupHom.zero(N_m, N_k)
    for i, row in enumerate(M.relations):
        for j, r in enumerate(row):
            rel = rel + inj[j].compose(N.act(r).compose(proj_m[i]))
    C, p, s = rel.cokernel
    tg = TensorGroup(M, N, C, inj, proj, p, s)
    tg.group = C.with_decode(tg.decode)
    return tg


def tensor_group(M, N, method="fast"):
    """``M ⊗_R N`` for a right module ``M`` and a left module ``N``."""
    check_opposite(M, N)
    if method == "brute":
        return FiniteAbelianGroup(brute_tensor_invariants(M, N))
    return _tensor(M, N)


def brute_tensor_invariants(M, N, limit=200000):
    """Quotient of ``N^k`` by the relation subgroup, closed by breadth-first search."""
    total = N.size ** M.gens
    if total > limit:
        raise BoundExceededError(f"brute-force tensor would scan {total} tuples", limit)
    G = N.group
    k = M.gens

    def add(a, b):
        return tuple(G.add(x, y) for x, y in zip(a, b))

    zero = tuple(G.zero for _ in range(k))
    gens = [tuple(N.act(r)(n) for r in row) for row in M.relations for n in G.elements()]
    sub = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add(x, g)
                if y not in sub:
                    sub.add(y)
                    nxt.append(y)
        frontier = nxt
    elems = list(itertools.product(list(G.elements()), repeat=k))
    classes = {}
    reps = []
    for e in elems:
        if e in classes:
            continue
        idx = len(reps)
        reps.append(e)
        for s in sub:
            classes[add(e, s)] = idx

    def qadd(a, b):
        return classes[add(reps[a], reps[b])]

    return brute_invariants(range(len(reps)), qadd, classes[zero])


def tensor_map(a, N):
    """``a ⊗ N : A ⊗ N -> B ⊗ N`` for ``a : A -> B``."""
    A, B = a.source, a.target
    TA, TB = _tensor(A, N), _tensor(B, N)
    vecs = [A and a.target.some_vector(img) for img in a.images]
    cols = []
    for c in range(TA.group.rank):
        amb = TA.section(TA.group.unit(c))
        ns = [p(amb) for p in TA.projections]
        out = [N.group.zero] * B.gens
        for j, n in enumerate(ns):
            for l, r in enumerate(vecs[j]):
                out[l] = N.group.add(out[l], N.act(r)(n))
        cols.append(TB.from_tuple(out))
    return GroupHom.from_images(TA.group, TB.group, cols)


# ----------------------------------------------------------------------------
# Submodules, kernels, cokernels


def _cyclic_order(M, c):
    S = M.acting
    g, _ = subgroup(M.group, [M.act(b)(c) for b in S.additive_basis])
    return g.order


def module_generators(M, candidates):
    """A short list of elements generating the same submodule as ``candidates``."""
    S = M.acting
    cands = [M.group.normalize(c) for c in candidates if any(M.group.normalize(c))]
    cands = sorted(dict.fromkeys(cands), key=lambda c: (-_cyclic_order(M, c), c))
    chosen = []
    span_gens = []
    span_incl = None
    for c in cands:
        if span_incl is not None and span_incl.preimage(c) is not None:
            continue
        chosen.append(c)
        span_gens += [M.act(b)(c) for b in S.additive_basis]
        _, span_incl = subgroup(M.group, span_gens)
    return chosen


def submodule(M, candidates, label=""):
    """Presentation of the submodule generated by ``candidates``: ``(K, inclusion)``."""
    gens = module_generators(M, candidates)
    F = free_module(M.ring, M.side, len(gens))
    cover = ModuleMorphism(F, M, tuple(gens))
    K, incl = cover.matrix.kernel
    syz = module_generators(F, [incl(K.unit(c)) for c in range(K.rank)])
    rows = [F.some_vector(c) for c in syz]
    sub = make_module(M.ring, M.side, rows, gens=len(gens), label=label, check_size=False)
    return sub, ModuleMorphism(sub, M, tuple(gens))


@dataclass(eq=False)
class Factorization:
    kernel: FpModule
    kernel_mono: ModuleMorphism
    image: FpModule
    coimage_epi: ModuleMorphism
    image_mono: ModuleMorphism
    cokernel: FpModule
    cokernel_epi: ModuleMorphism


def cokernel(phi, label="", reduce=True):
    N = phi.target
    rows = list(N.relations) + [N.some_vector(c) for c in phi.images]
    C = make_module(N.ring, N.side, rows, gens=N.gens, label=label, check_size=False)
    epi = ModuleMorphism(N, C, tuple(C.generator(j) for j in range(N.gens)))
    small, sigma, _ = reduced(C) if reduce else (C, None, None)
    if small is C:
        return C, epi
    return small, sigma.compose(epi)


@lru_cache(maxsize=50000)
def reduced(M):
    """An isomorphic presentation with few generators and relations: ``(M', sigma, sigma_inv)``."""
    if M.gens == 0:
        return M, identity(M), identity(M)
    sub, incl = submodule(M, [M.generator(j) for j in range(M.gens)], label=M.label)
    if sub.gens >= M.gens and len(sub.relations) >= len(M.relations):
        return M, identity(M), identity(M)
    sigma = ModuleMorphism(M, sub, tuple(incl.matrix.preimage(M.generator(j)) for j in range(M.gens)))
    return sub, sigma, incl


def factorize(phi):
    M, N = phi.source, phi.target
    K, kincl = phi.matrix.kernel
    ker, kmono = submodule(M, [kincl(K.unit(c)) for c in range(K.rank)])
    img, imono = submodule(N, list(phi.images))
    epi = ModuleMorphism(M, img, tuple(imono.matrix.preimage(x) for x in phi.images))
    coker, cepi = cokernel(phi)
    return Factorization(ker, kmono, img, epi, imono, coker, cepi)


def direct_sum(M, N, check_size=True):
    """``(M ⊕ N, [i_M, i_N], [p_M, p_N])``."""
    check_compatible(M, N)
    rows = [tuple(r) + (M.acting.zero,) * N.gens for r in M.relations]
    rows += [(M.acting.zero,) * M.gens + tuple(r) for r in N.relations]
    label = f"({M} + {N})" if (M.label and N.label) else ""
    S = make_module(M.ring, M.side, rows, gens=M.gens + N.gens, label=label, check_size=check_size)
    iM = ModuleMorphism(M, S, tuple(S.generator(j) for j in range(M.gens)))
    iN = ModuleMorphism(N, S, tuple(S.generator(M.gens + j) for j in range(N.gens)))
    pM = ModuleMorphism(S, M, tuple(M.generator(j) for j in range(M.gens)) + (M.group.zero,) * N.gens)
    pN = ModuleMorphism(S, N, (N.group.zero,) * M.gens + tuple(N.generator(j) for j in range(N.gens)))
    return S, [iM, iN], [pM, pN]


def direct_sum_many(mods, ring, side):
    if not mods:
        return zero_module(ring, side), [], []
    S, injs, projs = mods[0], [identity(mods[0])], [identity(mods[0])]
    for M in mods[1:]:
        S2, (i1, i2), (p1, p2) = direct_sum(S, M, check_size=False)
        injs = [i1.compose(i) for i in injs] + [i2]
        projs = [p.compose(p1) for p in projs] + [p2]
        S = S2
    return S, injs, projs


def is_exact_modules(seq):
    """One boolean per junction: ``image(seq[i]) == kernel(seq[i+1])``."""
    for f, g in zip(seq, seq[1:]):
        if f.target is not g.source and (
            f.target.acting != g.source.acting
            or f.target.group.invariant_factors != g.source.group.invariant_factors
        ):
            raise ValueError("non-composable chain")
    out = []
    for f, g in zip(seq, seq[1:]):
        composite_zero = g.compose(f).is_zero()
        same = f.matrix.image[0].order == g.matrix.kernel[0].order
        out.append(bool(composite_zero and same))
    return out


@dataclass(eq=False)
class ShortExactSequenceM:
    """``0 -> A --i--> B --p--> C -> 0`` with its verified exactness flags."""

    i: ModuleMorphism
    p: ModuleMorphism
    mono: bool
    epi: bool
    exact_middle: bool

    @property
    def is_exact(self):
        return self.mono and self.epi and self.exact_middle


def short_exact_sequence(i, p):
    return ShortExactSequenceM(i, p, i.is_mono(), p.is_epi(), is_exact_modules([i, p])[0])


def modules_isomorphic(A, B):
    """An isomorphism ``A -> B`` (first in coordinate order) or None."""
    check_compatible(A, B)
    if A.group.invariant_factors != B.group.invariant_factors:
        return None
    for phi in _hom(A, B).elements():
        if phi.is_mono():
            return phi
    return None


def endomorphism_ring_is_local(M):
    """Over a finite ring, ``End(M)`` is local iff the non-units are closed under addition."""
    if M.is_zero:
        return False
    hg = _hom(M, M)
    non_units = [c for c in hg.group.elements() if not hg.morphism(c).is_iso()]
    nu = set(non_units)
    return all(hg.group.add(a, b) in nu for a in non_units for b in non_units)


_basis_cache = {}


def basis_modules(ring, side):
    """The declared representation basis of ``ring`` on ``side`` (one-generator modules)."""
    if ring.basis is None:
        raise UnsupportedRingError(f"ring {ring.label} has no declared representation basis")
    key = (ring, side)
    mods = _basis_cache.get(key)
    if mods is None:
        items = ring.basis.right if side == RIGHT else ring.basis.left
        mods = [make_module(ring, side, rel, gens=1, label=label) for label, rel in items]
        _basis_cache[key] = mods
    return mods


def module_from_action(ring, side, group, action):
    """A presented module whose additive group is ``group`` with right action ``action(s)``.

    ``action`` maps an index of the acting ring of ``side`` to a group
    endomorphism.  Returns ``(M, iso)`` with ``iso : M.group -> group``
    compatible with the actions.
    """
    S = ring if side == RIGHT else ring.opposite
    basis = S.additive_basis

    def span(gens):
        return subgroup(group, [action(b)(c) for c in gens for b in basis])

    cands = sorted((group.unit(i) for i in range(group.rank)),
                   key=lambda c: (-span([c])[0].order, c))
    chosen = []
    incl = None
    for c in cands:
        if incl is not None and incl.preimage(c) is not None:
            continue
        chosen.append(c)
        _, incl = span(chosen)

    def cover(M):
        T = len(basis)
        cols = []
        for c in range(M.group.rank):
            amb = M._quotient.lift(M.group.unit(c))
            acc = group.zero
            for j, g in enumerate(chosen):
                for t, b in enumerate(basis):
                    k = amb[j * T + t]
                    if k:
                        acc = group.add(acc, group.scale(k, action(b)(g)))
            cols.append(acc)
        return GroupHom.from_images(M.group, group, cols)

    F = free_module(ring, side, len(chosen))
    K, kincl = cover(F).kernel
    syz = module_generators(F, [kincl(K.unit(c)) for c in range(K.rank)])
    M = make_module(ring, side, [F.some_vector(c) for c in syz], gens=len(chosen))
    iso = cover(M)
    if not iso.is_isomorphism():
        raise ConsistencyError("module structure does not match the group")
    return M, iso
