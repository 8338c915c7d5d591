"""Deterministic corpora of modules and functors for the verification suites.

Modules are the quotients of ``R^k`` (``k <= maxgens``) up to isomorphism.
Functors are the morphisms between corpus modules up to the action of
``Aut(target) x Aut(source)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .config import settings
from .errors import SizeLimitError
from .groups import subgroup
from .modules import (
    FpModule,
    _hom,
    basis_modules,
    free_module,
    make_module,
    module_generators,
    modules_isomorphic,
    postcompose,
    precompose,
)
from .functors import FpFunctor, _nat


def _submodule_sets(F):
    """All submodules of ``F`` as ``(frozenset of elements, generator list)``."""
    S = F.acting

    def span(gens):
        sub, incl = subgroup(F.group, [F.act(b)(g) for g in gens for b in S.additive_basis])
        return frozenset(incl(x) for x in sub.elements())

    elems = list(F.group.elements())
    zero = frozenset([F.group.zero])
    found = {zero: []}
    frontier = [zero]
    while frontier:
        nxt = []
        for sub in frontier:
            gens = found[sub]
            for x in elems:
                if x in sub:
                    continue
                new = span(gens + [x])
                if new not in found:
                    found[new] = gens + [x]
                    nxt.append(new)
        frontier = sorted(nxt, key=lambda s: (len(s), sorted(s)))
    return sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def _iso_key(M):
    return (M.group.invariant_factors,
            tuple(_hom(B, M).group.order for B in basis_modules(M.ring, M.side)))


@lru_cache(maxsize=64)
def module_corpus(ring, side, maxgens):
    """Quotients of ``R^k`` for ``k <= maxgens`` up to isomorphism, smallest presentation first."""
    bound = settings().max_module_size
    out = []
    by_key = {}
    for k in range(maxgens + 1):
        if ring.size ** k > bound:
            raise SizeLimitError(f"free module of rank {k} exceeds the element bound", bound, ring.size ** k)
        F = free_module(ring, side, k)
        for _, gens in _submodule_sets(F):
            rows = [F.some_vector(c) for c in module_generators(F, gens)]
            M = make_module(ring, side, rows, gens=k)
            key = _iso_key(M)
            if any(modules_isomorphic(M, N) is not None for N in by_key.get(key, [])):
                continue
            object.__setattr__(M, "label", f"M{len(out)}")
            by_key.setdefault(key, []).append(M)
            out.append(M)
    return tuple(out)


def automorphisms(M):
    hg = _hom(M, M)
    return [phi for phi in hg.elements() if phi.is_iso()]


@lru_cache(maxsize=64)
def functor_corpus(ring, side, maxgens):
    """One defining morphism per ``Aut x Aut`` orbit for every ordered pair of corpus modules."""
    mods = module_corpus(ring, side, maxgens)
    auts = {id(M): automorphisms(M) for M in mods}
    out = []
    for M in mods:
        for N in mods:
            hg = _hom(M, N)
            acts = [postcompose(hg, hg, a) for a in auts[id(N)]]
            acts += [precompose(hg, hg, b) for b in auts[id(M)]]
            seen = set()
            j = 0
            for c in hg.group.elements():
                if c in seen:
                    continue
                orbit = {c}
                stack = [c]
                while stack:
                    x = stack.pop()
                    for a in acts:
                        y = a(x)
                        if y not in orbit:
                            orbit.add(y)
                            stack.append(y)
                seen |= orbit
                out.append(FpFunctor(hg.morphism(c), f"{M.label}->{N.label}#{j}"))
                j += 1
    return tuple(out)


@dataclass(frozen=True)
class CorpusSummary:
    ring: str
    side: str
    maxgens: int
    modules: int
    functors: int

    def to_json(self):
        return dict(self.__dict__)


def summary(ring, side, maxgens):
    return CorpusSummary(ring.label, side, maxgens, len(module_corpus(ring, side, maxgens)),
                         len(functor_corpus(ring, side, maxgens)))


def random_element(rng, group):
    return tuple(rng.randrange(d) for d in group.invariant_factors)


def sample_transformations(functors, n, seed, nonzero_groups=True):
    """``n`` seeded natural transformations between corpus functors."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < n and attempts < 50 * n:
        attempts += 1
        F, G = rng.choice(functors), rng.choice(functors)
        ng = _nat(F, G)
        if nonzero_groups and ng.group.is_trivial and attempts < 25 * n:
            continue
        out.append(ng.transformation(random_element(rng, ng.group)))
    return out


def sample_pairs(left, right, n, seed):
    rng = random.Random(seed)
    return [(rng.choice(left), rng.choice(right)) for _ in range(n)]
