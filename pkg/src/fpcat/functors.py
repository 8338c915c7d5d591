"""Finitely presented functors encoded by a single module morphism.

A morphism ``f : X -> Y`` defines the functor ``A -> coker(Hom(Y, A) -> Hom(X, A))``
(precomposition with ``f``).  A natural transformation ``F -> G`` is represented by
a lift ``(u : X_G -> X_F, v : Y_G -> Y_F)`` with ``f ∘ u = v ∘ g``; its component at
``A`` sends the class of ``phi`` to the class of ``phi ∘ u``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .config import settings
from .errors import BoundExceededError, ConsistencyError, SideMismatchError
from .groups import FiniteAbelianGroup, GroupHom, brute_invariants
from .modules import (
    ModuleMorphism,
    basis_modules,
    check_compatible,
    cokernel,
    direct_sum,
    free_module,
    identity,
    make_morphism,
    other_side,
    solve_precompose,
    zero_module,
    zero_morphism,
    _hom,
    precompose,
    reduced,
)


@dataclass(frozen=True, eq=False)
class FpFunctor:
    defining: ModuleMorphism
    label: str = ""
    tensor_of: object = field(default=None, compare=False, repr=False)

    @property
    def X(self):
        return self.defining.source

    @property
    def Y(self):
        return self.defining.target

    @property
    def ring(self):
        return self.defining.source.ring

    @property
    def variable_side(self):
        return self.defining.source.side

    def __call__(self, A):
        return evaluate(self, A).group

    def to_json(self):
        return {"variable_side": self.variable_side, "defining": self.defining.to_json()}

    def __str__(self):
        return self.label or f"F[{self.X} -> {self.Y}]"

    __repr__ = __str__


def functor_from_morphism(f, label=""):
    return FpFunctor(f, label)


def yoneda(X, label=""):
    return FpFunctor(zero_morphism(X, zero_module(X.ring, X.side)), label or f"({X},-)")


def zero_functor(ring, side):
    z = zero_module(ring, side)
    return FpFunctor(identity(z), "0")


@lru_cache(maxsize=4096)
def tensor_functor(X):
    """``X ⊗ -`` on modules of the other side, presented by free modules."""
    side = other_side(X.side)
    Xr = reduced(X)[0]
    P = free_module(X.ring, side, Xr.gens)
    Q = free_module(X.ring, side, len(Xr.relations))
    images = [tuple(row[j] for row in Xr.relations) for j in range(Xr.gens)]
    g = make_morphism(P, Q, images)
    F = FpFunctor(g, f"{X} ⊗ -" if X.label else "", tensor_of=X)
    if settings().debug_extensional:
        from .modules import tensor_group

        for L in basis_modules(X.ring, side):
            if evaluate(F, L).group.invariant_factors != tensor_group(X, L).group.invariant_factors:
                raise ConsistencyError(f"tensor functor of {X} disagrees with the tensor product at {L}")
    return F


def tensor_map(h):
    """``t(h) : X ⊗ - -> Y ⊗ -`` for a module morphism ``h : X -> Y``.

    Tensor functors are presented through the reduced presentations of their
    modules, so ``h`` is first transported along those isomorphisms.
    """
    tX, tY = tensor_functor(h.source), tensor_functor(h.target)
    X, _, x_inv = reduced(h.source)
    Y, y_sigma, _ = reduced(h.target)
    h = y_sigma.compose(h).compose(x_inv)
    rows = [Y.some_vector(c) for c in h.images]
    images = [tuple(rows[j][l] for j in range(X.gens)) for l in range(Y.gens)]
    u = make_morphism(tY.X, tX.X, images)
    v = solve_precompose(tY.defining, tX.defining.compose(u))
    if v is None:
        raise ConsistencyError("tensor map lift has no second component")
    return NatTransformation(tX, tY, u, v)


# ----------------------------------------------------------------------------
# Evaluation


@dataclass(eq=False)
class Evaluation:
    """``F(A)`` with its presentation as a quotient of ``Hom(X_F, A)``."""

    functor: FpFunctor
    module: object
    hom_x: object
    group: FiniteAbelianGroup
    proj: GroupHom
    section: GroupHom

    def representative(self, c):
        return self.hom_x.morphism(self.section(c))

    def class_of(self, phi):
        return self.proj(self.hom_x.coords(phi))


@lru_cache(maxsize=100000)
def evaluate(F, A):
    if A.acting != F.X.acting:
        raise SideMismatchError(f"{F} consumes {F.variable_side} modules over {F.ring.label}; got {A}")
    hx = _hom(F.X, A)
    hy = _hom(F.Y, A)
    pre = precompose(hy, hx, F.defining)
    C, proj, sec = pre.cokernel
    ev = Evaluation(F, A, hx, C, proj, sec)
    ev.group = C.with_decode(ev.representative)
    return ev


def map_on_morphism(F, a):
    """``F(a) : F(A) -> F(B)`` by postcomposition on representatives."""
    ea, eb = evaluate(F, a.source), evaluate(F, a.target)
    cols = [eb.class_of(a.compose(ea.representative(ea.group.unit(c)))) for c in range(ea.group.rank)]
    return GroupHom.from_images(ea.group, eb.group, cols)


def is_zero_functor(F):
    return all(evaluate(F, L).group.is_trivial for L in basis_modules(F.ring, F.variable_side))


# ----------------------------------------------------------------------------
# Natural transformations


@dataclass(frozen=True, eq=False)
class NatTransformation:
    src: FpFunctor
    dst: FpFunctor
    u: ModuleMorphism
    v: ModuleMorphism

    def check(self):
        lhs = self.src.defining.compose(self.u)
        rhs = self.v.compose(self.dst.defining)
        if not lhs.equals(rhs):
            raise ConsistencyError("lift is not compatible with the defining morphisms")
        return self

    @cached_property
    def normal_form(self):
        return nat_group(self.src, self.dst).coords(self)

    def component(self, A):
        ea, eb = evaluate(self.src, A), evaluate(self.dst, A)
        cols = [eb.class_of(ea.representative(ea.group.unit(c)).compose(self.u))
                for c in range(ea.group.rank)]
        return GroupHom.from_images(ea.group, eb.group, cols)

    def compose(self, other):
        """``self ∘ other`` for ``other : F -> G`` and ``self : G -> H``."""
        return NatTransformation(other.src, self.dst, other.u.compose(self.u), other.v.compose(self.v))

    def __add__(self, other):
        return NatTransformation(self.src, self.dst, self.u + other.u, self.v + other.v)

    def __neg__(self):
        return NatTransformation(self.src, self.dst, -self.u, -self.v)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not any(self.normal_form)

    def equals(self, other):
        return self.normal_form == other.normal_form

    def is_extensional_iso(self):
        return all(self.component(L).is_isomorphism()
                   for L in basis_modules(self.src.ring, self.src.variable_side))

    def is_extensional_mono(self):
        return all(self.component(L).is_injective()
                   for L in basis_modules(self.src.ring, self.src.variable_side))

    def is_extensional_epi(self):
        return all(self.component(L).is_surjective()
                   for L in basis_modules(self.src.ring, self.src.variable_side))

    def to_json(self):
        return {
            "src": self.src.to_json(),
            "dst": self.dst.to_json(),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
        }


def make_nat(F, G, u, v):
    return NatTransformation(F, G, u, v).check()


def nat_identity(F):
    return NatTransformation(F, F, identity(F.X), identity(F.Y))


def nat_zero(F, G):
    return NatTransformation(F, G, zero_morphism(G.X, F.X), zero_morphism(G.Y, F.Y))


@dataclass(eq=False)
class NatGroup:
    """``Nat(F, G) = ker(G(f) : G(X_F) -> G(Y_F))``."""

    src: FpFunctor
    dst: FpFunctor
    group: FiniteAbelianGroup
    incl: GroupHom
    at_x: Evaluation

    def transformation(self, c):
        u = self.at_x.representative(self.incl(c))
        v = solve_precompose(self.dst.defining, self.src.defining.compose(u))
        if v is None:
            raise ConsistencyError("natural transformation lift has no second component")
        return NatTransformation(self.src, self.dst, u, v)

    def coords(self, alpha):
        x = self.incl.preimage(self.at_x.class_of(alpha.u))
        if x is None:
            raise ConsistencyError("lift does not define a natural transformation")
        return x

    def elements(self):
        return (self.transformation(c) for c in self.group.elements())

    def generators(self):
        return [self.transformation(self.group.unit(i)) for i in range(self.group.rank)]


@lru_cache(maxsize=50000)
def _nat(F, G):
    if F.X.acting != G.X.acting:
        raise SideMismatchError(f"{F} and {G} have different variable sides")
    gf = map_on_morphism(G, F.defining)
    K, incl = gf.kernel
    ng = NatGroup(F, G, K, incl, evaluate(G, F.X))
    ng.group = K.with_decode(ng.transformation)
    return ng


def nat_group(F, G):
    return _nat(F, G)


def _group_homs(A, B, limit):
    """All group homomorphisms ``A -> B`` as matrices (columns = unit images)."""
    cols = []
    for d in A.invariant_factors:
        cols.append([b for b in B.elements() if not any(B.scale(d, b))])
    total = 1
    for c in cols:
        total *= len(c)
    if total > limit:
        raise BoundExceededError(f"brute-force natural families exceed {limit} candidates", limit)
    return [GroupHom.from_images(A, B, imgs) for imgs in itertools.product(*cols)]


def brute_nat_invariants(F, G, limit=20000):
    """Natural families on the representation basis, found by enumeration."""
    basis = basis_modules(F.ring, F.variable_side)
    cands = [_group_homs(evaluate(F, L).group, evaluate(G, L).group, limit) for L in basis]
    squares = []
    for i, L in enumerate(basis):
        for j, M in enumerate(basis):
            for a in _hom(L, M).elements():
                squares.append((i, j, map_on_morphism(F, a), map_on_morphism(G, a)))
    total = 1
    for c in cands:
        total *= len(c)
    if total > limit:
        raise BoundExceededError(f"brute-force natural families exceed {limit} candidates", limit)
    fams = []
    for fam in itertools.product(*cands):
        if all(Ga.compose(fam[i]).equals(fam[j].compose(Fa)) for i, j, Fa, Ga in squares):
            fams.append(tuple(h.matrix for h in fam))
    shapes = [(evaluate(G, L).group) for L in basis]

    def add(a, b):
        return tuple(tuple(tuple((x + y) % d for x, y in zip(r, s))
                           for r, s, d in zip(ma, mb, grp.invariant_factors))
                     for ma, mb, grp in zip(a, b, shapes))

    zero = tuple(tuple(tuple(0 for _ in r) for r in m) for m in fams[0]) if fams else ()
    return brute_invariants(fams, add, zero)


def functors_isomorphic(F, G):
    """A natural isomorphism ``F -> G`` (first in normal-form order) or None."""
    basis = basis_modules(F.ring, F.variable_side)
    for L in basis:
        if evaluate(F, L).group.invariant_factors != evaluate(G, L).group.invariant_factors:
            return None
    c = first_injective(_nat(F, G), basis)
    return None if c is None else _nat(F, G).transformation(c)


def _socle(group):
    """Nonzero elements of prime order; a hom is injective iff none of them maps to 0."""
    out = []
    n = group.order
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    for p in primes:
        out += [x for x in group.elements() if any(x) and not any(group.scale(p, x))]
    return out


def first_injective(ng, basis):
    """Coordinates of the first element of ``ng`` injective at every module of ``basis``.

    Components depend linearly on coordinates, so only the images of socle
    elements under the generators' components are needed.
    """
    gens = ng.generators()
    tests = []
    for L in basis:
        src = evaluate(ng.src, L).group
        dst = evaluate(ng.dst, L).group
        comps = [g.component(L) for g in gens]
        tests.append((dst, [[comp(x) for comp in comps] for x in _socle(src)]))
    for c in ng.group.elements():
        ok = True
        for dst, rows in tests:
            for imgs in rows:
                acc = dst.zero
                for k, img in zip(c, imgs):
                    if k:
                        acc = dst.add(acc, dst.scale(k, img))
                if not any(acc):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return c
    return None


def extensionally_equal(F, G):
    """Same invariant factors at every basis module (a necessary condition for iso)."""
    return all(
        evaluate(F, L).group.invariant_factors == evaluate(G, L).group.invariant_factors
        for L in basis_modules(F.ring, F.variable_side)
    )


def solve_post(mu, alpha):
    """Some ``beta`` with ``mu ∘ beta = alpha`` (``mu : K -> G``, ``alpha : F -> G``), or None."""
    src, dst = _nat(alpha.src, mu.src), _nat(alpha.src, mu.dst)
    cols = [dst.coords(mu.compose(b)) for b in src.generators()]
    m = GroupHom.from_images(src.group, dst.group, cols)
    x = m.preimage(dst.coords(alpha))
    return None if x is None else src.transformation(x)


def solve_pre(eps, alpha):
    """Some ``beta`` with ``beta ∘ eps = alpha`` (``eps : F -> C``, ``alpha : F -> G``), or None."""
    src, dst = _nat(eps.dst, alpha.dst), _nat(eps.src, alpha.dst)
    cols = [dst.coords(b.compose(eps)) for b in src.generators()]
    m = GroupHom.from_images(src.group, dst.group, cols)
    x = m.preimage(dst.coords(alpha))
    return None if x is None else src.transformation(x)


# ----------------------------------------------------------------------------
# Kernels, cokernels, images


@dataclass(eq=False)
class NatFactorization:
    kernel: FpFunctor
    kernel_mono: NatTransformation
    image: FpFunctor
    image_epi: NatTransformation
    image_mono: NatTransformation
    cokernel: FpFunctor
    cokernel_epi: NatTransformation


def nat_cokernel(alpha):
    F, G = alpha.src, alpha.dst
    S, (i1, i2), (p1, p2) = direct_sum(F.X, G.Y, check_size=False)
    c = i1.compose(alpha.u) + i2.compose(G.defining)
    C = FpFunctor(c)
    epi = NatTransformation(G, C, identity(G.X), p2)
    return C, epi


def nat_kernel(alpha):
    F, G = alpha.src, alpha.dst
    f, g, u, v = F.defining, G.defining, alpha.u, alpha.v
    S, (i1, i2), (p1, p2) = direct_sum(F.X, G.Y, check_size=False)
    P, q = cokernel(i1.compose(u) - i2.compose(g), reduce=False)
    Cg, cg = cokernel(g)
    T, (j1, j2), _ = direct_sum(F.Y, Cg, check_size=False)
    k_s = j1.compose(f.compose(p1) + v.compose(p2)) + j2.compose(cg.compose(p2))
    k = make_morphism(P, T, k_s.images, coords=True)
    # P and T carry redundant generators; move to reduced presentations
    _, p_sigma, p_inv = reduced(P)
    _, t_sigma, _ = reduced(T)
    K = FpFunctor(t_sigma.compose(k).compose(p_inv))
    mono = NatTransformation(K, F, p_sigma.compose(q).compose(i1), t_sigma.compose(j1))
    return K, mono


def nat_factorize(alpha, verify=None):
    K, kmono = nat_kernel(alpha)
    C, cepi = nat_cokernel(alpha)
    I, imono = nat_kernel(cepi)
    iepi = solve_post(imono, alpha)
    if iepi is None:
        raise ConsistencyError("transformation does not factor through its image")
    out = NatFactorization(K, kmono, I, iepi, imono, C, cepi)
    if verify if verify is not None else settings().debug_extensional:
        verify_factorization(alpha, out)
    return out


def factorization_report(alpha, fac):
    """Per basis module: does each piece match the pointwise kernel/image/cokernel?"""
    rows = []
    for L in basis_modules(alpha.src.ring, alpha.src.variable_side):
        a = alpha.component(L)
        km = fac.kernel_mono.component(L)
        ce = fac.cokernel_epi.component(L)
        im = fac.image_mono.component(L)
        ie = fac.image_epi.component(L)
        ok_k = km.is_injective() and km.image[0].order == a.kernel[0].order and a.compose(km).is_zero()
        ok_c = ce.is_surjective() and ce.kernel[0].order == a.image[0].order and ce.compose(a).is_zero()
        ok_i = im.is_injective() and ie.is_surjective() and im.compose(ie).equals(a)
        rows.append((L, ok_k, ok_c, ok_i))
    return rows


def verify_factorization(alpha, fac):
    for L, ok_k, ok_c, ok_i in factorization_report(alpha, fac):
        if not (ok_k and ok_c and ok_i):
            raise ConsistencyError(f"factorization disagrees with pointwise groups at {L}")


def sequence_exactness(nats):
    """For composable transformations, per junction and basis module: image == kernel."""
    out = []
    basis = basis_modules(nats[0].src.ring, nats[0].src.variable_side)
    for a, b in zip(nats, nats[1:]):
        row = []
        for L in basis:
            ca, cb = a.component(L), b.component(L)
            row.append(cb.compose(ca).is_zero() and ca.image[0].order == cb.kernel[0].order)
        out.append(row)
    return out


@dataclass(eq=False)
class ShortExactSequenceF:
    """``0 -> F --alpha--> G --beta--> H -> 0`` with per-basis-module verdicts."""

    alpha: NatTransformation
    beta: NatTransformation
    mono: list
    middle: list
    epi: list

    @property
    def is_exact(self):
        return all(self.mono) and all(self.middle) and all(self.epi)


def short_exact_sequence_f(alpha, beta):
    basis = basis_modules(alpha.src.ring, alpha.src.variable_side)
    mono = [alpha.component(L).is_injective() for L in basis]
    epi = [beta.component(L).is_surjective() for L in basis]
    return ShortExactSequenceF(alpha, beta, mono, sequence_exactness([alpha, beta])[0], epi)


def product(F, G):
    """``F × G``, evaluated object-wise, with its projections."""
    check_compatible(F.X, G.X)
    SX, (ix1, ix2), (px1, px2) = direct_sum(F.X, G.X, check_size=False)
    SY, (iy1, iy2), (py1, py2) = direct_sum(F.Y, G.Y, check_size=False)
    d = iy1.compose(F.defining).compose(px1) + iy2.compose(G.defining).compose(px2)
    P = FpFunctor(make_morphism(SX, SY, d.images, coords=True))
    return P, [NatTransformation(P, F, ix1, iy1), NatTransformation(P, G, ix2, iy2)]
