"""The duality functor D_A, its adjoints D_R and D_L, and the morphisms gamma, delta.

Conventions: a functor ``F`` on ``side``-modules has ``D_A F`` on modules of the
other side, computed as the kernel of ``t(f) : X⊗- -> Y⊗-``.  ``D_R`` uses the
same recipe on the defining morphism of its argument; its value at ``M`` is
``Nat(G, M⊗-)`` through the swap ``U⊗M ≅ M⊗U``.  ``D_L`` searches for an injective
copresentation ``0 -> G -> M⊗- -> N⊗-`` among sums of basis modules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .config import settings
from .errors import BoundExceededError, ConsistencyError
from .groups import GroupHom
from .modules import (
    ModuleMorphism,
    _hom,
    basis_modules,
    direct_sum_many,
    factorize,
    free_module,
    make_morphism,
    module_from_action,
    other_side,
    reduced,
    solve_precompose,
    tensor_group,
)
from .functors import (
    FpFunctor,
    NatTransformation,
    _nat,
    evaluate,
    first_injective,
    functor_from_morphism,
    is_zero_functor,
    map_on_morphism,
    nat_cokernel,
    nat_factorize,
    nat_identity,
    nat_kernel,
    sequence_exactness,
    solve_post,
    tensor_functor,
    tensor_map,
)


def defect(F):
    """Kernel of the defining morphism."""
    return factorize(F.defining).kernel


# ----------------------------------------------------------------------------
# D_A and D_R


@dataclass(eq=False)
class KernelDual:
    """``D F = ker(t(f))`` together with its embedding into ``t(X_F)``."""

    functor: FpFunctor
    mono: NatTransformation
    tmap: NatTransformation


@lru_cache(maxsize=20000)
def _kernel_dual(F):
    tm = tensor_map(F.defining)
    K, mono = nat_kernel(tm)
    return KernelDual(K, mono, tm)


def d_a(F):
    return _kernel_dual(F).functor


def d_a_mono(F):
    """The embedding ``D_A F -> X_F ⊗ -``."""
    return _kernel_dual(F).mono


def d_a_map(alpha):
    """``D_A(alpha) : D_A G -> D_A F`` for ``alpha : F -> G``."""
    kf, kg = _kernel_dual(alpha.src), _kernel_dual(alpha.dst)
    composite = tensor_map(alpha.u).compose(kg.mono)
    out = solve_post(kf.mono, composite)
    if out is None:
        raise ConsistencyError("D_A(alpha) does not factor through the kernel")
    return out


def d_r(G):
    out = _kernel_dual(G).functor
    if settings().debug_extensional:
        for M in basis_modules(G.ring, other_side(G.variable_side)):
            want = _nat(G, tensor_functor(M)).group.invariant_factors
            if evaluate(out, M).group.invariant_factors != want:
                raise ConsistencyError(f"D_R disagrees with Nat(G, M⊗-) at {M}")
    return out


def d_r_mono(G):
    return _kernel_dual(G).mono


d_r_map = d_a_map


# ----------------------------------------------------------------------------
# swap isomorphism and the right adjunction


@lru_cache(maxsize=20000)
def swap_hom(X, U):
    """``X⊗U -> U⊗X`` on the evaluation groups of ``t(X)`` at ``U`` and ``t(U)`` at ``X``."""
    ex, eu = evaluate(tensor_functor(X), U), evaluate(tensor_functor(U), X)
    PU = tensor_functor(U).X
    Xr, _, x_inv = reduced(X)
    Ur, u_sigma, _ = reduced(U)
    gens = list(x_inv.images)
    cols = []
    for c in range(ex.group.rank):
        phi = ex.representative(ex.group.unit(c))
        m = [X.group.zero] * Ur.gens
        for j, uj in enumerate(phi.images):
            a = Ur.some_vector(u_sigma(uj))
            for i, r in enumerate(a):
                m[i] = X.group.add(m[i], X.act(r)(gens[j]))
        cols.append(eu.class_of(ModuleMorphism(PU, X, tuple(m))))
    return GroupHom.from_images(ex.group, eu.group, cols)


def _adjunct_element(F, G, alpha):
    """For ``alpha : F -> D_R G``, its adjunct as an element of ``Nat(G, X_F⊗-)``."""
    X = F.X
    kd = _kernel_dual(G)
    e = evaluate(kd.functor, X).class_of(alpha.u)
    e = kd.mono.component(X)(e)
    e = swap_hom(G.X, X)(e)
    ng = _nat(G, tensor_functor(X))
    c = ng.incl.preimage(e)
    if c is None:
        raise ConsistencyError("adjunct is not natural")
    return ng.transformation(c)


def phi_right(F, G, alpha):
    """``Nat(F, D_R G) -> Nat(G, D_A F)``."""
    theta = _adjunct_element(F, G, alpha)
    out = solve_post(d_a_mono(F), theta)
    if out is None:
        raise ConsistencyError("adjunct does not land in D_A F")
    return out


def phi_right_inverse(F, G, beta):
    """``Nat(G, D_A F) -> Nat(F, D_R G)``."""
    X = F.X
    kd = _kernel_dual(G)
    theta = d_a_mono(F).compose(beta)
    ng = _nat(G, tensor_functor(X))
    e = ng.incl(ng.coords(theta))
    e = swap_hom(X, G.X)(e)
    ev = evaluate(kd.functor, X)
    pre = kd.mono.component(X).preimage(e)
    if pre is None:
        raise ConsistencyError("adjunct does not land in D_R G")
    u = ev.representative(pre)
    v = solve_precompose(kd.functor.defining, F.defining.compose(u))
    if v is None:
        raise ConsistencyError("adjunct is not natural in the presentation")
    return NatTransformation(F, kd.functor, u, v)


def delta(F):
    """The unit ``F -> D_R D_A F``."""
    return phi_right_inverse(F, d_a(F), nat_identity(d_a(F)))


# ----------------------------------------------------------------------------
# D_L


@dataclass(eq=False)
class Copresentation:
    """``0 -> G --iota--> M⊗- --t(h)--> N⊗-``."""

    M: object
    N: object
    h: ModuleMorphism
    iota: NatTransformation
    functor: FpFunctor


def _sum_candidates(ring, side, max_summands):
    basis = basis_modules(ring, side)
    cands = []
    for n in range(max_summands + 1):
        for idx in itertools.combinations_with_replacement(range(len(basis)), n):
            size = 1
            for i in idx:
                size *= basis[i].size
            cands.append((size, idx))
    cands.sort()
    return basis, cands


@lru_cache(maxsize=1000)
def _sum_module(ring, side, idx):
    basis = basis_modules(ring, side)
    S, _, _ = direct_sum_many([basis[i] for i in idx], ring, side)
    if idx:
        object.__setattr__(S, "label", " + ".join(basis[i].label for i in idx))
    return S


def _find_mono(G, side, max_summands):
    """First ``(M, iota)`` with ``iota : G -> M⊗-`` injective on the basis."""
    basis_g = basis_modules(G.ring, G.variable_side)
    sizes = [evaluate(G, L).group.order for L in basis_g]
    _, cands = _sum_candidates(G.ring, side, max_summands)
    for _, idx in cands:
        M = _sum_module(G.ring, side, idx)
        tM = tensor_functor(M)
        if any(evaluate(tM, L).group.order < s for L, s in zip(basis_g, sizes)):
            continue
        ng = _nat(G, tM)
        c = first_injective(ng, basis_g)
        if c is not None:
            return M, ng.transformation(c)
    return None


def _tensor_preimage(theta):
    """The unique ``h`` with ``t(h) = theta`` for ``theta : M⊗- -> N⊗-``."""
    tM, tN = theta.src, theta.dst
    M = _module_of_tensor(tM)
    N = _module_of_tensor(tN)
    hg = _hom(M, N)
    ng = _nat(tM, tN)
    cols = [ng.coords(tensor_map(hg.morphism(hg.group.unit(i)))) for i in range(hg.group.rank)]
    m = GroupHom.from_images(hg.group, ng.group, cols)
    x = m.preimage(ng.coords(theta))
    if x is None:
        raise ConsistencyError("transformation between tensor functors is not induced by a module map")
    return hg.morphism(x)


def _module_of_tensor(tF):
    if tF.tensor_of is None:
        raise ConsistencyError(f"{tF} is not a tensor functor")
    return tF.tensor_of


@lru_cache(maxsize=20000)
def copresentation(G, max_summands=None):
    max_summands = settings().dl_max_summands if max_summands is None else max_summands
    side = other_side(G.variable_side)
    found = _find_mono(G, side, max_summands)
    if found is None:
        raise BoundExceededError(
            f"no embedding into a tensor functor on sums of <= {max_summands} basis modules",
            max_summands)
    M, iota = found
    C, epi = nat_cokernel(iota)
    found = _find_mono(C, side, max_summands)
    if found is None:
        raise BoundExceededError(
            f"cokernel has no embedding on sums of <= {max_summands} basis modules", max_summands)
    N, kappa = found
    h = _tensor_preimage(kappa.compose(epi))
    return Copresentation(M, N, h, iota, functor_from_morphism(h))


def d_l(G):
    return copresentation(G).functor


def _extend_along(mono, target_module, beta):
    """Some ``a`` with ``t(a) ∘ mono = beta`` (``mono : G' -> tM'``, ``beta : G' -> tM``)."""
    Mp = _module_of_tensor(mono.dst)
    hg = _hom(Mp, target_module)
    ng = _nat(mono.src, tensor_functor(target_module))
    cols = [ng.coords(tensor_map(hg.morphism(hg.group.unit(i))).compose(mono))
            for i in range(hg.group.rank)]
    m = GroupHom.from_images(hg.group, ng.group, cols)
    x = m.preimage(ng.coords(beta))
    if x is None:
        raise ConsistencyError("transformation does not extend along the embedding")
    return hg.morphism(x)


def d_l_map(phi):
    """``D_L(phi) : D_L G -> D_L G'`` for ``phi : G' -> G``."""
    cp, cq = copresentation(phi.dst), copresentation(phi.src)
    a = _extend_along(cq.iota, cp.M, cp.iota.compose(phi))
    v = solve_precompose(cq.h, cp.h.compose(a))
    if v is None:
        raise ConsistencyError("D_L(phi) has no second lift component")
    return NatTransformation(cp.functor, cq.functor, a, v)


def gamma(F):
    """``gamma_F : D_L D_A F -> F``."""
    G = d_a(F)
    cp = copresentation(G)
    i = _extend_along(d_a_mono(F), cp.M, cp.iota)
    v = solve_precompose(F.defining, cp.h.compose(i))
    if v is None:
        raise ConsistencyError("gamma has no second lift component")
    return NatTransformation(cp.functor, F, i, v)


def psi_left(F, G, phi):
    """``Nat(D_A F, G) -> Nat(D_L G, F)``, ``phi -> gamma_F ∘ D_L(phi)``."""
    return gamma(F).compose(d_l_map(phi))


# ----------------------------------------------------------------------------
# ev_R and the tensor adjunction


@lru_cache(maxsize=20000)
def ev_r_data(G):
    """``(G(R) as a module, iso of groups from it to G(R))``."""
    side = G.variable_side
    R1 = free_module(G.ring, side, 1)
    ev = evaluate(G, R1)
    def action(s):
        return map_on_morphism(G, ModuleMorphism(R1, R1, (R1.from_vector((s,)),)))

    M, iso = module_from_action(G.ring, other_side(side), ev.group, action)
    return M, iso, R1


def ev_r(G):
    return ev_r_data(G)[0]


def t_ev_map(X, G):
    """``Nat(X⊗-, G) -> Hom(X, G(R))``, ``theta -> (x_j -> theta_R(x_j ⊗ 1))``."""
    M, iso, R1 = ev_r_data(G)
    tX = tensor_functor(X)
    Xr, x_sigma, _ = reduced(X)
    src = _nat(tX, G)
    dst = _hom(X, M)
    ex = evaluate(tX, R1)
    one = R1.generator(0)
    cols = []
    for theta in src.generators():
        comp = theta.component(R1)
        imgs = []
        for j in range(Xr.gens):
            phi = ModuleMorphism(tX.X, R1, tuple(one if l == j else R1.group.zero for l in range(Xr.gens)))
            g = comp(ex.class_of(phi))
            imgs.append(iso.preimage(g))
        cols.append(dst.coords(ModuleMorphism(Xr, M, tuple(imgs)).compose(x_sigma)))
    return GroupHom.from_images(src.group, dst.group, cols)


# ----------------------------------------------------------------------------
# purity


@dataclass(eq=False)
class PurityResult:
    is_pure: bool
    witness_module: object
    witness_element: object
    is_split: bool
    retraction: object

    def to_json(self):
        return {
            "is_pure": self.is_pure,
            "is_split": self.is_split,
            "witness": None if self.witness_module is None else {
                "module": self.witness_module.label or self.witness_module.to_json(),
                "kernel_element": list(self.witness_element),
            },
        }


def purity_and_split(seq):
    i, p = seq.i, seq.p
    witness = None
    for L in basis_modules(i.source.ring, other_side(i.source.side)):
        from .modules import tensor_map as module_tensor_map

        ti = module_tensor_map(i, L)
        tp = module_tensor_map(p, L)
        K, incl = ti.kernel
        if not K.is_trivial:
            witness = (L, incl(K.unit(0)))
            break
        exact_mid = tp.compose(ti).is_zero() and ti.image[0].order == tp.kernel[0].order
        if not (exact_mid and tp.is_surjective()):
            witness = (L, ())
            break
    A, B = i.source, i.target
    hba, haa = _hom(B, A), _hom(A, A)
    pre = GroupHom.from_images(
        hba.group, haa.group,
        [haa.coords(hba.morphism(hba.group.unit(c)).compose(i)) for c in range(hba.group.rank)])
    x = pre.preimage(haa.coords(ModuleMorphism(A, A, tuple(A.generator(j) for j in range(A.gens)))))
    r = None if x is None else hba.morphism(x)
    return PurityResult(witness is None, witness[0] if witness else None,
                        witness[1] if witness else None, r is not None, r)


# ----------------------------------------------------------------------------
# four-term sequences


@dataclass(eq=False)
class FourTerm:
    gamma: NatTransformation
    delta: NatTransformation
    gamma_exact: list
    delta_exact: list
    end_terms_zero: dict
    d_a_kills_ends: dict

    @property
    def ok(self):
        return (all(all(r) for r in self.gamma_exact) and all(all(r) for r in self.delta_exact)
                and all(self.end_terms_zero.values()) and all(self.d_a_kills_ends.values()))

    def to_json(self):
        return {
            "gamma_exact": self.gamma_exact,
            "delta_exact": self.delta_exact,
            "end_terms_zero": self.end_terms_zero,
            "d_a_kills_ends": self.d_a_kills_ends,
        }


def _four_term(alpha):
    fac = nat_factorize(alpha)
    chain = [fac.kernel_mono, alpha, fac.cokernel_epi]
    basis = basis_modules(alpha.src.ring, alpha.src.variable_side)
    mono = [fac.kernel_mono.component(L).is_injective() for L in basis]
    epi = [fac.cokernel_epi.component(L).is_surjective() for L in basis]
    return [mono] + sequence_exactness(chain) + [epi], fac.kernel, fac.cokernel


def four_term_sequences(F):
    g = gamma(F)
    d = delta(F)
    g_rows, fp_low, fp_up = _four_term(g)
    d_rows, fq_low, fq_up = _four_term(d)
    ends = {"F_p": fp_low, "F^p": fp_up, "F_q": fq_low, "F^q": fq_up}
    zero = {k: is_zero_functor(v) for k, v in ends.items()}
    killed = {k: is_zero_functor(d_a(v)) for k, v in ends.items()}
    return FourTerm(g, d, g_rows, d_rows, zero, killed)
