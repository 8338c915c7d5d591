"""Verification suites: each check returns a :class:`Claim` with pass/fail and witnesses."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .corpus import functor_corpus, module_corpus, random_element, sample_transformations, summary
from .errors import UnsupportedRingError
from .groups import GroupHom, direct_sum as group_sum
from .modules import (
    _hom,
    basis_modules,
    brute_hom_invariants,
    brute_tensor_invariants,
    identity,
    make_module,
    make_morphism,
    other_side,
    short_exact_sequence,
    cokernel,
    tensor_group,
    LEFT,
    RIGHT,
)
from .functors import (
    _nat,
    brute_nat_invariants,
    evaluate,
    factorization_report,
    functors_isomorphic,
    is_zero_functor,
    nat_factorize,
    product,
    short_exact_sequence_f,
    tensor_functor,
    yoneda,
)
from .agj import (
    d_a,
    d_a_map,
    d_a_mono,
    d_l,
    d_l_map,
    d_r,
    d_r_map,
    defect,
    delta,
    ev_r,
    four_term_sequences,
    gamma,
    phi_right,
    purity_and_split,
    t_ev_map,
)

MAX_WITNESSES = 5


@dataclass
class Claim:
    claim: str
    anchor: str
    passed: bool = True
    checked: int = 0
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def record(self, ok, witness=None):
        self.checked += 1
        if not ok:
            self.passed = False
            if witness is not None and len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness)
        return ok

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def to_json(self):
        out = {
            "claim": self.claim,
            "anchor": self.anchor,
            "status": self.status,
            "checked": self.checked,
            "witnesses": self.witnesses,
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def _inv(g):
    return list(g.invariant_factors)


# ----------------------------------------------------------------------------
# module level


def check_ring_axioms(ring):
    from .rings import validate

    c = Claim("ring axioms hold under exhaustive enumeration", "ring.axioms")
    try:
        validate(ring)
        c.record(True)
    except Exception as exc:  # the validator raises AxiomError with a witness
        c.record(False, str(exc))
    op = ring.opposite
    c.record(op.opposite.mul_table == ring.mul_table, "opposite is not an involution")
    return c


def check_hom_tensor_oracle(ring, maxgens):
    c = Claim("Hom and tensor fast paths agree with brute force", "module.oracle")
    right = module_corpus(ring, RIGHT, maxgens)
    left = module_corpus(ring, LEFT, maxgens)
    for mods in (right, left):
        for M in mods:
            for N in mods:
                fast = _hom(M, N).group.invariant_factors
                slow = brute_hom_invariants(M, N)
                c.record(fast == slow, {"hom": [M.label, N.label], "fast": list(fast), "brute": list(slow)})
    for M in right:
        for N in left:
            fast = tensor_group(M, N).group.invariant_factors
            slow = brute_tensor_invariants(M, N)
            c.record(fast == slow, {"tensor": [M.label, N.label], "fast": list(fast), "brute": list(slow)})
    return c


# ----------------------------------------------------------------------------
# Yoneda and friends


def yoneda_map(X, F):
    """``Nat((X,-), F) -> F(X)``, ``alpha -> alpha_X(1_X)``."""
    Y = yoneda(X)
    ng = _nat(Y, F)
    ey = evaluate(Y, X)
    one = ey.class_of(identity(X))
    cols = [g.component(X)(one) for g in ng.generators()]
    return GroupHom.from_images(ng.group, evaluate(F, X).group, cols)


def check_yoneda(functors):
    c = Claim("Nat((X,-), F) is F(X) via alpha -> alpha_X(1_X)", "yoneda")
    for F in functors:
        for X in basis_modules(F.ring, F.variable_side):
            m = yoneda_map(X, F)
            ok = (_nat(yoneda(X), F).group.invariant_factors == evaluate(F, X).group.invariant_factors
                  and m.is_isomorphism())
            c.record(ok, {"F": str(F), "X": X.label})
    return c


def check_coyoneda(functors):
    c = Claim("Nat(F, (X,-)) is Hom(X, w(F))", "coyoneda")
    for F in functors:
        w = defect(F)
        for X in basis_modules(F.ring, F.variable_side):
            a = _nat(F, yoneda(X)).group.invariant_factors
            b = _hom(X, w).group.invariant_factors
            c.record(a == b, {"F": str(F), "X": X.label, "nat": list(a), "hom": list(b)})
    return c


def check_nat_brute(functors, pairs, seed):
    c = Claim("Nat groups agree with enumerated natural families on the basis", "nat.oracle")
    rng = random.Random(seed)
    for _ in range(pairs):
        F, G = rng.choice(functors), rng.choice(functors)
        a = _nat(F, G).group.invariant_factors
        b = brute_nat_invariants(F, G, limit=200000)
        c.record(a == b, {"F": str(F), "G": str(G), "kernel": list(a), "brute": list(b)})
    return c


def check_products(functors, pairs, seed):
    c = Claim("products of functors are computed object-wise", "products")
    rng = random.Random(seed)
    for _ in range(pairs):
        F, G = rng.choice(functors), rng.choice(functors)
        P, _ = product(F, G)
        for L in basis_modules(F.ring, F.variable_side):
            S, _, _ = group_sum([evaluate(F, L).group, evaluate(G, L).group])
            c.record(evaluate(P, L).group.invariant_factors == S.invariant_factors,
                     {"F": str(F), "G": str(G), "at": L.label})
    return c


# ----------------------------------------------------------------------------
# D_A


def check_d_a_representables(modules):
    c = Claim("D_A sends (X,-) to X⊗-", "d_a.representables")
    for X in modules:
        Y = yoneda(X)
        D, T = d_a(Y), tensor_functor(X)
        same = all(evaluate(D, L).group.invariant_factors == evaluate(T, L).group.invariant_factors
                   for L in basis_modules(X.ring, other_side(X.side)))
        c.record(same and d_a_mono(Y).is_extensional_iso(), {"X": X.label})
    return c


def seeded_short_exact_sequences(functors, n, seed):
    """Short exact sequences ``ker -> F -> im`` and ``im -> G -> coker`` of random transformations."""
    out = []
    for i, alpha in enumerate(sample_transformations(functors, n, seed)):
        fac = nat_factorize(alpha)
        if i % 2 == 0:
            out.append((fac.kernel_mono, fac.image_epi))
        else:
            out.append((fac.image_mono, fac.cokernel_epi))
    return out


def check_d_a_exact(functors, n, seed):
    c = Claim("D_A is exact", "d_a.exact")
    for a, b in seeded_short_exact_sequences(functors, n, seed):
        src = short_exact_sequence_f(a, b)
        if not src.is_exact:
            c.record(False, {"input_not_exact": [str(a.src), str(a.dst), str(b.dst)]})
            continue
        image = short_exact_sequence_f(d_a_map(b), d_a_map(a))
        c.record(image.is_exact, {"sequence": [str(a.src), str(a.dst), str(b.dst)]})
    return c


# ----------------------------------------------------------------------------
# duality and adjoints


def check_duality(functors, modules):
    out = {
        "drda": Claim("D_R D_A F is isomorphic to F", "duality.involution"),
        "dadl": Claim("D_A D_L G is isomorphic to G", "d_l.section"),
        "dldr": Claim("D_L G is isomorphic to D_R G", "d_l.equals.d_r"),
        "drt": Claim("D_R(X⊗-) is isomorphic to (X,-)", "d_r.tensor"),
        "dlt": Claim("D_L(X⊗-) is isomorphic to (X,-)", "d_l.tensor"),
    }
    for F in functors:
        G = d_a(F)
        out["drda"].record(functors_isomorphic(d_r(G), F) is not None, {"F": str(F)})
        out["dadl"].record(functors_isomorphic(d_a(d_l(G)), G) is not None, {"G": f"D_A({F})"})
        out["dldr"].record(functors_isomorphic(d_l(G), d_r(G)) is not None, {"G": f"D_A({F})"})
    for X in modules:
        out["drt"].record(functors_isomorphic(d_r(tensor_functor(X)), yoneda(X)) is not None, {"X": X.label})
        out["dlt"].record(functors_isomorphic(d_l(tensor_functor(X)), yoneda(X)) is not None, {"X": X.label})
    return list(out.values())


def _phi_matrix(F, G):
    src, dst = _nat(F, d_r(G)), _nat(G, d_a(F))
    cols = [dst.coords(phi_right(F, G, a)) for a in src.generators()]
    return GroupHom.from_images(src.group, dst.group, cols)


def check_adjunctions(functors, others, n, seed, naturality=3, counit=2):
    rng = random.Random(seed)
    right = Claim("Nat(F, D_R G) is Nat(G, D_A F), naturally", "adjunction.right")
    left = Claim("Nat(D_L G, F) is Nat(D_A F, G)", "adjunction.left")
    unique = Claim("each alpha: D_L G -> F is gamma_F D_L(phi) for exactly one phi", "counit.unique")
    for k in range(n):
        F, G = rng.choice(functors), rng.choice(others)
        wit = {"F": str(F), "G": str(G)}
        a = _nat(F, d_r(G))
        b = _nat(G, d_a(F))
        m = _phi_matrix(F, G)
        right.record(a.group.invariant_factors == b.group.invariant_factors and m.is_isomorphism(), wit)
        if k < naturality or k % 10 == 0:
            right.record(_right_naturality(F, G, functors, others, rng), dict(wit, naturality=True))
        p = _nat(d_l(G), F)
        q = _nat(d_a(F), G)
        left.record(p.group.invariant_factors == q.group.invariant_factors, wit)
        if k < counit or k % 10 == 0:
            unique.record(_counit_unique(F, G, rng), wit)
    return [right, left, unique]


def _right_naturality(F, G, functors, others, rng):
    a = _nat(F, d_r(G))
    if a.group.is_trivial:
        return True
    alpha = a.transformation(random_element(rng, a.group))
    base = phi_right(F, G, alpha)
    Fp = rng.choice(functors)
    beta = _nat(Fp, F).transformation(random_element(rng, _nat(Fp, F).group))
    lhs = phi_right(Fp, G, alpha.compose(beta))
    rhs = d_a_map(beta).compose(base)
    ok = lhs.equals(rhs)
    Gp = rng.choice(others)
    psi = _nat(Gp, G).transformation(random_element(rng, _nat(Gp, G).group))
    lhs = phi_right(F, Gp, d_r_map(psi).compose(alpha))
    rhs = base.compose(psi)
    return ok and lhs.equals(rhs)


def _counit_unique(F, G, rng, brute_limit=256):
    src = _nat(d_a(F), G)
    dst = _nat(d_l(G), F)
    g = gamma(F)
    if src.group.order <= brute_limit:
        images = {}
        for c in src.group.elements():
            nf = dst.coords(g.compose(d_l_map(src.transformation(c))))
            images[nf] = images.get(nf, 0) + 1
        return all(images.get(c, 0) == 1 for c in dst.group.elements())
    cols = [dst.coords(g.compose(d_l_map(x))) for x in src.generators()]
    return GroupHom.from_images(src.group, dst.group, cols).is_isomorphism()


def check_t_ev(modules, functors, n, seed):
    c = Claim("Nat(X⊗-, G) is Hom(X, G(R))", "t.ev")
    rng = random.Random(seed)
    for _ in range(n):
        X, G = rng.choice(modules), rng.choice(functors)
        m = t_ev_map(X, G)
        c.record(m.is_isomorphism(), {"X": X.label, "G": str(G), "ev": list(ev_r(G).group.invariant_factors)})
    return c


# ----------------------------------------------------------------------------
# gamma, delta, four-term sequences


def check_four_term(functors):
    seq = Claim("both four-term sequences are exact and D_A kills their end terms", "four_term")
    ends = Claim("over a finite ring all four end terms vanish", "four_term.degenerate")
    isos = Claim("gamma_F and delta_F are isomorphisms; D_A(gamma_F) is an isomorphism", "gamma_delta.iso")
    for F in functors:
        ft = four_term_sequences(F)
        exact = all(all(r) for r in ft.gamma_exact) and all(all(r) for r in ft.delta_exact)
        seq.record(exact and all(ft.d_a_kills_ends.values()), {"F": str(F)})
        ends.record(all(ft.end_terms_zero.values()), {"F": str(F), "zero": ft.end_terms_zero})
        isos.record(ft.gamma.is_extensional_iso() and ft.delta.is_extensional_iso()
                    and d_a_map(ft.gamma).is_extensional_iso(), {"F": str(F)})
    return [seq, ends, isos]


def check_kernel_characterization(functors):
    c = Claim("D_A F = 0, F = 0 on the basis, Nat((M,-), F) = 0 and gamma_F = 0 coincide",
              "kernel.characterization")
    for F in functors:
        basis = basis_modules(F.ring, F.variable_side)
        a = is_zero_functor(d_a(F))
        b = is_zero_functor(F)
        cc = all(_nat(yoneda(M), F).group.is_trivial for M in basis)
        d = gamma(F).is_zero()
        c.record(a == b == cc == d, {"F": str(F), "values": [a, b, cc, d]})
    return c


def check_gamma_naturality(functors, n, seed):
    c = Claim("gamma is natural", "gamma.natural")
    for alpha in sample_transformations(functors, n, seed):
        F, G = alpha.src, alpha.dst
        lhs = gamma(G).compose(d_l_map(d_a_map(alpha)))
        rhs = alpha.compose(gamma(F))
        c.record(lhs.equals(rhs), {"F": str(F), "G": str(G)})
    return c


def check_factorize_oracle(functors, n, seed):
    c = Claim("kernels, images and cokernels of transformations match pointwise groups", "nat_factorize.oracle")
    for alpha in sample_transformations(functors, n, seed):
        rows = factorization_report(alpha, nat_factorize(alpha))
        bad = [L.label for L, *oks in rows if not all(oks)]
        c.record(not bad, {"F": str(alpha.src), "G": str(alpha.dst), "at": bad})
    return c


# ----------------------------------------------------------------------------
# purity


def z4_extension_sequence(ring):
    Z2 = make_module(ring, RIGHT, [[2]], label="Z/2")
    Z4 = make_module(ring, RIGHT, [], gens=1, label="Z/4")
    i = make_morphism(Z2, Z4, [[2]])
    p = make_morphism(Z4, Z2, [[1]])
    return short_exact_sequence(i, p)


def check_purity(functors):
    """Every mono among corpus modules (one per Aut x Aut orbit) with its cokernel."""
    c = Claim("pure and split coincide for short exact sequences of finite modules", "purity.split")
    split = 0
    for F in functors:
        i = F.defining
        if not i.is_mono():
            continue
        _, p = cokernel(i)
        seq = short_exact_sequence(i, p)
        res = purity_and_split(seq)
        split += res.is_split
        c.record(seq.is_exact and res.is_pure == res.is_split,
                 {"mono": str(F), "pure": res.is_pure, "split": res.is_split})
    c.notes.append(f"{split} of {c.checked} sequences split")
    return c


def check_z4_nonpure(ring):
    c = Claim("0 -> Z/2 -> Z/4 -> Z/2 -> 0 is not pure, witnessed at Z/2", "purity.example")
    seq = z4_extension_sequence(ring)
    res = purity_and_split(seq)
    L = res.witness_module
    c.record(seq.is_exact and not res.is_pure and not res.is_split and L is not None and L.size == 2,
             res.to_json())
    return c


# ----------------------------------------------------------------------------
# full suite


@dataclass
class SuiteReport:
    ring: str
    maxgens: int
    seed: int
    corpus: dict
    claims: list

    @property
    def passed(self):
        return all(c.passed for c in self.claims)

    def to_json(self):
        return {
            "ring": self.ring,
            "maxgens": self.maxgens,
            "seed": self.seed,
            "corpus": self.corpus,
            "status": "pass" if self.passed else "fail",
            "claims": [c.to_json() for c in self.claims],
        }


def verify_suite(ring, maxgens=1, seed=0, samples=20):
    if ring.basis is None:
        raise UnsupportedRingError(f"ring {ring.label} has no declared representation basis")
    fr = functor_corpus(ring, RIGHT, maxgens)
    fl = functor_corpus(ring, LEFT, maxgens)
    mr = module_corpus(ring, RIGHT, maxgens)
    corpus = {
        "right": summary(ring, RIGHT, maxgens).to_json(),
        "left": summary(ring, LEFT, maxgens).to_json(),
    }
    claims = [check_ring_axioms(ring), check_hom_tensor_oracle(ring, maxgens)]
    claims += [check_yoneda(fr), check_coyoneda(fr), check_nat_brute(fr, samples, seed),
               check_products(fr, samples, seed)]
    claims += [check_d_a_representables(mr), check_d_a_exact(fr, samples, seed)]
    claims += check_duality(fr, mr)
    claims += check_adjunctions(fr, fl, samples, seed)
    claims += check_four_term(fr)
    claims += [check_kernel_characterization(fr), check_gamma_naturality(fr, samples, seed),
               check_factorize_oracle(fr, samples, seed), check_t_ev(mr, fl, samples, seed),
               check_purity(fr)]
    if ring.label == "Z/4":
        claims.append(check_z4_nonpure(ring))
    return SuiteReport(ring.label, maxgens, seed, corpus, claims)
