import pytest
from hypothesis import given, strategies as st

from fpcat.corpus import functor_corpus, random_element
from fpcat.functors import (
    FpFunctor,
    brute_nat_invariants,
    evaluate,
    functor_from_morphism,
    functors_isomorphic,
    is_zero_functor,
    map_on_morphism,
    make_nat,
    nat_factorize,
    nat_group,
    nat_identity,
    nat_zero,
    product,
    tensor_functor,
    tensor_map,
    yoneda,
    zero_functor,
)
from fpcat.errors import ConsistencyError
from fpcat.groups import brute_invariants
from fpcat.modules import (
    LEFT,
    RIGHT,
    basis_modules,
    free_module,
    hom_group,
    identity,
    make_module,
    make_morphism,
    tensor_group,
    zero_module,
)
from fpcat.rings import builtin_ring, make_zmod

Z4 = make_zmod(4)
Z2 = make_module(Z4, RIGHT, [[2]], label="Z/2")
Z4M = make_module(Z4, RIGHT, [], gens=1, label="Z/4")
EXT = functor_from_morphism(make_morphism(Z2, Z4M, [[2]]), "Ext1(Z/2,-)")


def _a2_mod_2a(A):
    # A[2] / 2A by enumeration
    G = A.group
    elems = list(G.elements())
    a2 = [x for x in elems if not any(G.scale(2, x))]
    twice = {G.scale(2, x) for x in elems}
    return len(a2) // len(twice)


def _ker_order(h):
    return sum(1 for x in h.source.elements() if not any(h(x)))


def test_ext_functor_values():
    for L in basis_modules(Z4, RIGHT):
        assert evaluate(EXT, L).group.order == _a2_mod_2a(L)
    assert evaluate(EXT, Z4M).group.is_trivial
    assert evaluate(EXT, Z2).group.invariant_factors == (2,)


def test_representable_and_zero_from_morphisms():
    X = Z2
    to_zero = make_morphism(X, zero_module(Z4, RIGHT), [[]])
    assert functors_isomorphic(functor_from_morphism(to_zero), yoneda(X)) is not None
    assert is_zero_functor(functor_from_morphism(identity(X)))


def test_yoneda_and_tensor_values():
    assert evaluate(yoneda(Z4M), Z2).group.invariant_factors == (2,)
    assert is_zero_functor(yoneda(zero_module(Z4, RIGHT)))
    z2l = make_module(Z4, LEFT, [[2]], label="Z/2")
    assert evaluate(tensor_functor(Z2), z2l).group.invariant_factors == (2,)
    assert is_zero_functor(tensor_functor(zero_module(Z4, RIGHT)))
    for A in basis_modules(Z4, RIGHT):
        assert evaluate(yoneda(Z2), A).group.invariant_factors == hom_group(Z2, A).group.invariant_factors
        assert evaluate(zero_functor(Z4, RIGHT), A).group.is_trivial


@pytest.mark.parametrize("name", ["Z4", "Z6", "F2x2", "T2F2"])
def test_tensor_functor_matches_tensor_group(name):
    R = builtin_ring(name)
    for X in basis_modules(R, RIGHT):
        for L in basis_modules(R, LEFT):
            assert evaluate(tensor_functor(X), L).group.invariant_factors == \
                tensor_group(X, L).group.invariant_factors


def test_ext_kills_multiplication_by_two():
    two = make_morphism(Z4M, Z4M, [[2]])
    assert map_on_morphism(EXT, two).is_zero()


def test_factorize_trivial_cases():
    fac = nat_factorize(nat_identity(EXT))
    assert is_zero_functor(fac.kernel) and is_zero_functor(fac.cokernel)
    Y = yoneda(Z2)
    fac = nat_factorize(nat_zero(EXT, Y))
    assert functors_isomorphic(fac.kernel, EXT) is not None
    assert functors_isomorphic(fac.cokernel, Y) is not None


def test_kernel_of_tensored_defining_map():
    f = EXT.defining
    fac = nat_factorize(tensor_map(f), verify=True)
    values = {L.label: evaluate(fac.kernel, L).group.invariant_factors for L in basis_modules(Z4, LEFT)}
    assert values == {"Z/2": (2,), "Z/4": ()}


def test_isomorphism_search():
    assert functors_isomorphic(tensor_functor(free_module(Z4, RIGHT, 1)), yoneda(free_module(Z4, LEFT, 1))) \
        is not None
    assert functors_isomorphic(EXT, yoneda(Z2)) is None


def test_products_are_objectwise():
    P, (p1, p2) = product(EXT, yoneda(Z2))
    for L in basis_modules(Z4, RIGHT):
        assert evaluate(P, L).group.order == evaluate(EXT, L).group.order * hom_group(Z2, L).group.order
    p1.check()
    p2.check()


def test_make_nat_rejects_non_lift():
    with pytest.raises(ConsistencyError):
        make_nat(EXT, EXT, make_morphism(Z2, Z2, [[0]]), make_morphism(Z4M, Z4M, [[1]]))


# properties over the ring corpora

CORPORA = {name: functor_corpus(builtin_ring(name), RIGHT, 1) for name in ("Z4", "Z6", "F2x2", "T2F2")}
pairs = st.sampled_from(sorted(CORPORA)).flatmap(
    lambda n: st.tuples(st.sampled_from(CORPORA[n]), st.sampled_from(CORPORA[n])))


@given(pairs)
def test_nat_group_matches_natural_families(pair):
    F, G = pair
    assert nat_group(F, G).group.invariant_factors == brute_nat_invariants(F, G, limit=200000)


@given(pairs, st.randoms(use_true_random=False))
def test_factorization_matches_pointwise_enumeration(pair, rnd):
    F, G = pair
    ng = nat_group(F, G)
    alpha = ng.transformation(random_element(rnd, ng.group))
    fac = nat_factorize(alpha)
    for L in basis_modules(F.ring, F.variable_side):
        a = alpha.component(L)
        ker = _ker_order(a)
        img = len({a(x) for x in a.source.elements()})
        assert evaluate(fac.kernel, L).group.order == ker
        assert evaluate(fac.image, L).group.order == img
        assert evaluate(fac.cokernel, L).group.order * img == a.target.order
        K = evaluate(fac.kernel, L).group
        kernel_elems = [x for x in a.source.elements() if not any(a(x))]
        assert K.invariant_factors == brute_invariants(kernel_elems, a.source.add, a.source.zero)


@given(pairs, st.randoms(use_true_random=False))
def test_normal_forms_are_extensional(pair, rnd):
    F, G = pair
    ng = nat_group(F, G)
    x, y = random_element(rnd, ng.group), random_element(rnd, ng.group)
    a, b = ng.transformation(x), ng.transformation(y)
    same = all(a.component(L).equals(b.component(L)) for L in basis_modules(F.ring, F.variable_side))
    assert same == (ng.group.normalize(x) == ng.group.normalize(y))
    s = a + b
    for L in basis_modules(F.ring, F.variable_side):
        ca, cb, cs = a.component(L), b.component(L), s.component(L)
        for v in cs.source.elements():
            assert cs(v) == cs.target.add(ca(v), cb(v))


def test_corpus_functors_are_fp_functors():
    assert all(isinstance(F, FpFunctor) for F in CORPORA["Z4"])
    assert len(CORPORA["Z4"]) == 14
