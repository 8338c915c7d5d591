import pytest
from hypothesis import given, strategies as st

from fpcat.errors import MorphismError, SideMismatchError, SizeLimitError
from fpcat.modules import (
    LEFT,
    RIGHT,
    brute_hom_invariants,
    brute_tensor_invariants,
    direct_sum,
    factorize,
    free_module,
    hom_group,
    identity,
    is_exact_modules,
    make_module,
    make_morphism,
    modules_isomorphic,
    other_side,
    reduced,
    short_exact_sequence,
    tensor_group,
    zero_module,
)
from fpcat.rings import builtin_ring, make_zmod

Z4 = make_zmod(4)


def z2():
    return make_module(Z4, RIGHT, [[2]], label="Z/2")


def z4():
    return make_module(Z4, RIGHT, [], gens=1, label="Z/4")


@st.composite
def modules(draw, ring_names=("Z4", "Z6", "F2x2", "T2F2"), side=None):
    R = builtin_ring(draw(st.sampled_from(ring_names)))
    side = side or draw(st.sampled_from([RIGHT, LEFT]))
    gens = draw(st.integers(1, 2))
    rows = draw(st.lists(st.lists(st.integers(0, R.size - 1), min_size=gens, max_size=gens), max_size=2))
    return make_module(R, side, rows, gens=gens)


@st.composite
def module_pairs(draw, opposite_sides=False):
    M = draw(modules())
    R = M.ring
    name = {"F2[x]/(x^2)": "F2x2", "T2(F2)": "T2F2", "Z/4": "Z4", "Z/6": "Z6"}[R.label]
    side = other_side(M.side) if opposite_sides else M.side
    N = draw(modules(ring_names=(name,), side=side))
    return M, N


# examples


def test_presentations():
    assert make_module(Z4, RIGHT, [], gens=1).size == 4
    assert z2().size == 2
    assert make_module(Z4, RIGHT, [[1]]).size == 1


def test_morphism_validation():
    f = make_morphism(z2(), z4(), [[2]])
    assert f.is_mono() and not f.is_epi()
    M = z2()
    assert identity(M).is_mono() and identity(M).is_epi()
    with pytest.raises(MorphismError) as exc:
        make_morphism(z2(), z4(), [[1]])
    assert exc.value.relation == 0


def test_side_mismatch():
    # over a commutative ring both sides act through the same table, so only
    # a noncommutative ring can tell them apart
    T = builtin_ring("T2F2")
    with pytest.raises(SideMismatchError):
        make_morphism(make_module(T, RIGHT, [], gens=1), make_module(T, LEFT, [], gens=1), [[1]])
    assert make_morphism(z2(), make_module(Z4, LEFT, [[2]]), [[1]]).is_iso()


def test_size_limit():
    with pytest.raises(SizeLimitError):
        make_module(Z4, RIGHT, [], gens=7)


def test_hom_examples():
    assert hom_group(z2(), z4()).group.invariant_factors == (2,)
    assert brute_hom_invariants(z2(), z4()) == (2,)
    N = make_module(Z4, RIGHT, [[2, 0]], gens=2)
    assert hom_group(z4(), N).group.invariant_factors == N.group.invariant_factors
    assert hom_group(N, zero_module(Z4, RIGHT)).group.is_trivial


def test_tensor_examples():
    z2l = make_module(Z4, LEFT, [[2]])
    assert tensor_group(z2(), z2l).group.invariant_factors == (2,)
    assert brute_tensor_invariants(z2(), z2l) == (2,)
    N = make_module(Z4, LEFT, [[2, 0]], gens=2)
    assert tensor_group(z4(), N).group.invariant_factors == N.group.invariant_factors
    assert tensor_group(z2(), zero_module(Z4, LEFT)).group.is_trivial


def test_factorize_examples():
    fac = factorize(make_morphism(z2(), z4(), [[2]]))
    assert (fac.kernel.size, fac.image.size, fac.cokernel.size) == (1, 2, 2)
    M = make_module(Z4, RIGHT, [[2, 0]], gens=2)
    fac = factorize(identity(M))
    assert fac.kernel.size == 1 and fac.cokernel.size == 1
    N = z4()
    zero = make_morphism(M, N, [[0], [0]])
    fac = factorize(zero)
    assert fac.kernel.size == M.size and fac.cokernel.size == N.size


def test_direct_sum_examples():
    M = z2()
    S, _, _ = direct_sum(M, zero_module(Z4, RIGHT))
    assert modules_isomorphic(S, M) is not None
    S, _, _ = direct_sum(z2(), z2())
    assert S.size == 4 and S.group.invariant_factors == (2, 2)
    S, _, _ = direct_sum(z4(), z4())
    assert S.size == 16 and modules_isomorphic(S, free_module(Z4, RIGHT, 2)) is not None


def test_exactness_examples():
    seq = short_exact_sequence(make_morphism(z2(), z4(), [[2]]), make_morphism(z4(), z2(), [[1]]))
    assert seq.is_exact
    M = z2()
    assert is_exact_modules([identity(M), identity(M)]) == [False]
    assert identity(M).is_mono()


# properties


@given(module_pairs())
def test_hom_fast_matches_brute(pair):
    M, N = pair
    assert hom_group(M, N).group.invariant_factors == brute_hom_invariants(M, N)


@given(module_pairs(opposite_sides=True))
def test_tensor_fast_matches_brute(pair):
    M, N = pair
    if M.side == LEFT:
        M, N = N, M
    assert tensor_group(M, N).group.invariant_factors == brute_tensor_invariants(M, N)


@given(module_pairs(), st.randoms(use_true_random=False))
def test_factorization_counts_and_exactness(pair, rnd):
    M, N = pair
    hg = hom_group(M, N)
    phi = hg.morphism(tuple(rnd.randrange(d) for d in hg.group.invariant_factors))
    fac = factorize(phi)
    assert fac.kernel.size * fac.image.size == M.size
    assert fac.image.size * fac.cokernel.size == N.size
    assert all(is_exact_modules([fac.kernel_mono, phi, fac.cokernel_epi]))
    assert fac.image_mono.compose(fac.coimage_epi).equals(phi)
    assert fac.kernel_mono.is_mono() and fac.cokernel_epi.is_epi()


@given(modules())
def test_reduced_presentation_is_isomorphic(M):
    Mr, sigma, sigma_inv = reduced(M)
    assert sigma.is_iso()
    assert sigma_inv.compose(sigma).equals(identity(M))
    assert Mr.gens <= M.gens


@given(module_pairs())
def test_direct_sum_splits(pair):
    M, N = pair
    S, (i1, i2), (p1, p2) = direct_sum(M, N)
    assert S.size == M.size * N.size
    assert p1.compose(i1).equals(identity(M)) and p2.compose(i2).equals(identity(N))
    assert p2.compose(i1).is_zero()


@given(modules())
def test_free_module_units(M):
    R1 = free_module(M.ring, M.side, 1)
    assert hom_group(R1, M).group.invariant_factors == M.group.invariant_factors
    R1o = free_module(M.ring, other_side(M.side), 1)
    a, b = (M, R1o) if M.side == RIGHT else (R1o, M)
    assert tensor_group(a, b).group.invariant_factors == M.group.invariant_factors
