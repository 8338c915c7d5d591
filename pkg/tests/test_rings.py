import itertools
import json

import pytest

from fpcat.config import configure
from fpcat.errors import AxiomError, SizeLimitError, UnsupportedRingError
from fpcat.modules import LEFT, RIGHT, basis_modules, endomorphism_ring_is_local
from fpcat.rings import (
    SUPPORTED_RINGS,
    builtin_ring,
    load_ring,
    make_dual_numbers_f2,
    make_table_ring,
    make_upper_triangular_f2,
    make_zmod,
    opposite,
    ring_from_json,
    validate,
)


def test_zero_ring():
    R = make_zmod(1)
    assert R.size == 1 and R.zero == R.one


def test_zmod_arithmetic():
    Z4, Z6 = make_zmod(4), make_zmod(6)
    assert Z4.mul(2, 2) == 0
    assert Z6.mul(2, 3) == 0 and Z6.mul(3, 3) == 3


def test_zmod_size_cap():
    with pytest.raises(SizeLimitError):
        make_zmod(65)
    with configure(max_ring_size=8):
        with pytest.raises(SizeLimitError):
            make_zmod(9)


def _polys():
    # independent construction from coefficient pairs (a, b) = a + b x
    elems = list(itertools.product(range(2), repeat=2))
    return elems, lambda p, q: ((p[0] + q[0]) % 2, (p[1] + q[1]) % 2), \
        lambda p, q: ((p[0] * q[0]) % 2, (p[0] * q[1] + p[1] * q[0]) % 2)


def test_dual_numbers_match_polynomial_arithmetic():
    R = make_dual_numbers_f2()
    elems, add, mul = _polys()
    index = {e: e[0] + 2 * e[1] for e in elems}
    for p in elems:
        for q in elems:
            assert R.add(index[p], index[q]) == index[add(p, q)]
            assert R.mul(index[p], index[q]) == index[mul(p, q)]
    x = index[(0, 1)]
    assert R.mul(x, x) == R.zero


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) % 2 for j in range(2)) for i in range(2))


def test_triangular_ring_matches_matrix_arithmetic():
    T = make_upper_triangular_f2()
    mats = {}
    for a, b, c in itertools.product(range(2), repeat=3):
        mats[a + 2 * b + 4 * c] = ((a, b), (0, c))
    for i, j in itertools.product(range(8), repeat=2):
        assert mats[T.mul(i, j)] == _matmul(mats[i], mats[j])
    e11, e12 = 1, 2
    assert T.mul(e12, e11) != T.mul(e11, e12)
    assert not T.is_commutative and T.one == 5


def _algebra_table(products):
    """Unital bilinear product on (Z/2)^3 with basis 1, u, v (bits 0, 1, 2)."""
    def mul(a, b):
        out = 0
        for i in range(3):
            for j in range(3):
                if (a >> i) & 1 and (b >> j) & 1:
                    out ^= products[i][j]
        return out
    return [[a ^ b for b in range(8)] for a in range(8)], [[mul(a, b) for b in range(8)] for a in range(8)]


def test_non_associative_table_is_rejected():
    one, u, v = 1, 2, 4
    # u*v = u and every other product of u, v vanishes: (u v) v = u but u (v v) = 0
    products = [[one, u, v], [u, 0, u], [v, 0, 0]]
    add, mul = _algebra_table(products)
    with pytest.raises(AxiomError) as exc:
        make_table_ring(add, mul, 0, 1)
    assert exc.value.axiom == "associativity"
    a, b, c = exc.value.witness
    assert mul[mul[a][b]][c] != mul[a][mul[b][c]]


def test_associative_algebra_table_is_accepted():
    one, u, v = 1, 2, 4
    # F2[u, v]/(u, v)^2
    add, mul = _algebra_table([[one, u, v], [u, 0, 0], [v, 0, 0]])
    R = make_table_ring(add, mul, 0, 1)
    assert R.is_commutative and R.size == 8


def test_opposite_of_commutative_ring_has_same_tables():
    Z4 = make_zmod(4)
    assert opposite(Z4).mul_table == Z4.mul_table


def test_opposite_swaps_triangular_products():
    T = make_upper_triangular_f2()
    op = opposite(T)
    e12, e22 = 2, 4
    assert op.mul(e12, e22) == T.mul(e22, e12)
    assert op.mul(e22, e12) == T.mul(e12, e22)
    assert T.mul(e12, e22) != T.mul(e22, e12)
    assert opposite(op).mul_table == T.mul_table
    assert op.opposite is T


@pytest.mark.parametrize("name", SUPPORTED_RINGS)
def test_builtin_rings_validate(name):
    R = builtin_ring(name)
    validate(R)
    validate(R.opposite)
    assert R.basis is not None


@pytest.mark.parametrize("name", SUPPORTED_RINGS)
def test_basis_modules_are_indecomposable(name):
    R = builtin_ring(name)
    for side in (RIGHT, LEFT):
        mods = basis_modules(R, side)
        assert mods
        for M in mods:
            # Z/6 keeps the decomposable ring itself next to its two simples
            if name == "Z6" and M.size == 6:
                assert not endomorphism_ring_is_local(M)
                continue
            assert endomorphism_ring_is_local(M), (name, side, M.label)


def test_unknown_builtin():
    with pytest.raises(UnsupportedRingError):
        builtin_ring("Q")


def test_json_round_trip(tmp_path):
    T = make_upper_triangular_f2()
    path = tmp_path / "t.json"
    path.write_text(json.dumps(T.to_json()))
    back = load_ring(str(path))
    assert back == T
    assert back.basis == T.basis
    data = T.to_json()
    data["size"] = 9
    with pytest.raises(AxiomError):
        ring_from_json(data)
