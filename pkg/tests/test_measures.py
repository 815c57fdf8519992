"""Exact determinant routes against the full Cayley-matrix oracle.

Every fast formula here (character products, the order-p^3 block
factorization, the binomial shortcut, the two-part dihedral/dicyclic
reductions, and the inlined p = 3 kernel) is checked against
group_determinant, which builds the honest n x n matrix and eliminates.
"""

import math
import random

import cmath
import pytest

from groupdet import (
    CycInt,
    GroupRingElt,
    HeisenbergPoly,
    NotInteger,
    abelian_measure,
    char_product_2d,
    circulant_det,
    cyclic_group,
    dicyclic_group,
    dicyclic_measure,
    dihedral_group,
    dihedral_measure,
    elementary_group,
    group_determinant,
    heisenberg_binomial_measure,
    heisenberg_fourier_coeffs,
    heisenberg_measure,
    heisenberg_phi_matrix,
    measure_h3,
    negacirculant_det,
    to_group_ring,
)
from groupdet.measures import certified_int_product
from groupdet.verify import random_heisenberg_poly


# -- abelian character products --------------------------------------------


def test_cyclic_three_simple_value():
    g = cyclic_group(3)
    f = GroupRingElt.from_terms(g, [((0,), 1), ((1,), 1)])  # 1 + x
    # (1+1)(1+w)(1+w^2) = 2 * (w^3 + ... ) = 2
    assert abelian_measure(f) == 2
    assert group_determinant(f) == 2


@pytest.mark.parametrize("g", [cyclic_group(3), cyclic_group(5),
                               elementary_group(3, 2)])
def test_abelian_measure_matches_oracle(g):
    rng = random.Random(60 + g.order)
    for _ in range(30):
        f = GroupRingElt.from_terms(
            g, [(e, rng.randint(-5, 5)) for e in g.element_exps])
        assert abelian_measure(f) == group_determinant(f)


def test_abelian_measure_rejects_mixed_orders():
    from groupdet import InvalidParameter, product_group
    g = product_group((2, 3))
    f = GroupRingElt.from_terms(g, [((0, 0), 1)])
    with pytest.raises(InvalidParameter):
        abelian_measure(f)


def test_circulant_matches_oracle_composite_order():
    rng = random.Random(61)
    g = cyclic_group(6)
    for _ in range(20):
        h = [rng.randint(-4, 4) for _ in range(6)]
        f = GroupRingElt.from_terms(g, [((i,), c) for i, c in enumerate(h)])
        assert circulant_det(h, 6) == group_determinant(f)


def test_certified_product_refuses_non_integers():
    with pytest.raises(NotInteger):
        certified_int_product([CycInt.root(3)])


# -- the order-p^3 block structure ------------------------------------------


def test_block_matrix_of_central_generator():
    # F = z: every block is the scalar w^j
    f = HeisenbergPoly.from_terms(3, [((0, 0, 1), 1)])
    for j in (1, 2):
        m = heisenberg_phi_matrix(f, j)
        for r in range(3):
            for c in range(3):
                expect = CycInt.root(3, j) if r == c else CycInt.zero(3)
                assert m[r][c] == expect


def test_block_matrix_of_x_is_the_shift():
    f = HeisenbergPoly.from_terms(5, [((1, 0, 0), 1)])
    m = heisenberg_phi_matrix(f, 2)
    for r in range(5):
        for c in range(5):
            expect = CycInt.one(5) if (r - c) % 5 == 1 else CycInt.zero(5)
            assert m[r][c] == expect


def test_block_matrix_of_y_is_diagonal_of_powers():
    p, j = 5, 3
    f = HeisenbergPoly.from_terms(p, [((0, 1, 0), 1)])
    m = heisenberg_phi_matrix(f, j)
    for r in range(p):
        for c in range(p):
            expect = CycInt.root(p, (j * c) % p) if r == c else CycInt.zero(p)
            assert m[r][c] == expect


@pytest.mark.parametrize("exps", [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
def test_generators_have_unit_determinant(exps):
    f = HeisenbergPoly.from_terms(3, [(exps, 1)])
    fac = heisenberg_measure(f)
    assert fac.m == 1
    assert group_determinant(to_group_ring(f)) == 1


@pytest.mark.parametrize("p", [3, 5])
def test_factorization_matches_oracle(p):
    rng = random.Random(62 + p)
    for _ in range(25 if p == 3 else 5):
        f = random_heisenberg_poly(rng, p, 5)
        fac = heisenberg_measure(f)
        assert fac.m == fac.m1 * fac.m2 ** p
        assert fac.m == group_determinant(to_group_ring(f))


def test_x_free_input_reduces_to_character_product():
    # without x the group acts through its order-p^2 abelian quotient,
    # so M is the two-variable character product to the p-th power
    rng = random.Random(63)
    p = 3
    for _ in range(20):
        grid = [[rng.randint(-4, 4) for _ in range(p)] for _ in range(p)]
        f = HeisenbergPoly.from_terms(
            p, [((0, j, k), grid[j][k]) for j in range(p) for k in range(p)])
        assert heisenberg_measure(f).m == char_product_2d(grid, p) ** p


# -- binomial shortcut -------------------------------------------------------


def test_binomial_example_value():
    # F = z + x y has determinant 512 at p = 3
    fac = heisenberg_binomial_measure([[0, 1]], [[0], [1]], 1, 3)
    assert fac.m == 512
    full = heisenberg_measure(
        HeisenbergPoly.from_terms(3, [((0, 0, 1), 1), ((1, 1, 0), 1)]))
    assert (full.m, full.m1, full.m2) == (fac.m, fac.m1, fac.m2)


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (5, 2)])
def test_binomial_matches_generic_route(p, k):
    rng = random.Random(64 + p + k)
    for _ in range(10):
        f0 = [[rng.randint(-3, 3) for _ in range(p)] for _ in range(p)]
        fk = [[rng.randint(-3, 3) for _ in range(p)] for _ in range(p)]
        terms = [((0, j, kk), f0[j][kk]) for j in range(p) for kk in range(p)]
        terms += [((k, j, kk), fk[j][kk]) for j in range(p) for kk in range(p)]
        fac_short = heisenberg_binomial_measure(f0, fk, k, p)
        fac_full = heisenberg_measure(HeisenbergPoly.from_terms(p, terms))
        assert fac_short.m == fac_full.m
        assert fac_short.m1 == fac_full.m1
        assert fac_short.m2 == fac_full.m2


def test_binomial_rejects_bad_exponent():
    from groupdet import InvalidParameter
    with pytest.raises(InvalidParameter):
        heisenberg_binomial_measure([[1]], [[1]], 0, 3)
    with pytest.raises(InvalidParameter):
        heisenberg_binomial_measure([[1]], [[1]], 3, 3)


# -- averaged circulant coefficients ----------------------------------------


@pytest.mark.parametrize("p", [3, 5])
def test_fourier_coefficients_carry_the_congruences(p):
    rng = random.Random(65 + p)
    for _ in range(15):
        f = random_heisenberg_poly(rng, p, 4)
        fac = heisenberg_measure(f, want_c0=True)
        cs = fac.fourier_coeffs
        assert len(cs) == p
        # non-constant coefficients are all divisible by p
        assert all(c % p == 0 for c in cs[1:])
        # the constant one reduces to F(1,1,1)^p mod p
        assert fac.c0 % p == pow(f.value_at_one(), p, p)
        # and the nonabelian factor is c0^(p-1) mod p^2
        assert fac.m2 % p ** 2 == pow(fac.c0, p - 1, p ** 2)
        # their product over all blocks: M2^p = c0^(p(p-1)) mod p^3
        assert fac.m2 ** p % p ** 3 == pow(fac.c0, p * (p - 1), p ** 3)


def test_fourier_sum_is_the_circulant_value():
    # evaluating the folded polynomial at y = 1 recovers the circulant
    # determinant of F(x, 1, 1), i.e. the product over x-characters
    rng = random.Random(66)
    p = 3
    for _ in range(10):
        f = random_heisenberg_poly(rng, p, 4)
        cs = heisenberg_fourier_coeffs(f)
        grid = f.collapse_z()
        h = [sum(row) for row in grid]  # F(x, 1, 1) coefficients
        assert sum(cs) == circulant_det(h, p)


# -- dihedral / dicyclic -----------------------------------------------------


def _two_part_elt(g, f, gg):
    half = g.order // 2
    terms = [((i, 0), c) for i, c in enumerate(f)]
    terms += [((i, 1), c) for i, c in enumerate(gg)]
    return GroupRingElt.from_terms(g, terms)


@pytest.mark.parametrize("order", [6, 8, 10])
def test_dihedral_matches_oracle(order):
    rng = random.Random(67 + order)
    n = order // 2
    g = dihedral_group(order)
    for _ in range(15):
        f = [rng.randint(-4, 4) for _ in range(n)]
        gg = [rng.randint(-4, 4) for _ in range(n)]
        assert dihedral_measure(f, gg, n) == \
            group_determinant(_two_part_elt(g, f, gg))


@pytest.mark.parametrize("order", [4, 8, 12])
def test_dicyclic_matches_oracle(order):
    rng = random.Random(68 + order)
    n = order // 4
    g = dicyclic_group(order)
    for _ in range(15):
        f = [rng.randint(-4, 4) for _ in range(2 * n)]
        gg = [rng.randint(-4, 4) for _ in range(2 * n)]
        assert dicyclic_measure(f, gg, n) == \
            group_determinant(_two_part_elt(g, f, gg))


def test_negacirculant_against_numeric_roots():
    # det = prod of h(z) over the primitive 2n-th "odd" roots z of x^n = -1
    rng = random.Random(69)
    for n in (2, 3, 4, 5):
        for _ in range(10):
            h = [rng.randint(-4, 4) for _ in range(n)]
            got = negacirculant_det(h, n)
            prod = 1 + 0j
            for k in range(n):
                z = cmath.exp(1j * math.pi * (2 * k + 1) / n)
                prod *= sum(c * z ** i for i, c in enumerate(h))
            assert got == round(prod.real)
            assert abs(prod.imag) < 1e-6 * max(1.0, abs(prod.real))


def test_two_part_inputs_fold():
    # coefficients beyond the rotation order wrap around
    assert dihedral_measure([1, 2, 0, 3], [0, 0], 2) == \
        dihedral_measure([1, 5], [0, 0], 2)
    a = dihedral_measure([1, 2, 3, 4], [1, 0, 0, 0], 4)
    b = dihedral_measure([1, 2, 3, 4, 0, 0, 0, 0], [1, 0, 0, 0], 4)
    assert a == b


# -- the inlined p = 3 kernel ------------------------------------------------


def test_fast_kernel_matches_generic():
    rng = random.Random(70)
    for _ in range(300):
        flat = [rng.randint(-5, 5) for _ in range(27)]
        f = HeisenbergPoly.from_terms(
            3, [((i, j, k), flat[9 * i + 3 * j + k])
                for i in range(3) for j in range(3) for k in range(3)])
        assert measure_h3(flat) == heisenberg_measure(f).m


def test_fast_kernel_flat_order_matches_poly_flat():
    f = HeisenbergPoly.from_terms(3, [((1, 2, 0), 4), ((0, 0, 1), -2)])
    assert measure_h3(f.flat()) == heisenberg_measure(f).m
