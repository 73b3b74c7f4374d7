"""Steinberg relations, Borel splitting, valuations and characters for SL_n."""

import random
from fractions import Fraction

import pytest

from sigmabuild.chevalley import (
    BorelDecomposition,
    CharacterVec,
    ChevalleyError,
    GroupElement,
    borel_decompose,
    character_eval,
    h_elem,
    identity_element,
    in_o_s,
    is_s_unit,
    root_position,
    torus_projection,
    valuation,
    w_elem,
    x_elem,
)
from sigmabuild.root_system import build_root_system


def rand_rational(rng, nonzero=False, primes=None):
    """A random rational; with `primes`, an S-arithmetic one."""
    while True:
        num = rng.randint(-30, 30)
        if primes:
            den = 1
            for p in primes:
                den *= p ** rng.randint(0, 2)
        else:
            den = rng.randint(1, 12)
        x = Fraction(num, den)
        if not nonzero or x != 0:
            return x


def all_roots(n):
    datum = build_root_system("A", n - 1)
    return datum.all_roots


def test_root_positions():
    assert root_position(3, (1, 0)) == (0, 1)
    assert root_position(3, (0, 1)) == (1, 2)
    assert root_position(3, (1, 1)) == (0, 2)
    assert root_position(3, (-1, -1)) == (2, 0)
    with pytest.raises(ChevalleyError):
        root_position(3, (1, -1))


def test_x_identity_and_additivity():
    alpha = (1,)
    assert x_elem(2, alpha, 0) == identity_element(2)
    assert x_elem(2, alpha, 3) * x_elem(2, alpha, 4) == x_elem(2, alpha, 7)


def test_additivity_random_all_roots():
    rng = random.Random(2024)
    for n in (2, 3):
        for root in all_roots(n):
            for _ in range(20):
                s, t = rand_rational(rng), rand_rational(rng)
                assert x_elem(n, root, s) * x_elem(n, root, t) == x_elem(n, root, s + t)


def test_commutator_a2_single_factor():
    rng = random.Random(5)
    a1, a2 = (1, 0), (0, 1)
    apb = (1, 1)
    for _ in range(50):
        s, t = rand_rational(rng, nonzero=True), rand_rational(rng, nonzero=True)
        comm = x_elem(3, a1, s).commutator(x_elem(3, a2, t))
        # a single x_{alpha+beta} factor with coefficient +- s t
        assert comm in (x_elem(3, apb, s * t), x_elem(3, apb, -s * t))
        assert comm == x_elem(3, apb, s * t)  # observed sign in this realization


def test_w_and_h_shape_sl2():
    alpha = (1,)
    t = Fraction(5, 3)
    w = w_elem(2, alpha, t)
    assert w.rows == ((0, t), (-1 / t, 0))
    h = h_elem(2, alpha, t)
    assert h.rows == ((t, 0), (0, 1 / t))
    assert h_elem(2, alpha, 1) == identity_element(2)
    with pytest.raises(ChevalleyError):
        w_elem(2, alpha, 0)


def test_h_at_prime():
    p = 7
    h = h_elem(2, (1,), p)
    assert h.diagonal() == (Fraction(p), Fraction(1, p))


def test_relation_d_conjugation_by_omega():
    rng = random.Random(31)
    for n in (2, 3):
        datum = build_root_system("A", n - 1)
        for alpha in datum.all_roots:
            omega = w_elem(n, alpha, 1)
            for beta in datum.all_roots:
                from sigmabuild.root_system import cartan_pairing

                c = cartan_pairing(datum, beta, alpha)
                s_beta = tuple(b - c * a for b, a in zip(beta, alpha))
                t = rand_rational(rng, nonzero=True)
                conj = omega * x_elem(n, beta, t) * omega.inv()
                assert conj in (x_elem(n, s_beta, t), x_elem(n, s_beta, -t))


def test_relation_e_torus_conjugation():
    rng = random.Random(77)
    for n in (2, 3):
        datum = build_root_system("A", n - 1)
        for alpha in datum.all_roots:
            for beta in datum.all_roots:
                from sigmabuild.root_system import cartan_pairing

                pairing = cartan_pairing(datum, beta, alpha)
                assert pairing.denominator == 1
                t = rand_rational(rng, nonzero=True)
                s = rand_rational(rng)
                lhs = h_elem(n, alpha, t) * x_elem(n, beta, s) * h_elem(n, alpha, t).inv()
                assert lhs == x_elem(n, beta, t ** int(pairing) * s)


def test_commutator_with_torus_is_power():
    rng = random.Random(13)
    for p in (2, 3, 5):
        for _ in range(20):
            s = rand_rational(rng, nonzero=True)
            lhs = h_elem(2, (1,), p).commutator(x_elem(2, (1,), s))
            assert lhs == x_elem(2, (1,), s) ** (p * p - 1)


def test_h_multiplicative():
    rng = random.Random(3)
    for _ in range(50):
        s = rand_rational(rng, nonzero=True)
        t = rand_rational(rng, nonzero=True)
        assert h_elem(3, (1, 0), s) * h_elem(3, (1, 0), t) == h_elem(3, (1, 0), s * t)


def test_torus_freeness_on_grid():
    # (k_1, k_2) -> h_{a1}(2^k1) h_{a2}(2^k2) is injective on a grid
    seen = {}
    for k1 in range(-2, 3):
        for k2 in range(-2, 3):
            g = h_elem(3, (1, 0), Fraction(2) ** k1) * h_elem(3, (0, 1), Fraction(2) ** k2)
            assert g not in seen
            seen[g] = (k1, k2)


def test_borel_decompose():
    assert borel_decompose(identity_element(3)) == BorelDecomposition(
        identity_element(3), identity_element(3)
    )
    p = Fraction(5)
    g = GroupElement([[p, 0, 0], [0, 1, 0], [0, 0, 1 / p]]) * x_elem(3, (1, 0), 7)
    dec = borel_decompose(g)
    assert dec.torus.diagonal() == (p, 1, 1 / p)
    assert dec.unipotent.is_unipotent_upper()
    assert dec.torus * dec.unipotent == g
    with pytest.raises(ChevalleyError):
        borel_decompose(x_elem(2, (-1,), 1))


def random_borel(rng, n, primes):
    """A random upper-triangular S-arithmetic matrix."""
    g = identity_element(n)
    datum = build_root_system("A", n - 1)
    for root in datum.positive_roots:
        g = g * x_elem(n, root, rand_rational(rng, primes=primes))
    for k in range(1, n):
        e = rng.randint(-2, 2)
        root = tuple(1 if i == k - 1 else 0 for i in range(n - 1))
        p = rng.choice(primes)
        g = g * h_elem(n, root, Fraction(p) ** e)
    return g


def test_delta_multiplicative_on_borel_pairs():
    rng = random.Random(99)
    primes = (2, 5)
    for _ in range(100):
        g1 = random_borel(rng, 3, primes)
        g2 = random_borel(rng, 3, primes)
        assert torus_projection(g1 * g2) == torus_projection(g1) * torus_projection(g2)


def test_commutators_are_unipotent():
    rng = random.Random(4)
    primes = (2, 3)
    for _ in range(50):
        g1 = random_borel(rng, 3, primes)
        g2 = random_borel(rng, 3, primes)
        assert g1.commutator(g2).is_unipotent_upper()


def test_valuation():
    assert valuation(8, 2) == 3
    assert valuation(Fraction(2, 9), 3) == -2
    assert valuation(7, 5) == 0
    with pytest.raises(ChevalleyError):
        valuation(0, 2)
    rng = random.Random(6)
    for _ in range(50):
        x = rand_rational(rng, nonzero=True)
        y = rand_rational(rng, nonzero=True)
        assert valuation(x * y, 3) == valuation(x, 3) + valuation(y, 3)


def test_s_arithmetic_predicates():
    assert in_o_s(Fraction(3, 4), (2,))
    assert not in_o_s(Fraction(1, 3), (2,))
    assert is_s_unit(Fraction(4, 1), (2,))
    assert is_s_unit(Fraction(-8, 1), (2,))
    assert not is_s_unit(Fraction(6, 1), (2,))
    assert not is_s_unit(Fraction(0), (2,))


def test_character_eval_examples():
    p = 5
    chi = CharacterVec(3, (p,), {(1, p): 1})
    g = GroupElement([[p, 0, 0], [0, 1, 0], [0, 0, Fraction(1, p)]])
    assert character_eval(chi, g) == -1  # v_p(1) - v_p(p)
    # vanishes on unipotents
    u = x_elem(3, (1, 0), Fraction(7, 5))
    assert character_eval(chi, u) == 0
    # additivity on products
    rng = random.Random(15)
    for _ in range(50):
        g1 = random_borel(rng, 3, (p,))
        g2 = random_borel(rng, 3, (p,))
        assert character_eval(chi, g1 * g2) == character_eval(chi, g1) + character_eval(
            chi, g2
        )


def test_character_eval_rejects_non_s_arithmetic():
    chi = CharacterVec(2, (2,), {(1, 2): 1})
    g = GroupElement([[Fraction(3), 0], [0, Fraction(1, 3)]])
    with pytest.raises(ChevalleyError):
        character_eval(chi, g)


def test_kernel_membership_example():
    # (a_ij) is killed by chi_{1,p} - chi_{2,p} iff v_p(a11) = -v_p(a33), v_p(a22) = 0
    p = 3
    chi = CharacterVec(3, (p,), {(1, p): 1, (2, p): -1})
    rng = random.Random(8)
    for _ in range(100):
        g = random_borel(rng, 3, (p,))
        d = g.diagonal()
        expected = valuation(d[0], p) == -valuation(d[2], p) and valuation(d[1], p) == 0
        assert (character_eval(chi, g) == 0) == expected
