"""Verdict logic: forbidden cones, prime thresholds, the worked subgroup examples."""

import random
from fractions import Fraction

import pytest

from sigmabuild.sigma import (
    CERTAIN_IN,
    CERTAIN_OUT,
    CONJECTURAL_IN,
    SigmaContext,
    SigmaError,
    finiteness_type,
    in_delta_k,
    minimal_bad_support,
    prime_threshold,
    sigma_verdict,
)


def ctx_sl(n, primes):
    return SigmaContext.for_sl(n, primes)


def test_context_basics():
    ctx = ctx_sl(3, (2, 3))
    assert ctx.dim == 4
    assert ctx.basis == ((1, 2), (2, 2), (1, 3), (2, 3))
    assert ctx.sol  # threshold for A_2 is 2
    assert not ctx_sl(5, (3,)).sol  # threshold for A_4 is 8
    with pytest.raises(SigmaError):
        SigmaContext("A", 0, (2,))
    with pytest.raises(SigmaError):
        SigmaContext("A", 2, ())


def test_prime_threshold():
    assert prime_threshold("A", 2) == 2
    assert prime_threshold("A", 4) == 8
    assert prime_threshold("C", 2) == 8
    assert prime_threshold("D", 4) == 128
    with pytest.raises(SigmaError):
        prime_threshold("E", 8)


def test_in_delta_k():
    ctx = ctx_sl(3, (2, 3))
    chi = (1, 1, 1, 3)
    assert in_delta_k(ctx, chi, 4)
    assert not in_delta_k(ctx, chi, 3)
    assert not in_delta_k(ctx, (1, -1, 0, 0), 4)
    assert in_delta_k(ctx, (0, 0, 1, 0), 1)
    with pytest.raises(SigmaError):
        in_delta_k(ctx, (0, 0, 0, 0), 1)


def test_sigma_verdict_mixed_signs():
    ctx = ctx_sl(3, (5,))
    for k in (1, 2, 5, 9):
        v = sigma_verdict(ctx, (1, -1), k)
        assert v.kind == CERTAIN_IN


def test_sigma_verdict_support_cone():
    ctx = ctx_sl(3, (2, 3))
    chi = (1, 1, 1, 3)
    assert sigma_verdict(ctx, chi, 4).kind == CERTAIN_OUT
    assert sigma_verdict(ctx, chi, 3).kind == CERTAIN_IN  # threshold met at 2


def test_sigma_verdict_conjectural_branch():
    # SL_5 with p = 3 < 2^3: all-positive support 2
    ctx = ctx_sl(5, (3,))
    chi = (1, 2, 0, 0)
    assert sigma_verdict(ctx, chi, 2).kind == CERTAIN_OUT
    v = sigma_verdict(ctx, chi, 1)
    assert v.kind == CONJECTURAL_IN
    assert not v.certain


def test_scale_invariance():
    ctx = ctx_sl(3, (2, 3))
    rng = random.Random(3)
    for _ in range(100):
        chi = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
        if all(c == 0 for c in chi):
            continue
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        for k in (1, 2, 3, 4):
            scaled = sigma_verdict(ctx, tuple(lam * c for c in chi), k)
            assert sigma_verdict(ctx, chi, k).kind == scaled.kind


def test_monotone_in_k():
    ctx = ctx_sl(3, (2, 3))
    rng = random.Random(4)
    for _ in range(100):
        chi = tuple(Fraction(rng.randint(-2, 3)) for _ in range(4))
        if all(c == 0 for c in chi):
            continue
        out_at = [k for k in range(1, 5) if sigma_verdict(ctx, chi, k).kind == CERTAIN_OUT]
        # certain-out is upward closed in k
        assert out_at == list(range(min(out_at), 5)) if out_at else True


def test_minimal_bad_support_and_span_search():
    ctx = ctx_sl(3, (2, 3))
    # span{(1,-1,0,0)}: no non-negative non-zero vector
    s, w = minimal_bad_support(ctx, [(1, -1, 0, 0)])
    assert s is None
    # span{(1,1,1,3)}: the vector itself, support 4
    s, w = minimal_bad_support(ctx, [(1, 1, 1, 3)])
    assert s == 4
    # a 2-dim span containing a support-1 ray: (1,1,0,0) - (0,1,0,0)
    s, w = minimal_bad_support(ctx, [(1, 1, 0, 0), (0, 1, 0, 0)])
    assert s == 1


def test_finiteness_example_h1():
    # n = 3, kernel of chi_{1,p} - chi_{2,p}: type F-infinity
    ctx = ctx_sl(3, (5,))
    for k in (1, 3, 10):
        v = finiteness_type(ctx, [(1, -1)], k)
        assert v.kind == CERTAIN_IN
        assert "infinity" in v.justification


def test_finiteness_example_h2():
    # n = 3, S = {p, q}: kernel of chi_1p + chi_2p + chi_1q + 3 chi_2q
    ctx = ctx_sl(3, (2, 3))
    chi = (1, 1, 1, 3)
    assert finiteness_type(ctx, [chi], 4).kind == CERTAIN_OUT
    assert finiteness_type(ctx, [chi], 3).kind == CERTAIN_IN


def test_finiteness_example_h3():
    # n = 3, S = {2, 3}: the all-ones character; |S|*(n-1) = 4
    ctx = ctx_sl(3, (2, 3))
    ones = (1, 1, 1, 1)
    assert finiteness_type(ctx, [ones], 4).kind == CERTAIN_OUT
    assert finiteness_type(ctx, [ones], 3).kind == CERTAIN_IN


def test_finiteness_consistency_with_sigma_verdict():
    # W = span{chi}: F_k iff both rays +-chi are in the k-th invariant
    ctx = ctx_sl(3, (2, 3))
    rng = random.Random(11)
    for _ in range(60):
        chi = tuple(Fraction(rng.randint(-2, 2)) for _ in range(4))
        if all(c == 0 for c in chi):
            continue
        for k in (1, 2, 3, 4):
            ft = finiteness_type(ctx, [chi], k)
            v_plus = sigma_verdict(ctx, chi, k)
            v_minus = sigma_verdict(ctx, tuple(-c for c in chi), k)
            both_in = v_plus.kind != CERTAIN_OUT and v_minus.kind != CERTAIN_OUT
            assert (ft.kind != CERTAIN_OUT) == both_in


def test_coefficient_round_trip():
    # extracting the dense coefficient vector and rebuilding the character
    # over the basis index set is the identity
    from sigmabuild.chevalley import CharacterVec

    ctx = ctx_sl(4, (2, 7))
    rng = random.Random(9)
    for _ in range(100):
        coeffs = {
            (k, p): Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            for p in ctx.primes
            for k in range(1, 4)
        }
        chi = CharacterVec(4, ctx.primes, coeffs)
        vec = chi.vector()
        rebuilt = CharacterVec(
            4,
            ctx.primes,
            {
                (k, p): vec[j * 3 + (k - 1)]
                for j, p in enumerate(ctx.primes)
                for k in range(1, 4)
            },
        )
        assert rebuilt == chi
        assert rebuilt.vector() == vec


def test_degenerate_whole_space():
    ctx = ctx_sl(3, (2,))
    gens = [(1, 0), (0, 1)]
    v = finiteness_type(ctx, gens, 1)
    assert v.kind == CERTAIN_OUT  # basis vectors themselves vanish
