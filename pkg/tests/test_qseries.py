import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qvertex import qseries as qs
from qvertex.field import RegularizationError, ResonanceError, UnsupportedInputError

Q = F(1, 2)


# ---- Pochhammer symbols ------------------------------------------------


def test_pochhammer_frozen_values():
    assert qs.q_pochhammer(F(3, 7), Q, 0) == 1
    assert qs.q_pochhammer(F(1), Q, 3) == 0
    assert qs.q_pochhammer(F(1, 4), F(1, 4), 2) == F(45, 64)  # (1-1/4)(1-1/16)
    assert qs.q_pochhammer(F(1, 4), F(1, 2), -1) == 2  # 1/(1 - a/q)


def test_pochhammer_negative_resonance_named():
    with pytest.raises(ResonanceError, match="q\\^\\(-1\\)"):
        qs.q_pochhammer(Q, Q, -1)  # 1 - q*q^-1 = 0


def test_pochhammer_recurrence():
    rng = random.Random(2)
    for _ in range(20):
        a = F(rng.randint(1, 19), rng.randint(1, 19))
        q = F(rng.randint(2, 9), rng.randint(2, 9))
        if q == 1:
            continue
        for k in range(-5, 11):
            try:
                lhs = qs.q_pochhammer(a, q, k + 1)
                rhs = qs.q_pochhammer(a, q, k) * (1 - a * q**k)
            except ResonanceError:
                continue
            assert lhs == rhs


def test_multi_pochhammer():
    assert qs.q_multi_pochhammer([F(1, 3), F(2, 5)], Q, 0) == 1
    assert qs.q_multi_pochhammer([F(1), F(3, 4)], Q, 1) == 0
    assert qs.q_multi_pochhammer([F(1, 4), F(1, 2)], F(1, 2), 1) == F(3, 8)


# ---- Gaussian binomials ------------------------------------------------


def test_qbinomial_values():
    assert qs.q_binomial(5, 0, F(2, 3)) == 1
    assert qs.q_binomial(2, 1, F(1, 3)) == F(4, 3)  # 1 + q
    assert qs.q_binomial(3, 5, F(2, 3)) == 0
    assert qs.q_binomial(4, -1, F(2, 3)) == 0


def test_qbinomial_at_one_is_binomial():
    from math import comb

    # polynomial evaluation survives the point where the ratio form is 0/0
    for n in range(8):
        for m in range(n + 1):
            assert qs.q_binomial(n, m, F(1)) == comb(n, m)


@given(n=st.integers(1, 12), m=st.integers(0, 12), num=st.integers(2, 9), den=st.integers(2, 9))
@settings(max_examples=60, derandomize=True, deadline=None)
def test_qbinomial_pascal_and_symmetry(n, m, num, den):
    q = F(num, den)
    lhs = qs.q_binomial(n, m, q)
    assert lhs == qs.q_binomial(n - 1, m, q) + q ** (n - m) * qs.q_binomial(n - 1, m - 1, q)
    assert lhs == qs.q_binomial(n, n - m, q)


def test_qbinomial_rejects_negative_n():
    with pytest.raises(ValueError):
        qs.q_binomial(-1, 0, Q)


# ---- terminating basic hypergeometric series ---------------------------


def test_phi_series_trivials():
    one = qs.phi_series(qs.SeriesSpec((F(1, 3), F(2, 7)), (F(3, 5),), Q, F(0)))
    assert one == 1
    # a numerator parameter equal to 1 kills everything past the first term
    assert qs.phi_series(qs.SeriesSpec((F(1), F(2, 7)), (F(3, 5),), Q, F(5, 7))) == 1


def test_phi_series_two_term_example():
    # 2_phi_1(q^-2, q^-2; q^-2; q^2, q^4) = 1 - q^2 at q = 1/2
    spec = qs.SeriesSpec((Q**-2, Q**-2), (Q**-2,), Q * Q, Q**4)
    assert qs.phi_series(spec) == F(3, 4)


def test_phi_series_requires_termination_or_cap():
    with pytest.raises(UnsupportedInputError):
        qs.phi_series(qs.SeriesSpec((F(1, 3),), (F(2, 7),), Q, F(1, 5)))
    capped = qs.phi_series(qs.SeriesSpec((F(1, 3),), (F(2, 7),), Q, F(1, 5), max_terms=3))
    # sum of the first three terms, written out
    t1 = (1 - F(1, 3)) / ((1 - Q) * (1 - F(2, 7))) * F(1, 5)
    t2 = t1 * (1 - F(1, 3) * Q) / ((1 - Q * Q) * (1 - F(2, 7) * Q)) * F(1, 5)
    assert capped == 1 + t1 + t2


def test_phi_series_regularization_error():
    # denominator hits zero at term 1, numerator would truncate later
    spec = qs.SeriesSpec((Q**-3,), (F(1),), Q, F(1, 5))
    with pytest.raises(RegularizationError):
        qs.phi_series(spec)


def test_series_termination_detection():
    assert qs.series_termination(qs.SeriesSpec((Q**-4, F(1, 3)), (F(2, 7),), Q, F(1, 5))) == 5
    assert qs.series_termination(qs.SeriesSpec((F(1, 3),), (F(2, 7),), Q, F(1, 5))) is None


# ---- transformation identities ----------------------------------------


def test_heine_chain_examples():
    assert qs.verify_heine_chain(Q**-2, Q**-1, Q**-3, F(3, 7), Q)
    assert qs.verify_heine_chain(F(1), F(1), F(1), F(3, 7), Q)
    with pytest.raises(ResonanceError):
        qs.verify_heine_chain(Q**-2, Q**-1, Q**-1, F(3, 7), Q)
    with pytest.raises(UnsupportedInputError):
        qs.verify_heine_chain(Q**-2, F(3, 5), F(7, 2), F(3, 7), Q)


def test_heine_chain_random_admissible():
    rng = random.Random(7)
    passes = 0
    while passes < 100:
        big = rng.randint(0, 3)
        small = rng.randint(0, big)
        c_extra = rng.randint(0, 3)
        q = F(rng.randint(1, 9), rng.randint(1, 9))
        if q in (0, 1):
            continue
        z = F(rng.randint(1, 19), rng.randint(1, 19))
        a, b = q**-big, q**-small
        if rng.random() < 0.5:
            a, b = b, a
        try:
            assert qs.verify_heine_chain(a, b, q ** -(big + c_extra), z, q)
        except ResonanceError:
            continue
        passes += 1


def test_sears_trivial_orders():
    assert qs.verify_sears(0, F(1, 3), F(2, 5), F(7, 3), F(1, 7), F(3, 4), Q)
    assert qs.verify_sears(1, F(1, 3), F(2, 5), F(7, 3), F(1, 7), F(3, 4), Q)


def test_sears_random():
    rng = random.Random(13)
    passes = 0
    while passes < 100:
        n = rng.randint(0, 4)
        q = F(rng.randint(1, 9), rng.randint(1, 9))
        if q in (0, 1):
            continue
        params = [F(rng.randint(1, 19), rng.randint(1, 19)) for _ in range(5)]
        try:
            assert qs.verify_sears(n, *params, q)
        except ResonanceError:
            continue
        passes += 1


def test_sears_balanced_instance_from_closed_form():
    # the parameter shape the rank-2 closed form feeds into the transformation:
    # base q^2, order i, with (I, J, i, j, j') = (3, 4, 3, 1, 3)
    q = Q
    big_q = q * q
    lam2 = F(1, 9)
    a = big_q**-3
    b = lam2 * q**-7
    c = lam2 * q
    d = lam2 * q**-5
    e = big_q**-4
    assert qs.verify_sears(3, a, b, c, d, e, big_q)
