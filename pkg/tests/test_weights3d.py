import itertools
from fractions import Fraction as F

import pytest

from qvertex import weights3d as w3

Q = F(1, 2)


def conserving_pairs(max_occ, signed_third=False):
    """All (row, col) with both deltas satisfied and entries <= max_occ."""
    third = range(-max_occ, max_occ + 1) if signed_third else range(max_occ + 1)
    for n1, n2, n3, m1 in itertools.product(
        range(max_occ + 1), range(max_occ + 1), third, range(max_occ + 1)
    ):
        m2 = n1 + n2 - m1
        if m2 < 0 or m2 > max_occ:
            continue
        m3 = n2 + n3 - m2
        if signed_third:
            if not -max_occ <= m3 <= max_occ:
                continue
        elif not 0 <= m3 <= max_occ:
            continue
        yield (n1, n2, n3), (m1, m2, m3)


def test_element_frozen_values():
    assert w3.r3d_element((0, 0, 0), (0, 0, 0), Q) == 1
    assert w3.r3d_element((1, 0, 0), (0, 0, 1), Q) == 0  # violates n1+n2 conservation
    assert w3.r3d_element((0, 1, 0), (1, 0, 1), Q) == 3  # q^-2 * (1 - q^2)


def test_element_rejects_negative():
    with pytest.raises(ValueError):
        w3.r3d_element((0, 0, -1), (0, 0, -1), Q)
    with pytest.raises(ValueError):
        w3.r3d_element_signed((-1, 0, 0), (0, -1, 0), Q)


def test_signed_agrees_with_plain_on_nonnegative():
    for row, col in conserving_pairs(2):
        assert w3.r3d_element_signed(row, col, Q) == w3.r3d_element(row, col, Q)


def test_mixed_sign_elements_vanish():
    # continued elements with n3 < 0 <= n3' are all zero
    count = 0
    for row, col in conserving_pairs(3, signed_third=True):
        if row[2] < 0 <= col[2]:
            assert w3.r3d_element_signed(row, col, Q) == 0
            count += 1
    assert count >= 20


def test_reflection_symmetry():
    for row, col in conserving_pairs(3):
        n1, n2, n3 = row
        m1, m2, m3 = col
        assert w3.r3d_element(row, col, Q) == w3.r3d_element((n3, n2, n1), (m3, m2, m1), Q)


def test_weighted_transposition_symmetries():
    qq = Q * Q
    from qvertex.qseries import q_pochhammer as poch

    for row, col in conserving_pairs(3):
        n1, n2, n3 = row
        m1, m2, m3 = col
        lhs = w3.r3d_element(row, col, Q)
        # swap second and third arguments, transposing roles of n1 and n1'
        rhs1 = (
            Q ** (n3 - n2 + n1 * n1 - m1 * m1)
            * poch(qq, qq, m1)
            / poch(qq, qq, n1)
            * w3.r3d_element((m1, n3, n2), (n1, m3, m2), Q)
        )
        assert lhs == rhs1
        rhs2 = (
            Q ** (n1 - n2 + n3 * n3 - m3 * m3)
            * poch(qq, qq, m3)
            / poch(qq, qq, n3)
            * w3.r3d_element((n2, n1, m3), (m2, m1, n3), Q)
        )
        assert lhs == rhs2
        pref = Q ** ((n3 + m3 + 2 * m1 - 2 * n2 + 1) * (n1 - m1))
        ratio = F(1)
        for a, b in zip(row, col):
            ratio *= poch(qq, qq, b) / poch(qq, qq, a)
        assert lhs == pref * ratio * w3.r3d_element(col, row, Q)


def test_q_inversion_symmetry():
    for row, col in conserving_pairs(2):
        n1, n2, n3 = row
        m1, m2, m3 = col
        lhs = w3.r3d_element(row, col, 1 / Q)
        rhs = Q ** ((n1 - m2) * (n2 - m2 - 1)) * w3.r3d_element_signed(
            (n1, n2, -m3 - 1), (m1, m2, -n3 - 1), Q
        )
        assert lhs == rhs


def test_positivity_in_unit_interval():
    for q in (F(1, 2), F(2, 3)):
        for row, col in conserving_pairs(4):
            assert w3.r3d_element(row, col, q) > 0


def test_tetrahedron_small():
    assert w3.tetrahedron_check(0, F(7, 9))
    assert w3.tetrahedron_check(1, Q)
    assert w3.tetrahedron_mismatch(1, F(2, 3)) is None


def test_column_matches_elements():
    col = (2, 1, 1)
    column = w3.r3d_column(col, Q)
    for row, val in column.items():
        assert w3.r3d_element(row, col, Q) == val
        assert val != 0
