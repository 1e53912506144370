"""Matrix elements of the three-dimensional R operator on a triple of Fock
spaces, and a tetrahedron-equation checker.

The element with row (bra) occupations (n1, n2, n3) and column (ket)
occupations (n1', n2', n3') conserves n1+n2 and n2+n3, carries the
monomial prefactor q^(-n2(1+n1+n3) - n1'n3') and a Gaussian binomial, and
closes with a terminating 2_phi_1 in base q^2.  Up to the monomial
prefactor it is a polynomial in q^(2 n3'), so the third components may be
continued to negative integers; the signed variant does exactly that.
"""

from __future__ import annotations

from typing import Dict, Iterator, Tuple

from .field import Scalar
from .qseries import SeriesSpec, phi_series, q_binomial

Triple = Tuple[int, int, int]

_column_cache: dict = {}


def _element(n1: int, n2: int, n3: int, m1: int, m2: int, m3: int, q: Scalar):
    if n1 + n2 != m1 + m2 or n2 + n3 != m2 + m3:
        return Scalar(0)
    qq = q * q
    pref = q ** (-n2 * (1 + n1 + n3) - m1 * m3)
    series = phi_series(
        SeriesSpec((qq**-n2, qq**-m1), (qq ** -(n1 + n2),), qq, qq ** (1 + m3))
    )
    return pref * q_binomial(n1 + n2, n1, qq) * series


def r3d_element(row: Triple, col: Triple, q: Scalar):
    """Fock-space weight with all six occupations non-negative."""
    if min(row) < 0 or min(col) < 0:
        raise ValueError("occupations must be non-negative; see r3d_element_signed")
    return _element(*row, *col, q)


def r3d_element_signed(row: Triple, col: Triple, q: Scalar):
    """Formal continuation to signed third components.

    The first two occupations of each triple must stay non-negative; the
    conservation deltas still apply.  Used by the q -> 1/q symmetry.
    """
    if min(row[:2]) < 0 or min(col[:2]) < 0:
        raise ValueError("only the third components may be negative")
    return _element(*row, *col, q)


def r3d_column(col: Triple, q: Scalar) -> Dict[Triple, Scalar]:
    """All nonzero rows coupled to a fixed column, keyed by row triple.

    Conservation pins n1+n2 and n2+n3, so rows are a one-parameter family.
    """
    key = (col, q)
    hit = _column_cache.get(key)
    if hit is not None:
        return hit
    m1, m2, m3 = col
    out: Dict[Triple, Scalar] = {}
    for t in range(min(m1 + m2, m2 + m3) + 1):
        row = (m1 + m2 - t, t, m2 + m3 - t)
        val = _element(*row, *col, q)
        if val != 0:
            out[row] = val
    if len(_column_cache) < 200_000:
        _column_cache[key] = out
    return out


def _apply_factor(
    vec: Dict[Tuple[int, ...], Scalar], spaces: Tuple[int, int, int], q: Scalar
) -> Dict[Tuple[int, ...], Scalar]:
    """One R factor acting on three of the six spaces, applied to a ket
    expanded in the occupation basis."""
    out: Dict[Tuple[int, ...], Scalar] = {}
    a, b, c = spaces
    for state, coeff in vec.items():
        col = (state[a], state[b], state[c])
        for row, val in r3d_column(col, q).items():
            new = list(state)
            new[a], new[b], new[c] = row
            key = tuple(new)
            acc = out.get(key)
            out[key] = val * coeff if acc is None else acc + val * coeff
    return {k: v for k, v in out.items() if v != 0}


# The two sides of the tetrahedron equation, as factor lists applied
# right-to-left to a ket.
_LHS = ((0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5))
_RHS = tuple(reversed(_LHS))


def _tetra_column(col: Tuple[int, ...], factors, q: Scalar) -> Dict[Tuple[int, ...], Scalar]:
    vec: Dict[Tuple[int, ...], Scalar] = {col: Scalar(1)}
    for spaces in reversed(factors):
        vec = _apply_factor(vec, spaces, q)
    return vec


def tetrahedron_check(max_occupation: int, q: Scalar) -> bool:
    """Exact tetrahedron equation on six Fock spaces.

    Compares full columns of both sides for every ket with occupations up
    to max_occupation; intermediate and row occupations are bounded by the
    conservation laws, so every sum is finite.
    """
    if max_occupation < 0:
        raise ValueError("max_occupation must be >= 0")
    rng = range(max_occupation + 1)
    for col in _all_tuples(rng, 6):
        if _tetra_column(col, _LHS, q) != _tetra_column(col, _RHS, q):
            return False
    return True


def tetrahedron_mismatch(max_occupation: int, q: Scalar):
    """First (column, lhs, rhs) disagreement, or None.  Diagnostic twin of
    tetrahedron_check."""
    rng = range(max_occupation + 1)
    for col in _all_tuples(rng, 6):
        lhs = _tetra_column(col, _LHS, q)
        rhs = _tetra_column(col, _RHS, q)
        if lhs != rhs:
            return col, lhs, rhs
    return None


def _all_tuples(rng: range, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        yield ()
        return
    for head in rng:
        for rest in _all_tuples(rng, parts - 1):
            yield (head,) + rest


def clear_caches() -> None:
    _column_cache.clear()
