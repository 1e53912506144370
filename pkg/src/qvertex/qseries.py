"""q-Pochhammer symbols, Gaussian binomials, and terminating basic
hypergeometric series, together with verifiers for the two classical
transformation identities the higher-rank formulas lean on.

Everything is exact and finite.  Series are admitted only when some
numerator parameter is a non-positive power of the base (detected exactly),
or when an explicit term cap is supplied; a denominator that vanishes
before the series truncates is an input error, never something to
regularize away.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence, Tuple

from .field import (
    RegularizationError,
    ResonanceError,
    Scalar,
    UnsupportedInputError,
)

_ONE = Scalar(1)

_poch_cache: dict = {}
_binom_cache: dict = {}


def q_pochhammer(a: Scalar, q: Scalar, k: int):
    """(a; q)_k, with the standard extension to negative k:
    (a; q)_{-m} = 1 / ((a q^{-m}; q)_m)."""
    key = (a, q, k)
    hit = _poch_cache.get(key)
    if hit is not None:
        return hit
    p = _ONE * a
    if k >= 0:
        out = _ONE
        for _ in range(k):
            out *= 1 - p
            p *= q
    else:
        den = _ONE
        for j in range(1, -k + 1):
            p = p / q
            factor = 1 - p
            if factor == 0:
                raise ResonanceError(
                    f"(a;q)_{k} undefined: factor 1 - a*q^(-{j}) vanishes at a={a}, q={q}"
                )
            den *= factor
        out = _ONE / den
    if len(_poch_cache) < 1_000_000:
        _poch_cache[key] = out
    return out


def q_multi_pochhammer(params: Sequence[Scalar], q: Scalar, k: int):
    out = _ONE
    for a in params:
        out *= q_pochhammer(a, q, k)
    return out


def q_binomial(n: int, m: int, q: Scalar):
    """Gaussian binomial coefficient.

    Evaluated through the q-Pascal recurrence, so it is the exact value of
    the underlying polynomial at q -- well defined even where the
    Pochhammer-ratio form would read 0/0.  Returns 0 outside 0 <= m <= n.
    """
    if n < 0:
        raise ValueError("q_binomial needs n >= 0")
    if m < 0 or m > n:
        return _ONE * 0
    m = min(m, n - m)
    key = (n, m, q)
    hit = _binom_cache.get(key)
    if hit is not None:
        return hit
    # one row of the q-Pascal triangle at a time
    row = [_ONE]
    qpow = [_ONE]
    for i in range(1, n + 1):
        qpow.append(qpow[-1] * q)
        new = [_ONE]
        half = min(m, i)
        for j in range(1, half + 1):
            left = row[j] if j < len(row) else 0
            new.append(left + qpow[i - j] * row[j - 1])
        row = new
    out = row[m]
    if len(_binom_cache) < 1_000_000:
        _binom_cache[key] = out
    return out


@dataclass(frozen=True)
class SeriesSpec:
    """A basic hypergeometric series r+1_phi_r at an exact point."""

    numerator_params: Tuple[Scalar, ...]
    denominator_params: Tuple[Scalar, ...]
    base: Scalar
    argument: Scalar
    max_terms: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "numerator_params", tuple(self.numerator_params))
        object.__setattr__(self, "denominator_params", tuple(self.denominator_params))


def _neg_power_index(a: Scalar, q: Scalar, limit: int = 10_000) -> Optional[int]:
    """Smallest k >= 0 with a * q^k = 1 (i.e. a = q^{-k}), or None.

    Exact detection: |a * q^k| is monotone in k for |q| != 1, so the scan
    stops as soon as the magnitude passes 1.
    """
    if a == 0 or q == 0:
        return None
    aq = abs(q)
    if aq == 1:
        return 0 if a == 1 else (1 if a * q == 1 else None)
    p = a
    for k in range(limit + 1):
        if p == 1:
            return k
        ap = abs(p)
        if (aq < 1 and ap < 1) or (aq > 1 and ap > 1):
            return None
        p *= q
    return None


def series_termination(spec: SeriesSpec) -> Optional[int]:
    """Number of (potentially) nonzero terms if the series provably
    terminates, else None."""
    best = None
    for a in spec.numerator_params:
        k = _neg_power_index(a, spec.base)
        if k is not None and (best is None or k + 1 < best):
            best = k + 1
    if spec.argument == 0:
        best = 1 if best is None else min(best, 1)
    return best


def phi_series(spec: SeriesSpec):
    """Exact sum of a terminating basic hypergeometric series.

    sum_i  (a_1,...,a_{r+1}; q)_i / ((q, b_1,...,b_r; q)_i) * x^i

    Terms are built incrementally; the loop stops the moment a numerator
    factor vanishes.  A vanishing denominator factor before that moment
    raises RegularizationError -- the inputs were outside the terminating
    regime the library supports.
    """
    cap = series_termination(spec)
    if cap is None:
        if spec.max_terms is None:
            raise UnsupportedInputError(
                "series does not visibly terminate and no max_terms cap was given"
            )
        cap = spec.max_terms
    elif spec.max_terms is not None:
        cap = min(cap, spec.max_terms)

    q = spec.base
    x = spec.argument
    total = _ONE
    term = _ONE
    qpow = _ONE  # q^i
    for i in range(cap - 1):
        num = x
        for a in spec.numerator_params:
            num *= 1 - a * qpow
        if num == 0:
            return total
        den = 1 - qpow * q
        for b in spec.denominator_params:
            den *= 1 - b * qpow
        if den == 0:
            raise RegularizationError(
                f"series denominator vanished at term {i + 1} before truncation"
            )
        term = term * num / den
        total += term
        qpow *= q
    return total


def _power_shift(u: Scalar, v: Scalar, q: Scalar, limit: int = 1000) -> Optional[int]:
    """Signed k with u = v * q^k, or None."""
    if v == 0 or q == 0:
        return None
    ratio = u / v
    k = _neg_power_index(1 / ratio, q, limit)  # ratio = q^k, k >= 0
    if k is not None:
        return k
    k = _neg_power_index(ratio, q, limit)  # ratio = q^{-k}
    if k is not None:
        return -k
    return None


def _infinite_ratio(nums: Sequence[Scalar], dens: Sequence[Scalar], q: Scalar):
    """Exact value of prod (u;q)_inf / prod (v;q)_inf in the terminating
    regime: parameters must pair up across the fraction bar with integer
    q-power shifts, each pair collapsing to a finite Pochhammer ratio."""
    if len(nums) != len(dens):
        raise UnsupportedInputError("infinite Pochhammer products do not pair up")
    saw_match = False
    for perm in permutations(range(len(dens))):
        shifts = []
        for u, pos in zip(nums, perm):
            k = _power_shift(u, dens[pos], q)
            if k is None:
                break
            shifts.append(k)
        if len(shifts) != len(nums):
            continue
        saw_match = True
        out = _ONE
        ok = True
        for u, pos, k in zip(nums, perm, shifts):
            if k >= 0:
                den = q_pochhammer(dens[pos], q, k)
                if den == 0:
                    ok = False
                    break
                out /= den
            else:
                out *= q_pochhammer(u, q, -k)
        if ok:
            return out
    if saw_match:
        raise ResonanceError("every pairing of the infinite products hits a zero denominator")
    raise UnsupportedInputError(
        "infinite Pochhammer ratio is not exactly cancellable at these parameters"
    )


def verify_heine_chain(a: Scalar, b: Scalar, c: Scalar, z: Scalar, q: Scalar) -> bool:
    """Check the four-expression transformation chain for 2_phi_1.

    Admissible domain: a = q^{-A}, b = q^{-B}, c = q^{-C} with
    C >= max(A, B), z generic.  There all four series terminate and every
    ratio of infinite Pochhammers collapses exactly.  c too close to 1
    (C < max(A, B)) makes the first series' denominator vanish before it
    truncates, which is a resonance, not a supported input.
    """
    ka = _neg_power_index(a, q)
    kb = _neg_power_index(b, q)
    kc = _neg_power_index(c, q)
    if ka is None or kb is None or kc is None:
        raise UnsupportedInputError(
            "heine chain verified only for a, b, c negative q-powers (terminating regime)"
        )
    if kc < max(ka, kb):
        raise ResonanceError(
            f"(c;q)_i vanishes at i={kc + 1} before the series truncates at i={max(ka, kb)}"
        )

    def phi2(a1, a2, b1, arg):
        return phi_series(SeriesSpec((a1, a2), (b1,), q, arg))

    t1 = phi2(a, b, c, z)
    t2 = _infinite_ratio([a * z, b], [c, z], q) * phi2(c / b, z, a * z, b)
    t3 = _infinite_ratio([c / b, b * z], [c, z], q) * phi2(a * b * z / c, b, b * z, c / b)
    t4 = _infinite_ratio([a * b * z / c], [z], q) * phi2(c / a, c / b, c, a * b * z / c)
    return t1 == t2 == t3 == t4


def verify_sears(n: int, a: Scalar, b: Scalar, c: Scalar, d: Scalar, e: Scalar, q: Scalar) -> bool:
    """Check the terminating balanced 4_phi_3 transformation.

    The last denominator parameter is forced by the balance condition
    d*e*f = a*b*c*q^{1-n}.
    """
    if n < 0:
        raise ValueError("series order n must be >= 0")
    f = a * b * c * q ** (1 - n) / (d * e)
    qn = q ** (-n)
    lhs = phi_series(SeriesSpec((qn, a, b, c), (d, e, f), q, q))
    pref_den = q_multi_pochhammer([e, f, e * f / (a * b * c)], q, n)
    if pref_den == 0:
        raise ResonanceError("prefactor denominator Pochhammer vanished")
    pref = q_multi_pochhammer([a, e * f / (a * b), e * f / (a * c)], q, n) / pref_den
    rhs = pref * phi_series(
        SeriesSpec(
            (qn, e / a, f / a, e * f / (a * b * c)),
            (e * f / (a * b), e * f / (a * c), q ** (1 - n) / a),
            q,
            q,
        )
    )
    return lhs == rhs


def clear_caches() -> None:
    _poch_cache.clear()
    _binom_cache.clear()
