"""Spectral R-matrix blocks on pairs of symmetric-tensor modules.

The central object is a block matrix indexed by pairs of occupation
configurations, depending on a deformation parameter q and a spectral
parameter lambda.  Everything here is exact: entries are Fractions, and
evaluation points where a denominator degenerates either cancel exactly
against a matching numerator zero (the two-sided limit of the entry as a
rational function of lambda^2) or raise :class:`ResonanceError`.

Three normalizations are supported, see :class:`NormalizationMode`.
Weights are usually nonnegative integers; most formulas also accept a
*generic* weight carried as the free parameter g = q^(W/2), which is how
the fixed-sector Yang-Baxter checks exercise non-integral weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from .field import (
    EvalPoint,
    ResonanceError,
    Scalar,
    UnsupportedInputError,
    power,
)
from .indices import Comp, basis, boxes, dot, lift, sector_splits, total, vec_add
from .qseries import SeriesSpec, phi_series, q_binomial, q_pochhammer

__all__ = [
    "NormalizationMode",
    "Weight",
    "as_weight",
    "RBlock",
    "element_multisum",
    "rmatrix_element",
    "element_rank2",
    "balancing_constant",
    "pole_clearing_constant",
    "build_block",
    "reduction_lower",
    "reduction_upper",
    "factor_left_element",
    "factor_right_element",
    "factorized_element",
]

_ZERO = Scalar(0)
_ONE = Scalar(1)


class NormalizationMode(Enum):
    """How the overall scalar in front of a block is fixed.

    UNIT_CORNER        all-zero entry equals 1 (the default everywhere).
    CONSTANT_RESTORED  keep the index-independent balancing constant that
                       the layered construction produces; integer weights.
    POLE_CLEARED       rescale so the entry prefactor becomes a finite
                       product even for a generic second weight; used by
                       the L-operator identities.  Integer first weight.
    """

    UNIT_CORNER = "default"
    CONSTANT_RESTORED = "b-restored"
    POLE_CLEARED = "sigma"


@dataclass(frozen=True)
class Weight:
    """A module weight: a nonnegative integer, or generic via g = q^(W/2).

    All weight dependence of the matrix entries enters through powers
    q^(k W / 2) with integer k, so a generic weight is fully specified by
    the single scalar g.
    """

    size: Optional[int] = None
    half_step: Optional[Scalar] = None

    def __post_init__(self) -> None:
        if (self.size is None) == (self.half_step is None):
            raise ValueError("give exactly one of size, half_step")
        if self.size is not None and self.size < 0:
            raise ValueError("integer weights are nonnegative")
        if self.half_step is not None and self.half_step == 0:
            raise ValueError("generic weight parameter must be nonzero")

    @classmethod
    def of(cls, size: int) -> "Weight":
        return cls(size=size)

    @classmethod
    def generic(cls, half_step: Scalar) -> "Weight":
        return cls(half_step=half_step)

    @property
    def is_generic(self) -> bool:
        return self.size is None

    def as_int(self) -> int:
        if self.size is None:
            raise UnsupportedInputError(
                "generic weight used where an integer weight is required"
            )
        return self.size

    def power_half(self, point: EvalPoint, k: int) -> Scalar:
        """q^(k W / 2), exact for integer weights via r = q^(1/2)."""
        if self.size is not None:
            return power(point.r, self.size * k)
        return power(self.half_step, k)


WeightLike = Union[int, Weight]


def as_weight(w: WeightLike) -> Weight:
    if isinstance(w, Weight):
        return w
    return Weight.of(w)


def _check_comps(n: int, *comps: Comp) -> None:
    for c in comps:
        if len(c) != n - 1:
            raise ValueError(f"expected {n - 1} components, got {c!r}")
        if any(x < 0 for x in c):
            raise ValueError(f"negative occupation in {c!r}")


def _check_block_bounds(wi: Weight, wj: Weight, i: Comp, j: Comp, ip: Comp, jp: Comp) -> None:
    # only integer weights bound the totals
    if not wi.is_generic and (total(i) > wi.size or total(ip) > wi.size):
        raise ValueError("first index total exceeds the first weight")
    if not wj.is_generic and (total(j) > wj.size or total(jp) > wj.size):
        raise ValueError("second index total exceeds the second weight")


# ---------------------------------------------------------------------------
# factor bookkeeping for exact limits in lambda^2
#
# Entries are sums of products of linear factors (1 - c * w^e) with
# w = lambda^2 and e in {-1, 0, +1}.  At special points several factors
# vanish at once; the entry is still a well-defined rational function of w
# and its value is the two-sided limit.  For a product with equally many
# vanishing numerator and denominator factors that limit is the product of
# the non-vanishing factors times a sign: each vanishing factor pair
# contributes e_num / e_den (see the derivative of 1 - c w^e at the zero).

Factor = Tuple[Scalar, int, str]


def _poch_factors(
    dst_num: List[Factor],
    dst_den: List[Factor],
    a0: Scalar,
    wstep: int,
    base: Scalar,
    k: int,
    label: str,
) -> None:
    """Append the linear factors of (a0; base)_k to dst_num.

    Negative k uses the standard extension: (a; Q)_{-k} has its factors in
    the denominator, at arguments shifted below a0.
    """
    a = a0
    if k >= 0:
        for _ in range(k):
            dst_num.append((_ONE - a, wstep, label))
            a = a * base
    else:
        for _ in range(-k):
            a = a / base
            dst_den.append((_ONE - a, wstep, label))


def _resolve_factors(nums: List[Factor], dens: List[Factor]) -> Scalar:
    """Value of a factored product, taking the limit across matched zeros.

    Raises ResonanceError when a vanishing denominator factor has no
    matching numerator zero (the product genuinely diverges there).
    """
    den_val = _ONE
    zeros_den: List[int] = []
    first_label = ""
    for v, ws, label in dens:
        if v == 0:
            if ws == 0:
                raise ResonanceError(f"vanishing denominator factor {label}")
            if not first_label:
                first_label = label
            zeros_den.append(ws)
        else:
            den_val *= v
    num_val = _ONE
    zeros_num: List[int] = []
    for v, ws, _ in nums:
        if v == 0:
            if ws == 0:
                return _ZERO
            zeros_num.append(ws)
        else:
            num_val *= v
    if len(zeros_num) > len(zeros_den):
        return _ZERO
    if len(zeros_num) < len(zeros_den):
        raise ResonanceError(
            "vanishing denominator factor not cancelled at this point: " + first_label
        )
    sign = 1
    for ws in zeros_num:
        sign *= ws
    for ws in zeros_den:
        sign *= ws
    return sign * num_val / den_val


# ---------------------------------------------------------------------------
# main entry formulas


def element_multisum(
    n: int,
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
    point: EvalPoint,
) -> Scalar:
    """Entry of the block via the raw n-fold layered sum.

    This is the unsimplified projection formula: an n-dimensional sum over
    a box, with a geometric denominator per summand.  It equals
    ``rmatrix_element`` in CONSTANT_RESTORED normalization and serves as an
    independent cross-check of it.  Integer weights only; the point must
    avoid the zeros of 1 - lambda^2 q^(2|m| - I - J).
    """
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    I = wi.as_int()
    J = wj.as_int()
    _check_comps(n, i, j, ip, jp)
    _check_block_bounds(wi, wj, i, j, ip, jp)
    if vec_add(i, j) != vec_add(ip, jp):
        return _ZERO

    q = point.q
    qq = point.qq
    w = point.lam2
    ti, tj, tip, tjp = total(i), total(j), total(ip), total(jp)

    li = lift(i, I)
    lj = lift(j, J)
    ljp = lift(jp, J)

    psi = (
        -2 * dot(i, j)
        + dot(ip, jp)
        - (I - ti) * (J - tj)
        + I * (tip - ti - 1)
        + sum(
            ip[k] * jp[l] - i[k] * j[l]
            for k in range(n - 1)
            for l in range(k + 1, n - 1)
        )
    )
    pref = power(q, psi)
    for s in range(n):
        pref *= q_binomial(li[s] + lj[s], li[s], qq)

    acc = _ZERO
    for m in boxes(li, ljp):
        tm = total(m)
        geom = _ONE - w * power(q, 2 * tm - I - J)
        if geom == 0:
            raise ResonanceError(
                f"vanishing denominator 1 - lambda^2 q^({2 * tm - I - J})"
            )
        expo = 2 * tm + 2 * sum(
            m[k] * (i[l] - ip[l]) for k in range(n - 1) for l in range(k + 1)
        )
        term = power(q, expo) / geom
        for s in range(n):
            ms = m[s]
            if ms == 0:
                continue
            term *= q_pochhammer(power(q, -2 * li[s]), qq, ms)
            term *= q_pochhammer(power(q, -2 * ljp[s]), qq, ms)
            term /= q_pochhammer(qq, qq, ms)
            term /= q_pochhammer(power(q, -2 * (li[s] + lj[s])), qq, ms)
        acc += term
    return pref * acc


def balancing_constant(
    weight_i: WeightLike, weight_j: WeightLike, point: EvalPoint
) -> Scalar:
    """The index-independent constant linking the layered sum to the block.

    Requires integer weights; the three Pochhammer symbols live at
    lambda^2 q^(-I-J) and may degenerate at special lambda.
    """
    I = as_weight(weight_i).as_int()
    J = as_weight(weight_j).as_int()
    q = point.q
    qq = point.qq
    base_arg = point.lam2 * power(q, -I - J)
    num = q_pochhammer(base_arg, qq, I + J + 1)
    d1 = q_pochhammer(base_arg, qq, I + 1)
    d2 = q_pochhammer(base_arg, qq, J + 1)
    if d1 == 0 or d2 == 0:
        raise ResonanceError(
            "vanishing denominator (lambda^2 q^(-I-J); q^2)_{I+1} or _{J+1}"
        )
    return power(q, -I - I * J) * num / (d1 * d2)


def pole_clearing_constant(
    weight_i: WeightLike, weight_j: WeightLike, point: EvalPoint
) -> Scalar:
    """Scalar multiplier of the POLE_CLEARED normalization.

    Needs lambda itself (an odd power appears) and an integer first
    weight; the second weight may be generic.
    """
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    I = wi.as_int()
    lam = point.lam_required()
    qq = point.qq
    arg = point.lam2 * power(point.r, -2 * I) * wj.power_half(point, -2)
    val = power(lam, -I) * power(point.r, I) * wj.power_half(point, 1)
    return -val * q_pochhammer(arg, qq, I + 1)


def _phase(
    point: EvalPoint,
    wi: Weight,
    wj: Weight,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
) -> Scalar:
    """q^((i',j') - (i,j) + sum_{k>l} i_k j_l + j'_k i'_l) q^(-J|i| - I|j'|)."""
    n1 = len(i)
    e = dot(ip, jp) - dot(i, j) + sum(
        i[k] * j[l] + jp[k] * ip[l] for k in range(n1) for l in range(k)
    )
    out = power(point.q, e)
    out *= wj.power_half(point, -2 * total(i))
    out *= wi.power_half(point, -2 * total(jp))
    return out


def rmatrix_element(
    n: int,
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
    point: EvalPoint,
    mode: NormalizationMode = NormalizationMode.UNIT_CORNER,
) -> Scalar:
    """One entry of R(lambda) as an (n-1)-fold boxed sum.

    Rows are subscripts (bra side), columns superscripts (ket side):
    this is the coefficient of |i, j> in R |i', j'>.  The value is the
    rational function of lambda^2 evaluated at the given point; matched
    zero pairs across numerator and denominator are cancelled exactly, so
    the degenerate points lambda^2 = q^(+-(I-J)) are fine, while genuinely
    resonant points raise ResonanceError.
    """
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    _check_comps(n, i, j, ip, jp)
    _check_block_bounds(wi, wj, i, j, ip, jp)
    if vec_add(i, j) != vec_add(ip, jp):
        return _ZERO

    q = point.q
    qq = point.qq
    w = point.lam2
    winv = _ONE / w
    ti, tj, tip, tjp = total(i), total(j), total(ip), total(jp)

    pref = _phase(point, wi, wj, i, j, ip, jp)
    base_num: List[Factor] = []
    base_den: List[Factor] = []

    if mode is NormalizationMode.POLE_CLEARED:
        I = wi.as_int()
        lam = point.lam_required()
        # finite-product prefactor of the renormalized block
        a0 = winv * wi.power_half(point, -2) * wj.power_half(point, -2) * power(qq, ti + tj)
        _poch_factors(
            base_num, base_den, a0, -1, qq, I - tip,
            "(lambda^-2 q^(2|i|+2|j|-I-J); q^2)_(I-|i'|)",
        )
        a1 = winv * wj.power_half(point, 2) * wi.power_half(point, -2)
        _poch_factors(base_num, base_den, a1, -1, qq, ti, "(lambda^-2 q^(J-I); q^2)_|i|")
        a2 = wj.power_half(point, -4) * power(qq, tj)
        _poch_factors(base_den, base_num, a2, 0, qq, ti - tip, "(q^(2|j|-2J); q^2)_(|i|-|i'|)")
        sign = _ONE if (I + 1) % 2 == 0 else -_ONE
        pref *= sign * power(lam, I) * power(point.r, I) * wj.power_half(point, 1)
        for s in range(n - 1):
            if i[s]:
                pref *= q_pochhammer(power(qq, 1 + j[s]), qq, i[s])
                pref /= q_pochhammer(qq, qq, i[s])
    else:
        a0 = winv * wi.power_half(point, 2) * wj.power_half(point, -2)
        _poch_factors(base_num, base_den, a0, -1, qq, tjp, "(lambda^-2 q^(I-J); q^2)_|j'|")
        a1 = winv * wj.power_half(point, 2) * wi.power_half(point, -2)
        _poch_factors(base_num, base_den, a1, -1, qq, ti, "(lambda^-2 q^(J-I); q^2)_|i|")
        a2 = wj.power_half(point, -4)
        _poch_factors(base_num, base_den, a2, 0, qq, tj, "(q^(-2J); q^2)_|j|")
        a3 = winv * wi.power_half(point, -2) * wj.power_half(point, -2)
        _poch_factors(base_den, base_num, a3, -1, qq, ti + tj, "(lambda^-2 q^(-I-J); q^2)_(|i|+|j|)")
        _poch_factors(base_den, base_num, a2, 0, qq, tjp, "(q^(-2J); q^2)_|j'|")
        for s in range(n - 1):
            pref *= q_binomial(i[s] + j[s], j[s], qq)
        if mode is NormalizationMode.CONSTANT_RESTORED:
            pref *= balancing_constant(wi, wj, point)

    sum_arg1 = w * wi.power_half(point, -2) * wj.power_half(point, -2)
    sum_arg2 = w * qq * wi.power_half(point, 2) * wj.power_half(point, 2) * power(qq, -ti - tj)
    den_arg1 = w * qq * wi.power_half(point, 2) * wj.power_half(point, -2) * power(qq, -ti)
    den_arg2 = w * qq * wj.power_half(point, 2) * wi.power_half(point, -2) * power(qq, -tjp)

    acc = _ZERO
    for m in boxes(i, jp):
        tm = total(m)
        num = list(base_num)
        den = list(base_den)
        _poch_factors(num, den, sum_arg1, 1, qq, tm, "(lambda^2 q^(-I-J); q^2)_|m|")
        _poch_factors(
            num, den, sum_arg2, 1, qq, tm,
            "(lambda^2 q^(2+I+J-2|i|-2|j|); q^2)_|m|",
        )
        _poch_factors(den, num, den_arg1, 1, qq, tm, "(lambda^2 q^(2+I-J-2|i|); q^2)_|m|")
        _poch_factors(den, num, den_arg2, 1, qq, tm, "(lambda^2 q^(2+J-I-2|j'|); q^2)_|m|")
        term = _resolve_factors(num, den)
        if term == 0:
            continue
        for s in range(n - 1):
            ms = m[s]
            if ms == 0:
                continue
            term *= q_pochhammer(power(q, -2 * i[s]), qq, ms)
            term *= q_pochhammer(power(q, -2 * jp[s]), qq, ms)
            term /= q_pochhammer(qq, qq, ms)
            term /= q_pochhammer(power(q, -2 * (i[s] + j[s])), qq, ms)
        expo = 2 * (tm + sum(m[k] * (ip[l] - i[l]) for k in range(n - 1) for l in range(k + 1, n - 1)))
        acc += term * power(q, expo)
    return pref * acc


def element_rank2(
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: int,
    j: int,
    ip: int,
    jp: int,
    point: EvalPoint,
) -> Scalar:
    """Closed single-series form of the n = 2 entry, UNIT_CORNER normalization.

    The series is a terminating balanced 4-phi-3 in base q^2.
    """
    I = as_weight(weight_i).as_int()
    J = as_weight(weight_j).as_int()
    if min(i, j, ip, jp) < 0 or i > I or ip > I or j > J or jp > J:
        raise ValueError("indices must lie inside the two modules")
    if i + j != ip + jp:
        return _ZERO
    q = point.q
    qq = point.qq
    w = point.lam2
    winv = _ONE / w

    pref = power(q, ip * jp - i * j - i * J - I * jp) * q_binomial(i + j, i, qq)
    pref *= q_pochhammer(winv * power(q, I - J), qq, jp)
    pref *= q_pochhammer(winv * power(q, J - I), qq, i)
    pref *= q_pochhammer(power(q, -2 * J), qq, j)
    den = q_pochhammer(winv * power(q, -I - J), qq, i + j) * q_pochhammer(
        power(q, -2 * J), qq, jp
    )
    if den == 0:
        raise ResonanceError(
            "vanishing prefactor denominator at this evaluation point"
        )
    series = phi_series(
        SeriesSpec(
            numerator_params=(
                power(q, -2 * i),
                power(q, -2 * jp),
                w * power(q, -I - J),
                w * power(q, 2 + I + J - 2 * i - 2 * j),
            ),
            denominator_params=(
                power(q, -2 * i - 2 * j),
                w * power(q, 2 + I - J - 2 * i),
                w * power(q, 2 + J - I - 2 * jp),
            ),
            base=qq,
            argument=qq,
        )
    )
    return pref / den * series


# ---------------------------------------------------------------------------
# degenerate points and the two-factor splitting


def reduction_lower(
    n: int,
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
    point: EvalPoint,
) -> Scalar:
    """Single-summand form of the entry at lambda = q^((I-J)/2).

    Valid when I - J is a nonnegative integer (for generic weights, in the
    corresponding parameter domain); the matching fails in the other
    direction, where several summands survive.  Only q enters.
    """
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    _check_comps(n, i, j, ip, jp)
    _check_block_bounds(wi, wj, i, j, ip, jp)
    if vec_add(i, j) != vec_add(ip, jp):
        return _ZERO
    q = point.q
    qq = point.qq
    binom = _ONE
    for s in range(n - 1):
        binom *= q_binomial(ip[s], j[s], qq)
        if binom == 0:
            return _ZERO
    ti, tj, tip, tjp = total(i), total(j), total(ip), total(jp)
    e = (
        dot(ip, jp)
        - dot(i, j)
        + sum(
            i[k] * j[l] + jp[k] * ip[l] - 2 * jp[k] * j[l]
            for k in range(n - 1)
            for l in range(k)
        )
    )
    val = power(q, e)
    val *= wj.power_half(point, -2 * ti + 4 * tjp)
    val *= wi.power_half(point, -2 * tjp)
    val *= q_pochhammer(wj.power_half(point, -4), qq, tj)
    val *= q_pochhammer(
        wj.power_half(point, 4) * wi.power_half(point, -4), qq, tip - tj
    )
    den = q_pochhammer(wi.power_half(point, -4), qq, tip)
    if den == 0:
        raise ResonanceError("vanishing denominator (q^(-2I); q^2)_|i'|")
    return val * binom / den


def reduction_upper(
    n: int,
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
    point: EvalPoint,
) -> Scalar:
    """Single-summand form of the entry at lambda = q^((J-I)/2).

    Valid when J - I is a nonnegative integer; mirror of
    :func:`reduction_lower` with the roles of (i, j') exchanged.
    """
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    _check_comps(n, i, j, ip, jp)
    _check_block_bounds(wi, wj, i, j, ip, jp)
    if vec_add(i, j) != vec_add(ip, jp):
        return _ZERO
    q = point.q
    qq = point.qq
    binom = _ONE
    for s in range(n - 1):
        binom *= q_binomial(jp[s], i[s], qq)
        if binom == 0:
            return _ZERO
    ti, tj, tip, tjp = total(i), total(j), total(ip), total(jp)
    e = (
        dot(ip, jp)
        - dot(i, j)
        + sum(
            i[k] * j[l] + jp[k] * ip[l] - 2 * i[k] * ip[l]
            for k in range(n - 1)
            for l in range(k)
        )
    )
    val = power(q, e)
    val *= wj.power_half(point, -2 * ti)
    val *= wi.power_half(point, -2 * tjp + 4 * ti)
    val *= q_pochhammer(wi.power_half(point, -4), qq, ti)
    val *= q_pochhammer(
        wi.power_half(point, 4) * wj.power_half(point, -4), qq, tjp - ti
    )
    den = q_pochhammer(wj.power_half(point, -4), qq, tjp)
    if den == 0:
        raise ResonanceError("vanishing denominator (q^(-2J); q^2)_|j'|")
    return val * binom / den


def factor_left_element(
    n: int,
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
    point: EvalPoint,
) -> Scalar:
    """Left factor of the two-factor splitting of an entry."""
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    _check_comps(n, i, j, ip, jp)
    if vec_add(i, j) != vec_add(ip, jp):
        return _ZERO
    q = point.q
    qq = point.qq
    w = point.lam2
    binom = _ONE
    for s in range(n - 1):
        binom *= q_binomial(ip[s], j[s], qq)
        if binom == 0:
            return _ZERO
    ti, tj, tip, tjp = total(i), total(j), total(ip), total(jp)
    e = -dot(i, j) + sum(
        i[k] * j[l] + jp[k] * ip[l] - 2 * jp[k] * j[l]
        for k in range(n - 1)
        for l in range(k)
    )
    val = power(q, e) * wj.power_half(point, -2 * ti)
    val *= q_pochhammer(wj.power_half(point, -4), qq, tj)
    val *= q_pochhammer(
        (_ONE / w) * wj.power_half(point, 2) * wi.power_half(point, -2), qq, tip - tj
    )
    gauge = w * wi.power_half(point, -2) * wj.power_half(point, -2)
    den = power(gauge, tjp) * q_pochhammer(
        (_ONE / w) * wi.power_half(point, -2) * wj.power_half(point, -2), qq, tip
    )
    if den == 0:
        raise ResonanceError("vanishing denominator in the left splitting factor")
    return val * binom / den


def factor_right_element(
    n: int,
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
    point: EvalPoint,
) -> Scalar:
    """Right factor of the two-factor splitting of an entry."""
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    _check_comps(n, i, j, ip, jp)
    if vec_add(i, j) != vec_add(ip, jp):
        return _ZERO
    q = point.q
    qq = point.qq
    w = point.lam2
    binom = _ONE
    for s in range(n - 1):
        binom *= q_binomial(jp[s], j[s], qq)
        if binom == 0:
            return _ZERO
    ti, tj, tip, tjp = total(i), total(j), total(ip), total(jp)
    e = dot(ip, jp) + sum(
        j[k] * i[l] + jp[k] * ip[l] - 2 * j[k] * ip[l]
        for k in range(n - 1)
        for l in range(k)
    )
    val = power(q, e) * wi.power_half(point, -2 * tjp)
    val *= q_pochhammer(w * wi.power_half(point, -2) * wj.power_half(point, -2), qq, tj)
    val *= q_pochhammer(
        (_ONE / w) * wi.power_half(point, 2) * wj.power_half(point, -2), qq, tjp - tj
    )
    den = q_pochhammer(wj.power_half(point, -4), qq, tjp)
    if den == 0:
        raise ResonanceError("vanishing denominator (q^(-2J); q^2)_|j'|")
    return val * binom / den


def factorized_element(
    n: int,
    weight_i: WeightLike,
    weight_j: WeightLike,
    i: Comp,
    j: Comp,
    ip: Comp,
    jp: Comp,
    point: EvalPoint,
) -> Scalar:
    """Entry reassembled from the two splitting factors (UNIT_CORNER)."""
    if vec_add(i, j) != vec_add(ip, jp):
        return _ZERO
    t = vec_add(i, j)
    acc = _ZERO
    for k in _splits(t):
        l = tuple(ts - ks for ts, ks in zip(t, k))
        left = factor_left_element(n, weight_i, weight_j, i, j, k, l, point)
        if left == 0:
            continue
        right = factor_right_element(n, weight_i, weight_j, k, l, ip, jp, point)
        if right == 0:
            continue
        acc += left * right
    return acc


def _splits(t: Comp):
    from itertools import product

    return (tuple(k) for k in product(*(range(ts + 1) for ts in t)))


# ---------------------------------------------------------------------------
# assembled blocks


@dataclass
class RBlock:
    """A sparse block, stored by columns.

    ``columns[(ip, jp)]`` maps the row pair (i, j) to the exact entry;
    keys absent from a column are exact zeros.
    """

    n: int
    weight_i: int
    weight_j: int
    point: EvalPoint
    mode: NormalizationMode
    columns: Dict[Tuple[Comp, Comp], Dict[Tuple[Comp, Comp], Scalar]]

    def entry(self, i: Comp, j: Comp, ip: Comp, jp: Comp) -> Scalar:
        return self.columns.get((ip, jp), {}).get((i, j), _ZERO)

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def nonzero_count(self) -> int:
        return sum(len(col) for col in self.columns.values())


def build_block(
    n: int,
    weight_i: int,
    weight_j: int,
    point: EvalPoint,
    mode: NormalizationMode = NormalizationMode.UNIT_CORNER,
) -> RBlock:
    """Assemble the full block over both modules.  Integer weights."""
    wi = as_weight(weight_i)
    wj = as_weight(weight_j)
    I = wi.as_int()
    J = wj.as_int()
    columns: Dict[Tuple[Comp, Comp], Dict[Tuple[Comp, Comp], Scalar]] = {}
    for ipc in basis(n, I):
        for jpc in basis(n, J):
            col: Dict[Tuple[Comp, Comp], Scalar] = {}
            for ic, jc in sector_splits(vec_add(ipc, jpc), I, J):
                v = rmatrix_element(n, wi, wj, ic, jc, ipc, jpc, point, mode)
                if v != 0:
                    col[(ic, jc)] = v
            columns[(ipc, jpc)] = col
    return RBlock(n=n, weight_i=I, weight_j=J, point=point, mode=mode, columns=columns)
