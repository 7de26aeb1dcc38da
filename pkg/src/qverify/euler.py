"""Verifiers for the finite pentagonal-theorem family and its cyclic extensions.

Each ``verify_*`` computes the left side from the sum engine (q symbolic),
builds the closed-form right side independently, and returns a
:class:`~qverify.records.VerificationRecord` with both sides exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateParameters, ParameterCongruenceViolation, RejectsMMod3Zero
from .exact import ONE, ZERO, LaurentPoly, _div
from .qkernel import binom2, gauss_binomial, q_pochhammer_power
from .records import make_record, timed
from .sums import CyclicSumSpec, ExponentRule, eval_chain_q_sum, eval_cyclic_q_sum


def _halve(twice: int) -> int:
    """Exponents are built doubled; the identities guarantee they come out even."""
    if twice % 2:
        raise ArithmeticError(f"half-integral q-exponent {twice}/2")
    return twice // 2


def _signed_monomial(exponent: int, sign_exp: int) -> LaurentPoly:
    return LaurentPoly.monomial(exponent, -1 if sign_exp % 2 else 1)


# -- q-Chu-Vandermonde at a = q^alpha, c = q^gamma --------------------------


@timed
def verify_chu_vandermonde(alpha: int, gamma: int, N: int):
    """Terminating q-Chu-Vandermonde with both sides multiplied by (c;q)_N (q;q)_N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if N >= 1 and -(N - 1) <= gamma <= 0:
        raise DegenerateParameters(f"(q^{gamma}; q)_k vanishes for some k <= {N}")
    lhs = ZERO
    for k in range(N + 1):
        term = q_pochhammer_power(alpha, k) * q_pochhammer_power(-N, k)
        term = term.shift(k * (gamma + N - alpha))
        # (c;q)_N / (c;q)_k and (q;q)_N / (q;q)_k, both exact products
        term = term * q_pochhammer_power(gamma + k, N - k) * q_pochhammer_power(k + 1, N - k)
        lhs = lhs + term
    rhs = q_pochhammer_power(gamma - alpha, N) * q_pochhammer_power(1, N)
    return make_record("chu_vandermonde", {"alpha": alpha, "gamma": gamma, "N": N}, lhs, rhs)


# -- the two s-sum variations ----------------------------------------------


@timed
def verify_nrst(n: int, r: int, t: int, variant: str = "q"):
    if n < 1 or not (0 <= r <= n and 0 <= t <= n):
        raise ValueError("need n >= 1 and 0 <= r, t <= n")
    if variant not in ("q", "q_inverse"):
        raise ValueError(f"unknown variant {variant!r}")
    lhs = ZERO
    for s in range(n - r + 1):
        if variant == "q":
            e = binom2(s)
        else:
            e = _halve(s * (s + 2 * r + 2 * t - 2 * n + 1))
        lhs = lhs + gauss_binomial(n - r, s) * gauss_binomial(n - s, t) * _signed_monomial(e, s)
    rhs = gauss_binomial(r, n - t)
    if variant == "q":
        rhs = rhs.shift((n - r) * (n - t))
    return make_record("nrst", {"n": n, "r": r, "t": t, "variant": variant}, lhs, rhs)


# -- the single sum and its q -> 1/q form ---------------------------------


def zeil_lhs(n: int, variant: str = "direct") -> LaurentPoly:
    total = ZERO
    for k in range(n // 2 + 1):
        if variant == "direct":
            mono = _signed_monomial(binom2(k), k)
        else:
            mono = _signed_monomial(k * k + binom2(n - k), n - k)
        total = total + mono * gauss_binomial(n - k, k)
    return total


def zeil_rhs(n: int, variant: str = "direct") -> LaurentPoly:
    if n % 3 == 2:
        return ZERO
    if variant == "direct":
        return _signed_monomial(_halve(n * (n - 1) // 3), n // 3)
    return _signed_monomial(n * (n - 1) // 3, (2 * n + 2) // 3)


@timed
def verify_zeil(n: int, variant: str = "direct"):
    if n < 0:
        raise ValueError("n must be >= 0")
    if variant not in ("direct", "inverted"):
        raise ValueError(f"unknown variant {variant!r}")
    return make_record("zeil", {"n": n, "variant": variant}, zeil_lhs(n, variant), zeil_rhs(n, variant))


@timed
def verify_finite_euler(L: int, variant: int = 1):
    if L < 0:
        raise ValueError("L must be >= 0")
    if variant not in (1, 2):
        raise ValueError("variant is 1 or 2")
    lhs = ZERO
    for j in range(-L, L + 1):
        if variant == 1:
            e, top = _halve(j * (3 * j + 1)), 2 * L - j
        else:
            e, top = _halve(j * (3 * j - 1)), 2 * L - j + 1
        lhs = lhs + _signed_monomial(e, j) * gauss_binomial(top, L + j)
    return make_record("finite_euler", {"L": L, "variant": variant}, lhs, ONE)


def pentagonal_series(D: int) -> LaurentPoly:
    """sum_j (-1)^j q^{j(3j-1)/2} over all integers j with exponent <= D."""
    terms = {}
    j = 0
    while True:
        hit = False
        for jj in {j, -j}:
            e = jj * (3 * jj - 1) // 2
            if e <= D:
                terms[e] = -1 if jj % 2 else 1
                hit = True
        if not hit:
            break
        j += 1
    return LaurentPoly(terms)


def euler_product(D: int) -> LaurentPoly:
    """prod_{k=1}^{D} (1 - q^k) with every term above degree D discarded."""
    out = ONE
    for k in range(1, D + 1):
        out = (out * LaurentPoly({0: 1, k: -1})).truncate(D)
    return out


@timed
def verify_pentagonal_limit(D: int):
    if D < 0:
        raise ValueError("D must be >= 0")
    return make_record("pentagonal_limit", {"D": D}, pentagonal_series(D), euler_product(D))


# -- cyclic families --------------------------------------------------------


def _alternating_products(x) -> tuple:
    a = b = 1
    for k in range(0, len(x), 3):
        a = a * x[k]
        b = b * x[k + 1]
    return a, b


def multi_3m_rhs(m: int, n: int, x) -> LaurentPoly:
    a, b = _alternating_products(x)
    if a == b:
        # removable singularity of the divided difference
        coeff = (n + 1) * a**n
    else:
        coeff = _div(a ** (n + 1) - b ** (n + 1), a - b)
    return LaurentPoly.monomial(m * binom2(n), coeff)


@timed
def verify_multi_3m(m: int, n: int, x=None):
    """3m-index cyclic sum with x_{3k} = -1; ``x=None`` means every weight is -1."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    x = (-1,) * (3 * m) if x is None else tuple(x)
    if len(x) != 3 * m:
        raise ValueError(f"need {3 * m} weights")
    if any(x[k] != -1 for k in range(2, 3 * m, 3)):
        raise ValueError("weights at positions 3, 6, ... must be -1")
    lhs = eval_cyclic_q_sum(CyclicSumSpec(3 * m, n, weights=x))
    rhs = multi_3m_rhs(m, n, x)
    params = {"m": m, "n": n, "x": [str(v) for v in x]}
    return make_record("multi_3m", params, lhs, rhs)


def multi_zeil_rhs(m: int, n: int) -> LaurentPoly:
    if n % 3 == 2:
        return ZERO
    return _signed_monomial(m * n * (n - 1) // 6, (m + n - 1) * m // 3)


def all_minus_one_sum(m: int, n: int, refinement=None) -> LaurentPoly:
    return eval_cyclic_q_sum(CyclicSumSpec(m, n, signs=(True,) * m, refinement=refinement))


@timed
def verify_multi_zeil(m: int, n: int):
    if m % 3 == 0:
        raise RejectsMMod3Zero(f"m = {m} is divisible by 3; use the multi_3m family")
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    return make_record("multi_zeil", {"m": m, "n": n}, all_minus_one_sum(m, n), multi_zeil_rhs(m, n))


def three_ell_rhs(L: int, m: int, variant: int) -> int:
    if variant == 0:
        return 3 * L + 1 if m % 3 == 0 else 1
    if m % 3 == 0:
        return (-1) ** (m // 3) * (3 * L + 2)
    return (-1) ** (m * m // 3)


@timed
def verify_3ell(L: int, m: int, variant: int = 0):
    """j-indexed sums over j_k in [-L, 2L (+1)]; computed as r_k = j_k + L with n = 3L (+1)."""
    if L < 0 or m < 1:
        raise ValueError("need L >= 0 and m >= 1")
    if variant not in (0, 1):
        raise ValueError("variant is 0 or 1")
    n = 3 * L + variant
    rule = ExponentRule(cross=1, shift=L, offset=1 - variant)
    # (-1)^{j_k} = (-1)^{r_k} (-1)^L
    lhs = eval_cyclic_q_sum(CyclicSumSpec(m, n, signs=(True,) * m, exponent=rule))
    if (m * L) % 2:
        lhs = -lhs
    rhs = LaurentPoly.constant(three_ell_rhs(L, m, variant))
    return make_record("three_ell", {"L": L, "m": m, "variant": variant}, lhs, rhs)


_Z_BASE = (2, 3, 5, 7, -2)
_Z_MORE = (-3, 11, Fraction(1, 2), -5, 13, Fraction(1, 3), -7, 17, Fraction(-1, 2), 19, Fraction(2, 3))


def z_samples(n: int) -> list:
    """Distinct nonzero z values, at least max(2n + 2, 5) of them, in a fixed order."""
    need = max(2 * n + 2, 5)
    out = list(_Z_BASE + _Z_MORE)
    p = 23
    while len(out) < need:
        out.extend([p, -p, Fraction(1, p)])
        p += 6  # 23, 29, 35, ... need only be distinct
    return out[:need]


def check_z_congruence(m: int, s: int) -> None:
    ok = (m % 3 == 1 and m >= 4 and s % 3 != 0) or (m % 3 == 2 and m >= 5 and s % 3 != 2)
    if not ok or not 1 <= s <= m:
        raise ParameterCongruenceViolation(f"(m, s) = ({m}, {s}) has no z-independent refinement")


@timed
def verify_z_refined(m: int, n: int, s: int, zs=None):
    check_z_congruence(m, s)
    if n < 1:
        raise ValueError("n must be >= 1")
    zs = z_samples(n) if zs is None else list(zs)
    values = [all_minus_one_sum(m, n, refinement=(z, s)) for z in zs]
    rhs = multi_zeil_rhs(m, n)
    independent = all(v == values[0] for v in values)
    passed = independent and values[0] == rhs
    note = "" if independent else "z-dependence detected"
    params = {"m": m, "n": n, "s": s, "z_count": len(zs)}
    return make_record("z_refined", params, values, rhs, passed=passed, note=note)


@timed
def verify_four_to_one_reduction(n: int, r5: int):
    """Four linked indices with the fifth held fixed collapse to a single sum."""
    if n < 1 or not 0 <= r5 <= n:
        raise ValueError("need n >= 1 and 0 <= r5 <= n")
    lhs = eval_chain_q_sum(n, 4, r5, weights=(-1,) * 4)
    inner = ZERO
    for r1 in range(n + 1):
        inner = inner + gauss_binomial(n - r1, r5) * _signed_monomial(binom2(r1), r1)
    rhs = inner * _signed_monomial(binom2(n), n)
    return make_record("four_to_one", {"n": n, "r5": r5}, lhs, rhs)


@timed
def verify_cycle_reduction(m: int, n: int):
    """m-cycle all-(-1) sum equals (-1)^n q^{C(n,2)} times the (m-3)-cycle sum."""
    if m < 4 or n < 1:
        raise ValueError("need m >= 4 and n >= 1")
    lhs = all_minus_one_sum(m, n)
    rhs = all_minus_one_sum(m - 3, n) * _signed_monomial(binom2(n), n)
    return make_record("cycle_reduction", {"m": m, "n": n}, lhs, rhs)
