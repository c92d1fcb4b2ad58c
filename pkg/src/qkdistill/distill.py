"""Exact and asymptotic advantage-distillation error probabilities.

Alice and Bob split their raw symbol strings into blocks of length ``L``;
Alice announces each block shifted by a fresh die value, Bob keeps a block
only if it decodes homogeneously.  Bob then holds a particular wrong symbol
with probability

    B(L) = r**L / (1 + (n-1) * r**L),        r = beta1/beta0,

while the eavesdropper, voting by majority over her inferred block, ends up
with a particular wrong value with probability ``E(L)``.  ``E(L)`` has no
elementary closed form; this module evaluates it three ways:

* :func:`eve_error_exact` - coefficient extraction from the multinomial
  majority/tie decomposition, exact up to the working precision;
* :func:`eve_error_bruteforce` - direct enumeration of all ``n**L``
  inferred blocks, used as an independent oracle;
* :func:`eve_gen_function` - the exponential generating function
  ``sum_L t**L E(L) / L!`` in closed form, which the truncated series built
  from :func:`eve_error_exact` must reproduce.

Both error probabilities decay geometrically; the asymptotic ratios
``B(L+1)/B(L) -> beta1/beta0`` and (in the smoothed sense) ``E(L+1)/E(L) ->
1 - (sqrt(eta0) - sqrt(eta1))**2`` are exposed by :func:`ratio_limits`, and
their comparison is the advantage-distillation success criterion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import ParameterError, SizeLimitError
from .model import BobChannel, EveChannel

#: Default workload bounds for the exact evaluator (the polynomial work
#: grows like n**2 * L**3) and for the enumeration oracle.
MAX_BLOCK_LENGTH = 200
MAX_ALPHABET = 16
MAX_BRUTE_FORCE_STATES = 10**7


def _check_block_length(L: int) -> int:
    if not isinstance(L, (int,)) or isinstance(L, bool) or L < 1:
        raise ParameterError(f"block length must be an integer >= 1, got {L!r}")
    return L


def bob_error_after_ad(b: BobChannel, L: int) -> float:
    """Probability ``B(L)`` that Bob keeps a particular wrong symbol.

    Evaluated as ``r**L / (1 + (n-1) r**L)`` with ``r = beta1/beta0``,
    i.e. normalized by ``beta0**L`` first so the division stays stable for
    any valid channel.
    """
    L = _check_block_length(L)
    r = b.beta1 / b.beta0
    x = r**L
    return x / (1.0 + (b.n - 1) * x)


def bob_error_ratio(b: BobChannel, L: int) -> float:
    """Consecutive-block-length ratio ``B(L+1)/B(L)`` in closed form.

    Safe where ``B(L)`` itself underflows: the ratio tends to
    ``beta1/beta0`` from below as ``L`` grows.
    """
    L = _check_block_length(L)
    r = b.beta1 / b.beta0
    x = r**L
    return r * (1.0 + (b.n - 1) * x) / (1.0 + (b.n - 1) * x * r)


def accept_rate(b: BobChannel, L: int) -> float:
    """Fraction ``beta0**L + (n-1)*beta1**L`` of blocks Bob keeps."""
    L = _check_block_length(L)
    return b.beta0**L + (b.n - 1) * b.beta1**L


@dataclass(frozen=True)
class RatioLimits:
    """Asymptotic decay ratios of the two per-block error probabilities."""

    bob_ratio: float
    eve_ratio: float


def ratio_limits(b: BobChannel, e: EveChannel) -> RatioLimits:
    """Limiting ratios ``beta1/beta0`` and ``1-(sqrt(eta0)-sqrt(eta1))**2``.

    Advantage distillation succeeds exactly when the Bob ratio is smaller
    than the Eve ratio.
    """
    if b.n != e.n:
        raise ParameterError(f"channel alphabet sizes differ: {b.n} vs {e.n}")
    eve_ratio = 1.0 - (math.sqrt(e.eta0) - math.sqrt(max(e.eta1, 0.0))) ** 2
    return RatioLimits(bob_ratio=b.beta1 / b.beta0, eve_ratio=eve_ratio)


def _working_digits(eta0: float, eta1: float, l_max: int) -> int:
    # E(L) ~ ratio**L, and it is recovered from 1 - success, so allow one
    # decimal digit of headroom per factor-of-ten decay plus a base margin.
    ratio = 1.0 - (math.sqrt(eta0) - math.sqrt(eta1)) ** 2
    lost = 0 if ratio >= 1.0 else int(math.ceil(-l_max * math.log10(ratio)))
    return 30 + lost


def _poly_mul_trunc(a: list, b: list, deg: int) -> list:
    if not a or not b:
        return []
    out = [mp.zero] * (min(deg, len(a) + len(b) - 2) + 1)
    for i, ai in enumerate(a):
        if i > deg:
            break
        for j, bj in enumerate(b):
            if i + j > deg:
                break
            out[i + j] += ai * bj
    return out


def _success_series(n: int, eta0_in: float, l_max: int) -> list:
    """Majority-vote success probabilities for block lengths 0..l_max.

    For each count ``m`` of correctly inferred symbols the remaining
    ``L - m`` wrong symbols are spread over the ``n-1`` wrong values; Eve
    wins outright when every wrong count stays below ``m`` and wins a tie
    against ``l`` wrong values at count ``m`` with probability ``1/(l+1)``.
    Summing the tie multiplicities with their binomial weights turns the
    success probability into

        S(L) = sum_m  C(L,m) eta0**m eta1**(L-m) (L-m)!
               * (1/n) sum_l C(n, l+1) (1/m!)**l [y**(L-m-l*m)] T_m(y)**(n-1-l)

    where ``T_m(y) = sum_{k<m} y**k / k!`` and ``[y**d]`` extracts a
    coefficient.  Every term is nonnegative.  Evaluated in mpmath arbitrary
    precision: the caller-facing error probability is ``(1-S)/(n-1)``,
    which for long blocks cancels almost all digits of ``S``, so the
    working precision grows with ``l_max`` (see :func:`_working_digits`).
    """
    with mp.workdps(_working_digits(eta0_in, (1.0 - eta0_in) / (n - 1), l_max)):
        eta0 = mpf(eta0_in)
        eta1 = (1 - eta0) / (n - 1)
        success = [mp.zero] * (l_max + 1)
        for m in range(l_max + 1):
            deg_max = l_max - m
            tail = [mp.one / mp.factorial(k) for k in range(min(m, deg_max + 1))]
            powers = [[mp.one]]
            cur = [mp.one]
            for _ in range(1, n):
                cur = _poly_mul_trunc(cur, tail, deg_max)
                powers.append(cur)
            inv_mfact = mp.one / mp.factorial(m)
            for L in range(m, l_max + 1):
                acc = mp.zero
                for l in range(n):
                    d = (L - m) - l * m
                    if d < 0:
                        break
                    poly = powers[n - 1 - l]
                    coeff = poly[d] if d < len(poly) else mp.zero
                    if coeff:
                        acc += mp.binomial(n, l + 1) * coeff * inv_mfact**l
                if acc:
                    success[L] += (
                        mp.binomial(L, m)
                        * eta0**m
                        * eta1 ** (L - m)
                        * mp.factorial(L - m)
                        * acc
                        / n
                    )
        return success


def _check_exact_feasible(n: int, L: int, max_block_length: int) -> None:
    if L > max_block_length or n > MAX_ALPHABET:
        raise SizeLimitError(
            f"exact evaluation capped at L <= {max_block_length}, n <= {MAX_ALPHABET}; "
            f"requested n={n}, L={L}"
        )


def eve_errors_exact(
    e: EveChannel, l_max: int, *, max_block_length: int = MAX_BLOCK_LENGTH
) -> list[float]:
    """``E(L)`` for every ``L`` in ``1..l_max`` in one pass.

    Shares the per-``m`` polynomial powers across block lengths, so a table
    costs barely more than the single largest entry.
    """
    l_max = _check_block_length(l_max)
    _check_exact_feasible(e.n, l_max, max_block_length)
    if e.eta1 <= 0.0:
        return [0.0] * l_max
    success = _success_series(e.n, e.eta0, l_max)
    return [float((1 - s) / (e.n - 1)) for s in success[1:]]


def eve_error_exact(
    e: EveChannel, L: int, *, max_block_length: int = MAX_BLOCK_LENGTH
) -> float:
    """Probability ``E(L)`` that majority voting leaves the eavesdropper
    with a particular wrong value, by exact coefficient extraction."""
    return eve_errors_exact(e, L, max_block_length=max_block_length)[-1]


def eve_error_bruteforce(
    e: EveChannel, L: int, *, max_states: int = MAX_BRUTE_FORCE_STATES
) -> float:
    """``E(L)`` by enumerating all ``n**L`` inferred blocks.

    Each block's probability is the plain product over symbols; the
    majority vote is resolved analytically, crediting ``1/(number of tied
    leaders)`` when the correct value ties for the lead and zero when it
    does not.  Deliberately shares no machinery with the coefficient
    extraction so the two can referee each other.
    """
    L = _check_block_length(L)
    n = e.n
    if n**L > max_states:
        raise SizeLimitError(f"{n}**{L} inferred blocks exceed the bound {max_states}")
    symbol_probs = [e.eta0] + [e.eta1] * (n - 1)
    success_terms = []
    total_terms = []
    for block in itertools.product(range(n), repeat=L):
        prob = 1.0
        counts = [0] * n
        for symbol in block:
            prob *= symbol_probs[symbol]
            counts[symbol] += 1
        top = max(counts)
        leaders = counts.count(top)
        if counts[0] == top:
            success_terms.append(prob / leaders)
        total_terms.append(prob)
    total = math.fsum(total_terms)
    if abs(total - 1.0) > 1e-12:
        raise ArithmeticError(f"block probabilities sum to {total}, not 1")
    return (1.0 - math.fsum(success_terms)) / (n - 1)


def eve_gen_function(e: EveChannel, t: float) -> float:
    """Exponential generating function ``sum_L t**L E(L) / L!`` in closed form.

    Evaluates

        e**t / (n-1) * sum_m  pois(m; eta0*t)
            * (1 - [w_m**n - w_{m-1}**n] / [n (w_m - w_{m-1})])

    where ``w_m(x)`` is the lower partial sum of the Poisson distribution
    with mean ``x = eta1*t`` and ``w_{-1} = 0``.  The bracket is expanded
    through the geometric-sum identity

        (w_m**n - w_{m-1}**n) / (w_m - w_{m-1}) = sum_i w_m**i w_{m-1}**(n-1-i)

    which removes the 0/0 once ``w_m`` saturates at 1.  The ``m``-sum stops
    when the Poisson weight drops below ``1e-18`` of its running peak.
    """
    if t < 0.0:
        raise ParameterError(f"t must be nonnegative, got {t}")
    n = e.n
    mean_correct = e.eta0 * t
    x = max(e.eta1, 0.0) * t
    pois = math.exp(-mean_correct)  # Poisson pmf at m, mean eta0*t
    term = math.exp(-x)  # x**m / m! * e**-x
    w_prev, w = 0.0, term
    peak = pois
    total = 0.0
    m = 0
    while True:
        bracket = math.fsum(w**i * w_prev ** (n - 1 - i) for i in range(n))
        total += pois * (1.0 - bracket / n)
        peak = max(peak, pois)
        if m > mean_correct and pois < 1e-18 * peak:
            break
        m += 1
        pois *= mean_correct / m
        term *= x / m
        w_prev, w = w, w + term
    return math.exp(t) / (n - 1) * total


@dataclass(frozen=True)
class ADExact:
    """Exact post-distillation block statistics at one block length."""

    block_length: int
    bob_error: float
    eve_error: float
    accept_rate: float


def ad_exact(b: BobChannel, e: EveChannel, L: int) -> ADExact:
    """Exact ``(B(L), E(L), accept rate)`` for one block length."""
    if b.n != e.n:
        raise ParameterError(f"channel alphabet sizes differ: {b.n} vs {e.n}")
    return ADExact(
        block_length=_check_block_length(L),
        bob_error=bob_error_after_ad(b, L),
        eve_error=eve_error_exact(e, L),
        accept_rate=accept_rate(b, L),
    )


def post_ad_channels(
    b: BobChannel, e: EveChannel, L: int
) -> tuple[BobChannel, EveChannel]:
    """Effective channels of the distilled key at block length ``L``.

    ``B(L)`` and ``E(L)`` become the new specific-wrong probabilities; the
    correct probabilities follow from normalization.  Distillation only
    improves Bob, so the result is always a valid channel pair.
    """
    if b.n != e.n:
        raise ParameterError(f"channel alphabet sizes differ: {b.n} vs {e.n}")
    L = _check_block_length(L)
    n = b.n
    bob_err = bob_error_after_ad(b, L)
    eve_err = eve_error_exact(e, L)
    post_bob = BobChannel(n=n, beta0=1.0 - (n - 1) * bob_err, beta1=bob_err)
    post_eve = EveChannel(n=n, eta0=1.0 - (n - 1) * eve_err, eta1=eve_err)
    return post_bob, post_eve


@dataclass(frozen=True)
class ADTableRow:
    """One row of the distillation table: exact values, consecutive
    ratios, and their asymptotic limits."""

    block_length: int
    bob_error: float
    eve_error: float
    accept_rate: float
    bob_error_ratio: float
    eve_error_ratio: float
    bob_ratio_limit: float
    eve_ratio_limit: float


def ad_table(
    b: BobChannel,
    e: EveChannel,
    l_max: int,
    *,
    max_block_length: int = MAX_BLOCK_LENGTH,
) -> list[ADTableRow]:
    """Rows ``L = 1..l_max`` of exact distillation statistics.

    The ratio columns compare each block length with the next one, so the
    eavesdropper series is evaluated up to ``l_max + 1``; ratios are formed
    at working precision before rounding to float, which keeps them
    meaningful even where ``E(L)`` itself underflows.
    """
    if b.n != e.n:
        raise ParameterError(f"channel alphabet sizes differ: {b.n} vs {e.n}")
    l_max = _check_block_length(l_max)
    _check_exact_feasible(b.n, l_max + 1, max_block_length)
    limits = ratio_limits(b, e)
    if e.eta1 <= 0.0:
        eve_vals = [mp.zero] * (l_max + 2)
    else:
        eve_vals = _success_series(e.n, e.eta0, l_max + 1)
        eve_vals = [(1 - s) / (e.n - 1) for s in eve_vals]
    rows = []
    for L in range(1, l_max + 1):
        eve_ratio = (
            float(eve_vals[L + 1] / eve_vals[L]) if eve_vals[L] > 0 else 0.0
        )
        rows.append(
            ADTableRow(
                block_length=L,
                bob_error=bob_error_after_ad(b, L),
                eve_error=float(eve_vals[L]),
                accept_rate=accept_rate(b, L),
                bob_error_ratio=bob_error_ratio(b, L),
                eve_error_ratio=eve_ratio,
                bob_ratio_limit=limits.bob_ratio,
                eve_ratio_limit=limits.eve_ratio,
            )
        )
    return rows
