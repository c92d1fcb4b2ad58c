"""One-way key yield, distillation thresholds, and threshold-curve data.

All logarithms are taken base ``n`` so that rates are measured in alphabet
symbols per raw symbol: a perfect key against a random eavesdropper yields
exactly 1.  The usual ``0*log(0) = 0`` convention applies at boundary
channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .model import ( BobChannel, EveChannel, _check_dimension, bob_channel,
    eve_channel, eve_from_bob)

#: Bisection tolerance (in beta0) for the yield-boundary solvers.
ROOT_TOL = 1e-10


def _require_same_n(b: BobChannel, e: EveChannel) -> int:
    if b.n != e.n:
        raise ParameterError(f"channel alphabet sizes differ: {b.n} vs {e.n}")
    return b.n


def yield_from_rates(n: int, beta0: float, eta0: float) -> float:
    """One-way secret-key yield from raw ``(beta0, eta0)`` values.

    Computes, in base-``n`` logarithms,

        beta0*log(beta0) + (1-beta0)*log(beta1)
        - beta0*(eta0*log(eta0) + (1-eta0)*log(eta1))

    with ``beta1``/``eta1`` from the symmetric-channel normalization.  The
    factor ``beta0`` on Eve's entropy term reflects that she only has to
    guess when Bob's symbol is correct; otherwise she knows it.  Accepts
    bare rates so it can also score empirical, post-distillation estimates.
    """
    n = _check_dimension(n)
    if not (0.0 <= beta0 <= 1.0 and 0.0 <= eta0 <= 1.0):
        raise ParameterError(f"rates must lie in [0, 1], got beta0={beta0}, eta0={eta0}")
    ln_n = math.log(n)
    beta1 = (1.0 - beta0) / (n - 1)
    eta1 = (1.0 - eta0) / (n - 1)

    def xlog(p: float) -> float:
        return 0.0 if p == 0.0 else p * math.log(p) / ln_n

    def wlog(weight: float, p: float) -> float:
        # weight*log(p) with the 0*log(0) convention tied to the weight
        return 0.0 if weight == 0.0 else weight * math.log(p) / ln_n

    bob_part = xlog(beta0) + wlog(1.0 - beta0, beta1)
    eve_part = xlog(eta0) + wlog(1.0 - eta0, eta1)
    return bob_part - beta0 * eve_part


def ck_yield(b: BobChannel, e: EveChannel) -> float:
    """One-way (Csiszar-Korner) key yield for a channel pair, in symbols
    per raw symbol; positive iff one-way distillation is possible."""
    n = _require_same_n(b, e)
    return yield_from_rates(n, b.beta0, e.eta0)


def ed_threshold(n: int) -> float:
    """Entanglement-distillation threshold on ``beta0``.

    Distillation of the admixture states works iff ``beta0 > 2*beta1``;
    under the normalization that boundary sits at ``beta0 = 2/(n+1)``.
    """
    n = _check_dimension(n)
    return 2.0 / (n + 1)


def ad_threshold_satisfied(b: BobChannel, e: EveChannel) -> bool:
    """Whether advantage distillation eventually beats the eavesdropper.

    True iff ``beta1/beta0 < 1 - (sqrt(eta0) - sqrt(eta1))**2``, i.e. Bob's
    per-block error shrinks asymptotically faster than Eve's.
    """
    _require_same_n(b, e)
    bound = 1.0 - (math.sqrt(e.eta0) - math.sqrt(max(e.eta1, 0.0))) ** 2
    return b.beta1 / b.beta0 < bound


def ck_boundary_beta0(n: int, e: EveChannel, tol: float = ROOT_TOL) -> float | None:
    """Zero-yield ``beta0`` for a fixed eavesdropper channel.

    Treats ``beta0`` and ``eta0`` as independent axes and solves
    ``yield(beta0, eta0) = 0`` for ``beta0`` in ``(1/n, 1]`` by bisection
    (the yield is strictly increasing in ``beta0`` at fixed ``eta0``).
    Returns ``None`` when the yield is negative on the whole interval.
    """
    n = _check_dimension(n)
    if e.n != n:
        raise ParameterError(f"eavesdropper channel has alphabet size {e.n}, expected {n}")
    f = lambda beta0: yield_from_rates(n, beta0, e.eta0)
    lo, hi = 1.0 / n, 1.0
    f_hi = f(hi)
    if f_hi < 0.0:
        return None
    if f_hi == 0.0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ck_intersection(n: int, tol: float = ROOT_TOL) -> tuple[float, float]:
    """Point where the zero-yield contour meets the complementarity curve.

    Along the curve ``eta0 = eta0(beta0)`` fixed by the complementarity
    relation, the yield increases strictly with ``beta0`` from -1 (Bob
    uncorrelated, Eve perfect) to +1 (perfect key, Eve random); the unique
    root is bracketed and bisected to ``tol``.  Returns ``(beta0, eta0)``.
    """
    n = _check_dimension(n)

    def f(beta0: float) -> float:
        e = eve_from_bob(bob_channel(n, beta0, allow_boundary=True))
        return yield_from_rates(n, beta0, e.eta0)

    lo, hi = 1.0 / n, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    beta0 = 0.5 * (lo + hi)
    return beta0, eve_from_bob(bob_channel(n, beta0)).eta0


def triple_point(n: int) -> tuple[float, float]:
    """``(beta0, eta0)`` where the ED threshold, the AD threshold, and the
    complementarity curve all meet: ``beta0 = 2/(n+1)``, with ``eta0`` from
    the closed-form relation (``beta1/beta0 = 1/2`` there)."""
    n = _check_dimension(n)
    beta0 = ed_threshold(n)
    return beta0, eve_from_bob(bob_channel(n, beta0)).eta0


@dataclass(frozen=True)
class ThresholdReport:
    """Security thresholds for one alphabet size."""

    n: int
    ed_beta0: float
    triple_point: tuple[float, float]
    ck_intersection: tuple[float, float]


def threshold_report(n: int) -> ThresholdReport:
    """Assemble the threshold summary for alphabet size ``n``."""
    return ThresholdReport(
        n=_check_dimension(n),
        ed_beta0=ed_threshold(n),
        triple_point=triple_point(n),
        ck_intersection=ck_intersection(n),
    )


@dataclass(frozen=True)
class CurvePoint:
    """One sampled point of a labeled threshold curve in the
    ``(beta0, eta0)`` plane."""

    curve: str
    beta0: float
    eta0: float


#: Curve labels, in emission order.
CURVE_LABELS = ("a", "b", "c", "d")


def curve_data(n: int, grid_size: int) -> list[CurvePoint]:
    """Sample the four threshold curves on a uniform grid.

    * ``a`` - complementarity relation, sampled over ``beta0``;
    * ``b`` - ED threshold, the vertical line ``beta0 = 2/(n+1)``;
    * ``c`` - AD boundary ``beta1/beta0 = 1 - (sqrt(eta0)-sqrt(eta1))**2``,
      solved for ``beta0`` at each ``eta0``;
    * ``d`` - zero-yield contour with ``beta0`` and ``eta0`` independent.

    Grids are inclusive over ``[1/n, 1]``; the closed boundary values are
    well-defined limits for every curve.
    """
    n = _check_dimension(n)
    if grid_size < 2:
        raise ParameterError(f"grid_size must be >= 2, got {grid_size}")
    lo = 1.0 / n
    step = (1.0 - lo) / (grid_size - 1)
    grid = [min(lo + i * step, 1.0) for i in range(grid_size)]

    points: list[CurvePoint] = []
    for beta0 in grid:
        e = eve_from_bob(bob_channel(n, beta0, allow_boundary=True))
        points.append(CurvePoint("a", beta0, e.eta0))
    ed = ed_threshold(n)
    for eta0 in grid:
        points.append(CurvePoint("b", ed, eta0))
    for eta0 in grid:
        e = eve_channel(n, eta0)
        bound = 1.0 - (math.sqrt(e.eta0) - math.sqrt(max(e.eta1, 0.0))) ** 2
        points.append(CurvePoint("c", 1.0 / (1.0 + (n - 1) * bound), eta0))
    for eta0 in grid:
        root = ck_boundary_beta0(n, eve_channel(n, eta0))
        if root is not None:
            points.append(CurvePoint("d", root, eta0))
    return points
