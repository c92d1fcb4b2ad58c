"""Channel parameter types and the Bob/Eve complementarity relation.

After basis reconciliation the protocol reduces to a pair of symmetric
classical channels on an ``n``-letter alphabet:

* Bob receives Alice's symbol correctly with probability ``beta0`` and each
  particular wrong symbol with probability ``beta1``, normalized as
  ``beta0 + (n-1)*beta1 = 1``.
* Whenever Bob's symbol agrees with Alice's, the eavesdropper infers it
  correctly with probability ``eta0`` and gets each particular wrong value
  with probability ``eta1 = (1-eta0)/(n-1)``.  (When Bob's symbol differs
  she learns both symbols exactly, so no channel is needed for that branch.)

The two channels are tied together by the complementarity relation

    sqrt(eta0) - sqrt(eta1) = sqrt(beta1/beta0),

implemented here twice over independent routes: :func:`eve_from_bob` solves
the relation in closed form, while :func:`srm_eve_oracle` rebuilds Eve's
error-minimizing square-root measurement from the Gram matrix of her
ancilla states and must agree to near machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

#: Tolerance for the probability normalization checks.
NORMALIZATION_TOL = 1e-12


def _check_dimension(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ParameterError(f"alphabet size must be an integer, got {n!r}")
    if n < 2:
        raise ParameterError(f"alphabet size must be >= 2, got {n}")
    return int(n)


@dataclass(frozen=True)
class BobChannel:
    """Symmetric Alice->Bob channel: correct with ``beta0``, each specific
    wrong symbol with ``beta1``."""

    n: int
    beta0: float
    beta1: float

    def __post_init__(self):
        _check_dimension(self.n)
        if not (0.0 <= self.beta1 and self.beta0 <= 1.0):
            raise ParameterError(
                f"need 0 <= beta1 and beta0 <= 1, got beta0={self.beta0}, beta1={self.beta1}"
            )
        if self.beta0 < 1.0 / self.n - NORMALIZATION_TOL:
            raise ParameterError(
                f"beta0={self.beta0} below the uncorrelated value 1/{self.n}"
            )
        if abs(self.beta0 + (self.n - 1) * self.beta1 - 1.0) > NORMALIZATION_TOL:
            raise ParameterError(
                f"beta0 + (n-1)*beta1 must equal 1, got {self.beta0 + (self.n - 1) * self.beta1}"
            )


@dataclass(frozen=True)
class EveChannel:
    """Eavesdropper inference channel, conditioned on Bob agreeing with Alice."""

    n: int
    eta0: float
    eta1: float

    def __post_init__(self):
        _check_dimension(self.n)
        if not (1.0 / self.n - NORMALIZATION_TOL <= self.eta0 <= 1.0 + NORMALIZATION_TOL):
            raise ParameterError(f"need 1/n <= eta0 <= 1, got eta0={self.eta0}")
        if self.eta1 < -NORMALIZATION_TOL:
            raise ParameterError(f"eta1 must be nonnegative, got {self.eta1}")
        if abs(self.eta0 + (self.n - 1) * self.eta1 - 1.0) > NORMALIZATION_TOL:
            raise ParameterError(
                f"eta0 + (n-1)*eta1 must equal 1, got {self.eta0 + (self.n - 1) * self.eta1}"
            )


def bob_channel(n: int, beta0: float, *, allow_boundary: bool = False) -> BobChannel:
    """Build a :class:`BobChannel` from the correct-symbol probability.

    ``beta1`` follows from the normalization.  Key analysis assumes the
    correlated regime ``1/n < beta0 <= 1``; the boundary values
    ``beta0 = 1/n`` (uncorrelated) and ``beta0 = 1`` are only meaningful as
    limits and must be requested explicitly with ``allow_boundary``.
    """
    n = _check_dimension(n)
    if beta0 > 1.0:
        raise ParameterError(f"beta0={beta0} exceeds 1")
    lower_ok = beta0 >= 1.0 / n if allow_boundary else beta0 > 1.0 / n
    if not lower_ok:
        raise ParameterError(
            f"beta0={beta0} must be {'>=' if allow_boundary else 'strictly above'} 1/{n}"
        )
    beta1 = (1.0 - beta0) / (n - 1)
    return BobChannel(n=n, beta0=beta0, beta1=beta1)


def eve_channel(n: int, eta0: float) -> EveChannel:
    """Build an :class:`EveChannel` from the correct-inference probability."""
    n = _check_dimension(n)
    if not (1.0 / n <= eta0 <= 1.0):
        raise ParameterError(f"eta0={eta0} must lie in [1/{n}, 1]")
    return EveChannel(n=n, eta0=eta0, eta1=(1.0 - eta0) / (n - 1))


def eve_from_bob(b: BobChannel) -> EveChannel:
    """Closed-form solution of the complementarity relation.

    Solves the system

        sqrt(eta0) - sqrt(eta1) = sqrt(beta1/beta0)
        eta0 + (n-1)*eta1       = 1

    for the root with ``eta0 >= 1/n``; the other quadratic branch would put
    Eve below random guessing and is discarded.  With
    ``s = sqrt(beta1/beta0)``:

        sqrt(eta0) = ((n-1)*s + sqrt(n - (n-1)*s**2)) / n

    Limits: ``beta0 = 1`` gives ``eta0 = 1/n`` (Eve fully random) and
    ``beta0 = 1/n`` gives ``eta0 = 1`` (Eve perfect, Bob uncorrelated).
    """
    n = b.n
    ratio = max(b.beta1, 0.0) / b.beta0
    s = math.sqrt(ratio)
    root = ((n - 1) * s + math.sqrt(n - (n - 1) * s * s)) / n
    eta0 = root * root
    return EveChannel(n=n, eta0=eta0, eta1=(1.0 - eta0) / (n - 1))


@dataclass(frozen=True)
class GramMatrix:
    """Gram matrix of Eve's diagonal ancilla states.

    The matrix is circulant with unit diagonal and constant off-diagonal
    ``off_diagonal = 1 - beta1/beta0``, so its spectrum is known in closed
    form: ``1 + (n-1)*g`` once (uniform eigenvector) and ``1 - g`` with
    multiplicity ``n-1``.
    """

    n: int
    off_diagonal: float

    def __post_init__(self):
        _check_dimension(self.n)
        if not (-NORMALIZATION_TOL <= self.off_diagonal <= 1.0 + NORMALIZATION_TOL):
            raise ParameterError(
                f"off-diagonal overlap must lie in [0, 1], got {self.off_diagonal}"
            )

    def eigenvalues(self) -> tuple[float, float]:
        """Return ``(uniform eigenvalue, degenerate eigenvalue)``, both >= 0."""
        g = self.off_diagonal
        return 1.0 + (self.n - 1) * g, 1.0 - g

    def as_array(self) -> np.ndarray:
        """Dense matrix representation."""
        g = self.off_diagonal
        return np.full((self.n, self.n), g) + np.eye(self.n) * (1.0 - g)

    def prior_weighted_root_entries(self) -> tuple[float, float]:
        """Entries of the square root of ``G/n`` (equal priors ``1/n``).

        The root shares the circulant eigenvectors, so it is again of the
        form ``diag * I + off * (ones - I)`` and only two numbers are
        needed.  No numerical eigensolver is involved.
        """
        lam_uniform, lam_degenerate = self.eigenvalues()
        p = math.sqrt(max(lam_degenerate, 0.0) / self.n)
        off = (math.sqrt(lam_uniform / self.n) - p) / self.n
        return p + off, off


def gram_matrix(b: BobChannel) -> GramMatrix:
    """Gram matrix of the ancilla states attached to a Bob channel."""
    return GramMatrix(n=b.n, off_diagonal=1.0 - max(b.beta1, 0.0) / b.beta0)


def srm_eve_oracle(b: BobChannel) -> EveChannel:
    """Eve's channel rebuilt from the square-root measurement.

    Independent route to :func:`eve_from_bob`: form the prior-weighted Gram
    matrix ``G/n`` of the ancilla states, take its matrix square root via
    the analytic circulant eigendecomposition, and read the success and
    error amplitudes off the root's diagonal and off-diagonal entries:

        eta0 = n * diag**2,   eta1 = n * off**2.

    Both routes must agree to within ``1e-12``; the equality is exercised
    by the verification suite rather than assumed here.
    """
    diag, off = gram_matrix(b).prior_weighted_root_entries()
    return EveChannel(n=b.n, eta0=b.n * diag * diag, eta1=b.n * off * off)
