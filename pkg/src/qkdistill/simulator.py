"""Seeded Monte Carlo execution of the advantage-distillation protocol.

Per block: draw the per-symbol triples (Alice, Bob, eavesdropper), have
Alice cast a die and announce the die-shifted block, let Bob subtract his
block and keep it only if all residues agree, and let Eve subtract her
inferred block from the announcement and take the majority residue with a
uniformly random tie-break.  Tallies are compared against the exact
formulas with binomial error bands.

Reproducibility contract: a report depends only on the configuration
(including the seed), never on the worker count.  Blocks are processed in
fixed-size batches; batch ``k`` draws from an independent substream derived
from ``(seed, k)``, and the per-batch tallies are integers whose sum is
order-independent.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .distill import accept_rate, bob_error_after_ad, eve_error_exact, post_ad_channels
from .errors import ParameterError
from .infotheory import ck_yield, yield_from_rates
from .model import BobChannel, EveChannel, _check_dimension, bob_channel, eve_from_bob

#: Blocks per random-stream batch.  Part of the reproducibility contract:
#: changing it changes which substream a block draws from.
BATCH_BLOCKS = 8192

#: Half-width of the acceptance bands, in binomial standard errors.
SIGMA_BAND = 3.0


@dataclass(frozen=True)
class ProtocolConfig:
    """Full specification of one simulation run."""

    n: int
    beta0: float
    block_length: int
    num_blocks: int
    seed: int

    def __post_init__(self):
        _check_dimension(self.n)
        if not (1.0 / self.n < self.beta0 <= 1.0):
            raise ParameterError(f"beta0={self.beta0} outside (1/{self.n}, 1]")
        if self.block_length < 1:
            raise ParameterError(f"block_length must be >= 1, got {self.block_length}")
        if self.num_blocks < 1:
            raise ParameterError(f"num_blocks must be >= 1, got {self.num_blocks}")
        if not (0 <= self.seed < 2**64):
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class RateComparison:
    """One empirical rate against its exact counterpart."""

    name: str
    empirical: float
    exact: float
    std_error: float
    z_score: float
    within_band: bool


@dataclass(frozen=True)
class SimReport:
    """Tallies and rate comparisons from one simulation run."""

    n: int
    beta0: float
    block_length: int
    num_blocks: int
    seed: int
    accepted_blocks: int
    bob_wrong_blocks: int
    bob_correct_blocks: int
    eve_wrong_given_bob_correct: int
    eve_correct_given_bob_wrong: int
    acceptance: RateComparison
    bob_error: RateComparison
    eve_error: RateComparison

    def to_dict(self) -> dict:
        return asdict(self)


def sample_triple(
    rng: np.random.Generator, b: BobChannel, e: EveChannel
) -> tuple[int, int, int, bool]:
    """Draw one ``(alice, bob, eve_value, eve_certain)`` symbol triple.

    Alice is uniform; Bob matches her with probability ``beta0`` and lands
    on each other symbol with probability ``beta1``.  If Bob erred, the
    eavesdropper resolves both symbols exactly (``eve_certain`` set) and
    ``eve_value`` is Alice's symbol; otherwise she infers Alice's symbol
    through her ``(eta0, eta1)`` channel.
    """
    if b.n != e.n:
        raise ParameterError(f"channel alphabet sizes differ: {b.n} vs {e.n}")
    n = b.n
    alice = int(rng.integers(0, n))
    if rng.random() < b.beta0:
        bob = alice
    else:
        bob = (alice + int(rng.integers(1, n))) % n
    if bob != alice:
        return alice, bob, alice, True
    if rng.random() < e.eta0:
        eve_value = alice
    else:
        eve_value = (alice + int(rng.integers(1, n))) % n
    return alice, bob, eve_value, False


def _batch_rng(seed: int, batch_index: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(batch_index,))
    )


def _draw_block_arrays(
    rng: np.random.Generator, b: BobChannel, e: EveChannel, size: int, length: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized triples plus per-block die and tie-break draws.

    The draw shapes are fixed by ``(size, length)`` alone, so stream
    consumption never depends on the sampled values.
    """
    n = b.n
    alice = rng.integers(0, n, size=(size, length))
    bob_err = rng.random((size, length)) >= b.beta0
    bob_offsets = rng.integers(1, n, size=(size, length))
    bob = (alice + np.where(bob_err, bob_offsets, 0)) % n
    eve_err = rng.random((size, length)) >= e.eta0
    eve_offsets = rng.integers(1, n, size=(size, length))
    eve_inferred = (alice + np.where(eve_err, eve_offsets, 0)) % n
    # Bob wrong => Eve resolves the symbol exactly.
    eve = np.where(bob_err, alice, eve_inferred)
    die = rng.integers(0, n, size=(size,))
    tie_break = rng.random((size,))
    return alice, bob, eve, die, tie_break


def _majority_residue(
    residues: np.ndarray, n: int, tie_break: np.ndarray
) -> np.ndarray:
    """Most frequent residue per row; ties resolved uniformly at random."""
    counts = (residues[:, :, None] == np.arange(n)[None, None, :]).sum(axis=1)
    top = counts.max(axis=1)
    tied = counts == top[:, None]
    pick = (tie_break * tied.sum(axis=1)).astype(np.int64)
    chosen = tied & (tied.cumsum(axis=1) == (pick + 1)[:, None])
    return chosen.argmax(axis=1)


def _run_batch(
    seed: int, batch_index: int, size: int, b: BobChannel, e: EveChannel, length: int
) -> np.ndarray:
    rng = _batch_rng(seed, batch_index)
    n = b.n
    alice, bob, eve, die, tie_break = _draw_block_arrays(rng, b, e, size, length)

    announced = (alice + die[:, None]) % n
    bob_residues = (announced - bob) % n
    accept = (bob_residues == bob_residues[:, :1]).all(axis=1)
    distilled = bob_residues[:, 0]
    bob_ok = distilled == die

    eve_guess = _majority_residue((announced - eve) % n, n, tie_break)

    return np.array(
        [
            accept.sum(),
            (accept & ~bob_ok).sum(),
            (accept & bob_ok).sum(),
            (accept & bob_ok & (eve_guess != die)).sum(),
            (accept & ~bob_ok & (eve_guess == die)).sum(),
        ],
        dtype=np.int64,
    )


def _compare(name: str, wrong: int, total: int, exact: float) -> RateComparison:
    empirical = wrong / total if total > 0 else 0.0
    std_error = math.sqrt(exact * (1.0 - exact) / total) if total > 0 else 0.0
    diff = empirical - exact
    if std_error > 0.0:
        z = diff / std_error
    else:
        z = 0.0 if diff == 0.0 else math.inf
    return RateComparison(
        name=name,
        empirical=empirical,
        exact=exact,
        std_error=std_error,
        z_score=z,
        within_band=abs(z) <= SIGMA_BAND,
    )


def run_ad_simulation(cfg: ProtocolConfig, workers: int = 1) -> SimReport:
    """Simulate the protocol and compare tallies with the exact formulas.

    ``workers`` only parallelizes batch processing; it is deliberately not
    echoed in the report, which is byte-for-byte identical for any worker
    count.  Eve's conditional error is tallied over accepted blocks where
    Bob's distilled symbol is correct, matching the conditioning of the
    exact ``E(L)``; accepted blocks where Bob is wrong (there Eve knows
    Alice's value exactly) are reported separately.
    """
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    b = bob_channel(cfg.n, cfg.beta0)
    e = eve_from_bob(b)
    L = cfg.block_length

    sizes = []
    remaining = cfg.num_blocks
    while remaining > 0:
        sizes.append(min(BATCH_BLOCKS, remaining))
        remaining -= sizes[-1]

    def job(batch_index: int) -> np.ndarray:
        return _run_batch(cfg.seed, batch_index, sizes[batch_index], b, e, L)

    if workers == 1:
        tallies = [job(k) for k in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(job, range(len(sizes))))
    accepted, bob_wrong, bob_correct, eve_wrong, eve_right_bw = (
        int(v) for v in np.sum(tallies, axis=0)
    )

    return SimReport(
        n=cfg.n,
        beta0=cfg.beta0,
        block_length=L,
        num_blocks=cfg.num_blocks,
        seed=cfg.seed,
        accepted_blocks=accepted,
        bob_wrong_blocks=bob_wrong,
        bob_correct_blocks=bob_correct,
        eve_wrong_given_bob_correct=eve_wrong,
        eve_correct_given_bob_wrong=eve_right_bw,
        acceptance=_compare("accept_rate", accepted, cfg.num_blocks, accept_rate(b, L)),
        bob_error=_compare(
            "bob_wrong_rate", bob_wrong, accepted, (cfg.n - 1) * bob_error_after_ad(b, L)
        ),
        eve_error=_compare(
            "eve_wrong_rate", eve_wrong, bob_correct, (cfg.n - 1) * eve_error_exact(e, L)
        ),
    )


@dataclass(frozen=True)
class DistilledYieldEstimate:
    """One-way yield of the distilled key: empirical next to exact."""

    empirical_beta0: float
    empirical_eta0: float
    empirical_yield: float
    exact_beta0: float
    exact_eta0: float
    exact_yield: float


def distilled_ck_estimate(report: SimReport) -> DistilledYieldEstimate:
    """Plug the post-distillation rates into the one-way yield.

    The empirical side uses the simulated wrong-rates (with the boundary
    log conventions); the exact side evaluates the closed-form
    post-distillation channels at the same block length.
    """
    if report.accepted_blocks <= 0 or report.bob_correct_blocks <= 0:
        raise ParameterError("report has no accepted blocks to estimate from")
    emp_beta0 = 1.0 - report.bob_wrong_blocks / report.accepted_blocks
    emp_eta0 = 1.0 - report.eve_wrong_given_bob_correct / report.bob_correct_blocks
    b = bob_channel(report.n, report.beta0)
    post_bob, post_eve = post_ad_channels(b, eve_from_bob(b), report.block_length)
    return DistilledYieldEstimate(
        empirical_beta0=emp_beta0,
        empirical_eta0=emp_eta0,
        empirical_yield=yield_from_rates(report.n, emp_beta0, emp_eta0),
        exact_beta0=post_bob.beta0,
        exact_eta0=post_eve.eta0,
        exact_yield=ck_yield(post_bob, post_eve),
    )
