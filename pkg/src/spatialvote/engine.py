"""Deterministic batch runner for simulated elections.

One run is fully specified by a RunConfig: the electorate weights, the
candidate count, the behavior model, the election count, and a master
seed. Each election derives its own generator seed from (master seed,
election index) through ``seeding.derive_seed``, so elections are
independent work units and any of them can be recomputed in isolation.
Parallel execution partitions the index range across processes; the
aggregation is a sequential fold over records in index order, which makes
every output byte independent of the worker count.

Per-election draw order (a frozen contract, like the seed derivation):

1. candidate slate: ``rng.choice(n, size=k, replace=False)``;
2. perception noise, when on: ``rng.uniform(-w, w, (n, k))``;
3. random-truncation draws, when on: ``rng.random(n)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernel
from .ballots import PreferenceProfile
from .behavior import (
    MODEL_NAMES,
    BehaviorSpec,
    spec_for_model,
    truncation_lengths,
)
from .rules import RULE_NAMES, condorcet_winner, tabulate_all
from .seeding import ELECTION_STREAM, ELECTORATE_STREAM, derive_seed
from .spatial import (
    BinWeights,
    Electorate,
    build_electorate,
    distribution_moments,
    sample_candidates,
)
from .stats import winner_histogram

DEFAULT_ELECTIONS = 100_000
DEFAULT_VOTERS = 100_001
DEFAULT_BINS = 50


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a run's output bytes.

    ``weights`` are the normalized bin weights; state and flavor are the
    labels they were loaded under. Worker count is deliberately not part of
    the config: it must never affect results.
    """

    state: str
    flavor: str
    weights: tuple[float, ...]
    k: int
    model: str
    behavior: BehaviorSpec
    elections: int = DEFAULT_ELECTIONS
    voters: int = DEFAULT_VOTERS
    seed: int = 0
    resample_electorate: bool = False
    bins: int = DEFAULT_BINS

    def validate(self) -> None:
        if self.model not in MODEL_NAMES:
            raise ValueError(f"unknown model {self.model!r}")
        if self.k not in (3, 4):
            raise ValueError("candidate count must be 3 or 4")
        if self.elections < 1:
            raise ValueError("election count must be >= 1")
        if self.voters < self.k:
            raise ValueError("electorate must be at least as large as the slate")
        if self.bins < 1:
            raise ValueError("histogram bin count must be >= 1")
        self.behavior.validate(self.k)

    def bin_weights(self) -> BinWeights:
        return BinWeights(state=self.state, flavor=self.flavor, weights=self.weights)

    def to_json_dict(self) -> dict:
        return {
            "state": self.state,
            "flavor": self.flavor,
            "weights": list(self.weights),
            "k": self.k,
            "model": self.model,
            "behavior": {
                "truncation": self.behavior.truncation,
                "truncation_cutoff": self.behavior.truncation_cutoff,
                "length_probs": [list(p) for p in self.behavior.length_probs]
                if self.behavior.length_probs is not None
                else None,
                "abstention_cutoff": self.behavior.abstention_cutoff,
                "noise_half_width": self.behavior.noise_half_width,
                "perception_basis": self.behavior.perception_basis,
            },
            "elections": self.elections,
            "voters": self.voters,
            "seed": self.seed,
            "resample_electorate": self.resample_electorate,
            "bins": self.bins,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RunConfig":
        raw = data["behavior"]
        behavior = BehaviorSpec(
            truncation=raw["truncation"],
            truncation_cutoff=raw["truncation_cutoff"],
            length_probs=tuple((int(l), float(p)) for l, p in raw["length_probs"])
            if raw["length_probs"] is not None
            else None,
            abstention_cutoff=raw["abstention_cutoff"],
            noise_half_width=raw["noise_half_width"],
            perception_basis=raw["perception_basis"],
        )
        config = cls(
            state=data["state"],
            flavor=data["flavor"],
            weights=tuple(float(w) for w in data["weights"]),
            k=int(data["k"]),
            model=data["model"],
            behavior=behavior,
            elections=int(data["elections"]),
            voters=int(data["voters"]),
            seed=int(data["seed"]),
            resample_electorate=bool(data["resample_electorate"]),
            bins=int(data["bins"]),
        )
        config.validate()
        return config


def make_config(
    weights: BinWeights,
    k: int,
    model: str,
    *,
    elections: int = DEFAULT_ELECTIONS,
    voters: int = DEFAULT_VOTERS,
    seed: int = 0,
    resample_electorate: bool = False,
    bins: int = DEFAULT_BINS,
    perception_basis: str = "perceived",
    **behavior_overrides,
) -> RunConfig:
    behavior = spec_for_model(
        model, k, perception_basis=perception_basis, **behavior_overrides
    )
    config = RunConfig(
        state=weights.state,
        flavor=weights.flavor,
        weights=weights.weights,
        k=k,
        model=model,
        behavior=behavior,
        elections=elections,
        voters=voters,
        seed=seed,
        resample_electorate=resample_electorate,
        bins=bins,
    )
    config.validate()
    return config


@dataclass(frozen=True)
class ElectionRecord:
    """Outcome of one simulated election.

    ``degenerate`` marks elections where every voter abstained; such
    records carry no winners and are excluded from all averages.
    """

    index: int
    degenerate: bool
    median_voter: float
    condorcet_exists: bool
    bullet_rate: float
    abstention_rate: float
    winner_index: dict[str, int]
    winner_position: dict[str, float]
    winner_distance: dict[str, float]


def shared_electorate(config: RunConfig) -> Electorate:
    """The electorate reused by every election when resampling is off."""
    return build_electorate(
        config.bin_weights(),
        config.voters,
        derive_seed(config.seed, ELECTORATE_STREAM, 0),
    )


def _election_electorate(config: RunConfig, index: int, shared: Electorate | None) -> Electorate:
    if shared is not None:
        return shared
    return build_electorate(
        config.bin_weights(),
        config.voters,
        derive_seed(config.seed, ELECTORATE_STREAM, index),
    )


def run_election(
    electorate: Electorate | None, config: RunConfig, index: int
) -> ElectionRecord:
    """Simulate election ``index``: sample a slate, cast ballots through
    the behavior pipeline, tabulate all five rules.

    ``electorate`` is the shared electorate, or None to build a fresh one
    for this index (resample mode).
    """
    electorate = _election_electorate(config, index, electorate)
    spec = config.behavior
    rng = np.random.default_rng(derive_seed(config.seed, ELECTION_STREAM, index))
    slate = sample_candidates(electorate, config.k, rng)
    slate_arr = np.asarray(slate.positions)
    n = electorate.n
    k = config.k

    noise = None
    if spec.noise_half_width:
        noise = rng.uniform(-spec.noise_half_width, spec.noise_half_width, size=(n, k))
    if spec.truncation == "random":
        lengths = truncation_lengths(rng.random(n), k, spec.length_probs)
        trunc_mode, trunc_cutoff = kernel.TRUNC_FIXED_LENGTHS, 0.0
    elif spec.truncation == "ideological":
        lengths = None
        trunc_mode, trunc_cutoff = kernel.TRUNC_IDEOLOGICAL, spec.truncation_cutoff
    else:
        lengths = None
        trunc_mode, trunc_cutoff = kernel.TRUNC_NONE, 0.0

    codes = kernel.cast_ballot_codes(
        electorate.positions,
        slate_arr,
        noise,
        abstain_cutoff=-1.0 if spec.abstention_cutoff is None else spec.abstention_cutoff,
        gates_on_true=spec.perception_basis == "true",
        trunc_mode=trunc_mode,
        trunc_cutoff=trunc_cutoff,
        trunc_lengths=lengths,
    )
    pairs, cast, bullets = kernel.profile_pairs_from_codes(codes, k)
    median = electorate.median

    if cast == 0:
        return ElectionRecord(
            index=index,
            degenerate=True,
            median_voter=median,
            condorcet_exists=False,
            bullet_rate=0.0,
            abstention_rate=1.0,
            winner_index={},
            winner_position={},
            winner_distance={},
        )

    profile = PreferenceProfile.from_pairs(k, pairs)
    outcomes = tabulate_all(profile)
    cw = condorcet_winner(profile)
    if cw is not None and outcomes["minimax"].winner != cw:
        raise RuntimeError(
            f"minimax winner diverged from an existing pairwise-dominant "
            f"candidate at election {index}"
        )

    winner_index = {rule: outcomes[rule].winner for rule in RULE_NAMES}
    winner_position = {
        rule: float(slate_arr[winner_index[rule]]) for rule in RULE_NAMES
    }
    winner_distance = {
        rule: abs(winner_position[rule] - median) for rule in RULE_NAMES
    }
    return ElectionRecord(
        index=index,
        degenerate=False,
        median_voter=median,
        condorcet_exists=cw is not None,
        bullet_rate=bullets / cast,
        abstention_rate=(n - cast) / n,
        winner_index=winner_index,
        winner_position=winner_position,
        winner_distance=winner_distance,
    )


# -- parallel execution -------------------------------------------------

_WORKER_STATE: dict = {}


def _init_worker(config: RunConfig, electorate: Electorate | None) -> None:
    _WORKER_STATE["config"] = config
    _WORKER_STATE["electorate"] = electorate


def _run_range(bounds: tuple[int, int]) -> list[ElectionRecord]:
    config = _WORKER_STATE["config"]
    electorate = _WORKER_STATE["electorate"]
    lo, hi = bounds
    return [run_election(electorate, config, i) for i in range(lo, hi)]


def run_batch(
    config: RunConfig,
    workers: int = 1,
    progress: Callable[[int], None] | None = None,
) -> tuple[list[ElectionRecord], dict]:
    """Run every election in the config and aggregate.

    Records come back in election-index order and the summary is a
    deterministic fold over them, so the bytes written downstream are
    identical for every worker count.
    """
    config.validate()
    shared = None if config.resample_electorate else shared_electorate(config)
    n = config.elections
    if workers <= 1:
        records = []
        for i in range(n):
            records.append(run_election(shared, config, i))
            if progress is not None:
                progress(i + 1)
    else:
        chunk = max(1, math.ceil(n / (workers * 4)))
        bounds = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_init_worker, initargs=(config, shared)
        ) as pool:
            records = []
            for part in pool.map(_run_range, bounds):
                records.extend(part)
                if progress is not None:
                    progress(len(records))
        records.sort(key=lambda r: r.index)
    return records, aggregate(records, config)


def aggregate(records: Sequence[ElectionRecord], config: RunConfig) -> dict:
    """Order-independent summary of a record stream.

    Averages are arithmetic means over non-degenerate records accumulated
    in election-index order (a fixed summation order, so results are
    bit-stable). Rates are summarized by their median.
    """
    live = [r for r in records if not r.degenerate]
    if not live:
        raise ValueError("no non-degenerate records to aggregate")
    count = len(records)
    mean, variance = distribution_moments(config.bin_weights())

    avg_distance = {
        rule: float(np.mean([r.winner_distance[rule] for r in live], dtype=np.float64))
        for rule in RULE_NAMES
    }
    histograms = {
        rule: winner_histogram([r.winner_position[rule] for r in live], config.bins)
        for rule in RULE_NAMES
    }
    return {
        "schema": "spatialvote.summary/1",
        "config": config.to_json_dict(),
        "election_count": count,
        "degenerate_count": count - len(live),
        "condorcet_fraction": sum(r.condorcet_exists for r in live) / len(live),
        "avg_distance": avg_distance,
        "median_bullet_rate": float(np.median([r.bullet_rate for r in live])),
        "median_abstention_rate": float(np.median([r.abstention_rate for r in live])),
        "median_voter_mean": float(np.mean([r.median_voter for r in live], dtype=np.float64)),
        "distribution_mean": mean,
        "distribution_variance": variance,
        "histogram_bins": config.bins,
        "histograms": histograms,
    }


def noise_shift_table(
    weights: BinWeights,
    k: int,
    half_widths: Sequence[float],
    *,
    elections: int,
    voters: int = DEFAULT_VOTERS,
    seed: int = 0,
) -> list[dict]:
    """Measure how perception noise reshuffles complete ballots.

    For each election, every voter's perception error is drawn once as a
    unit offset in [-1, 1] per candidate and scaled by each half-width, so
    a row answers: with this much noise, how many of the same voters'
    ballots change, and by how many adjacent swaps on average, relative to
    their noiseless ballots.
    """
    for w in half_widths:
        if not 0.0 <= w <= 0.5:
            raise ValueError("noise half-width grid values must lie in [0, 0.5]")
    electorate = build_electorate(weights, voters, derive_seed(seed, ELECTORATE_STREAM, 0))
    taus = kernel.tau_table(k)
    totals = {w: [0, 0] for w in half_widths}  # changed ballots, tau sum
    for index in range(elections):
        rng = np.random.default_rng(derive_seed(seed, ELECTION_STREAM, index))
        slate = sample_candidates(electorate, k, rng)
        slate_arr = np.asarray(slate.positions)
        unit = rng.uniform(-1.0, 1.0, size=(electorate.n, k))
        base_codes = kernel.cast_ballot_codes(electorate.positions, slate_arr, None)
        for w in half_widths:
            if w == 0.0:
                codes = base_codes
            else:
                codes = kernel.cast_ballot_codes(
                    electorate.positions, slate_arr, unit * w
                )
            totals[w][0] += int(np.count_nonzero(codes != base_codes))
            totals[w][1] += int(taus[base_codes, codes].sum(dtype=np.int64))
    ballots = elections * electorate.n
    return [
        {
            "half_width": w,
            "changed_fraction": totals[w][0] / ballots,
            "mean_kendall_tau": totals[w][1] / ballots,
        }
        for w in half_widths
    ]
