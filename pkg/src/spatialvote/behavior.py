"""Voter behavior: perception noise, abstention, and ballot truncation.

A behavior specification switches each of the three features on or off and
carries its parameter, which yields six named models:

==============================  =========================================
``theoretical-ideal``           complete ballots, full turnout, no noise
``ideological-truncation``      rank only candidates within a distance
                                cutoff (0.37 for k=3, 0.26 for k=4)
``random-truncation``           ballot length drawn at random
                                (k=3: bullet 0.35; k=4: bullet 0.34,
                                length-2 0.20; remainder complete)
``abstention``                  cast a ballot only if some candidate is
                                within 0.14
``noise``                       each voter perceives each candidate
                                displaced by an independent uniform draw
                                from [-0.14, 0.14]
``most-realistic``              all three features at their defaults
==============================  =========================================

The pipeline order is noise, then abstention, then truncation, all
evaluated on the voter's perceived candidate positions (a config switch
can point the abstention/truncation distance tests at true positions
instead). A voter with no candidate inside the truncation cutoff bullet
votes for their top perceived choice; turnout stays complete whenever
abstention is off.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .ballots import Ranking
from .spatial import rank_by_distance

MODEL_NAMES = (
    "theoretical-ideal",
    "ideological-truncation",
    "random-truncation",
    "abstention",
    "noise",
    "most-realistic",
)

IDEOLOGICAL_CUTOFF = {3: 0.37, 4: 0.26}
ABSTENTION_CUTOFF = 0.14
NOISE_HALF_WIDTH = 0.14
LENGTH_PROBS = {3: ((1, 0.35),), 4: ((1, 0.34), (2, 0.20))}

TRUNCATION_MODES = ("none", "ideological", "random")
PERCEPTION_BASES = ("perceived", "true")


class BehaviorError(ValueError):
    """Invalid behavior specification or parameters."""


@dataclass(frozen=True)
class BehaviorSpec:
    """Which behaviors are active and with what parameters.

    ``length_probs`` maps truncated lengths to probabilities; leftover mass
    goes to complete ballots. ``perception_basis`` selects whether the
    abstention/truncation distance tests read perceived or true positions
    (ranking always uses perceived positions when noise is on).
    """

    truncation: str = "none"
    truncation_cutoff: float | None = None
    length_probs: tuple[tuple[int, float], ...] | None = None
    abstention_cutoff: float | None = None
    noise_half_width: float | None = None
    perception_basis: str = "perceived"

    def validate(self, k: int) -> None:
        if self.truncation not in TRUNCATION_MODES:
            raise BehaviorError(f"unknown truncation mode {self.truncation!r}")
        if self.perception_basis not in PERCEPTION_BASES:
            raise BehaviorError(f"unknown perception basis {self.perception_basis!r}")
        if self.truncation == "ideological":
            if self.truncation_cutoff is None or self.truncation_cutoff < 0:
                raise BehaviorError("ideological truncation needs a cutoff >= 0")
        if self.truncation == "random":
            probs = dict(self.length_probs or ())
            if any(not 1 <= length < k for length in probs):
                raise BehaviorError("truncated lengths must lie in 1..k-1")
            if any(p < 0 for p in probs.values()):
                raise BehaviorError("length probabilities must be non-negative")
            if sum(probs.values()) > 1.0:
                raise BehaviorError("length probabilities sum to more than 1")
        if self.abstention_cutoff is not None and self.abstention_cutoff < 0:
            raise BehaviorError("abstention cutoff must be >= 0")
        if self.noise_half_width is not None and self.noise_half_width < 0:
            raise BehaviorError("noise half-width must be >= 0")


def spec_for_model(
    model: str,
    k: int,
    *,
    truncation_cutoff: float | None = None,
    abstention_cutoff: float | None = None,
    noise_half_width: float | None = None,
    length_probs: Sequence[tuple[int, float]] | None = None,
    perception_basis: str = "perceived",
) -> BehaviorSpec:
    """Resolve a model name plus optional overrides into a BehaviorSpec."""
    if model not in MODEL_NAMES:
        raise BehaviorError(
            f"unknown model {model!r}; expected one of {', '.join(MODEL_NAMES)}"
        )
    if k not in IDEOLOGICAL_CUTOFF:
        raise BehaviorError("candidate count must be 3 or 4")
    spec = BehaviorSpec(perception_basis=perception_basis)
    if model in ("ideological-truncation", "most-realistic"):
        cutoff = truncation_cutoff if truncation_cutoff is not None else IDEOLOGICAL_CUTOFF[k]
        spec = replace(spec, truncation="ideological", truncation_cutoff=cutoff)
    if model == "random-truncation":
        probs = tuple(length_probs) if length_probs is not None else LENGTH_PROBS[k]
        spec = replace(spec, truncation="random", length_probs=probs)
    if model in ("abstention", "most-realistic"):
        cutoff = abstention_cutoff if abstention_cutoff is not None else ABSTENTION_CUTOFF
        spec = replace(spec, abstention_cutoff=cutoff)
    if model in ("noise", "most-realistic"):
        width = noise_half_width if noise_half_width is not None else NOISE_HALF_WIDTH
        spec = replace(spec, noise_half_width=width)
    spec.validate(k)
    return spec


@dataclass(frozen=True)
class BallotDecision:
    """Outcome of one voter's pipeline: a cast ranking or an abstention."""

    ranking: Ranking | None
    perceived: tuple[float, ...]

    @property
    def abstained(self) -> bool:
        return self.ranking is None


def apply_noise(
    rng: np.random.Generator | int, slate_positions: Sequence[float], half_width: float
) -> np.ndarray:
    """Perceived positions: each candidate shifted by an independent uniform
    draw from [-half_width, half_width]. No clamping to the axis; only
    relative distances matter for ranking."""
    if half_width < 0:
        raise BehaviorError("noise half-width must be >= 0")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    slate = np.asarray(slate_positions, dtype=float)
    if half_width == 0:
        return slate.copy()
    return slate + rng.uniform(-half_width, half_width, size=len(slate))


def should_abstain(voter: float, perceived: Sequence[float], cutoff: float) -> bool:
    """True iff no perceived candidate lies within ``cutoff`` of the voter."""
    if cutoff < 0:
        raise BehaviorError("abstention cutoff must be >= 0")
    dists = np.abs(np.asarray(perceived, dtype=float) - voter)
    return bool(dists.min() > cutoff)


def truncate_ideological(
    voter: float, perceived: Sequence[float], cutoff: float
) -> Ranking:
    """Rank, by ascending distance, every candidate within ``cutoff``.

    When no candidate qualifies the voter still turns out, casting a bullet
    vote for the nearest candidate.
    """
    if cutoff < 0:
        raise BehaviorError("truncation cutoff must be >= 0")
    order = rank_by_distance(voter, perceived)
    dists = np.abs(np.asarray(perceived, dtype=float) - voter)
    kept = tuple(c for c in order if dists[c] <= cutoff)
    return kept if kept else order[:1]


def truncation_length(u: float, k: int, length_probs: Sequence[tuple[int, float]]) -> int:
    """Map a uniform draw to a ballot length under the random model."""
    cum = 0.0
    for length, prob in sorted(length_probs):
        cum += prob
        if u < cum:
            return length
    return k


def truncation_lengths(
    u: np.ndarray, k: int, length_probs: Sequence[tuple[int, float]]
) -> np.ndarray:
    """Vectorized truncation_length for the batch kernel."""
    pairs = sorted(length_probs)
    cum = np.cumsum([p for _, p in pairs])
    lengths = np.array([length for length, _ in pairs] + [k], dtype=np.int64)
    return lengths[np.searchsorted(cum, u, side="right")]


def truncate_random(
    complete: Ranking,
    k: int,
    rng: np.random.Generator | float,
    length_probs: Sequence[tuple[int, float]],
) -> Ranking:
    """Keep a random-length prefix of a complete ranking.

    ``rng`` may be a Generator or a pre-drawn uniform in [0, 1).
    """
    if len(complete) != k:
        raise BehaviorError("random truncation needs a complete ranking")
    if sum(p for _, p in length_probs) > 1.0:
        raise BehaviorError("length probabilities sum to more than 1")
    u = float(rng.random()) if isinstance(rng, np.random.Generator) else float(rng)
    return complete[: truncation_length(u, k, length_probs)]


def decide_with_draws(
    voter: float,
    slate_positions: Sequence[float],
    spec: BehaviorSpec,
    noise_offsets: Sequence[float] | None,
    trunc_u: float | None,
) -> BallotDecision:
    """Pipeline with explicit randomness, the reference the batch kernel
    must reproduce: noise, then abstention, then truncation."""
    slate = np.asarray(slate_positions, dtype=float)
    if spec.noise_half_width:
        perceived = slate + np.asarray(noise_offsets, dtype=float)
    else:
        perceived = slate
    gate = slate if spec.perception_basis == "true" else perceived

    if spec.abstention_cutoff is not None and should_abstain(
        voter, gate, spec.abstention_cutoff
    ):
        return BallotDecision(ranking=None, perceived=tuple(perceived))

    if spec.truncation == "ideological":
        order = rank_by_distance(voter, perceived)
        gate_dists = np.abs(gate - voter)
        kept = tuple(c for c in order if gate_dists[c] <= spec.truncation_cutoff)
        ranking = kept if kept else order[:1]
    else:
        ranking = rank_by_distance(voter, perceived)
        if spec.truncation == "random":
            ranking = ranking[: truncation_length(float(trunc_u), len(slate), spec.length_probs)]
    return BallotDecision(ranking=ranking, perceived=tuple(perceived))


def decide_ballot(
    voter: float,
    slate_positions: Sequence[float],
    spec: BehaviorSpec,
    rng: np.random.Generator | int,
) -> BallotDecision:
    """Run one voter through the behavior pipeline.

    Draw order: the noise offsets (k uniforms, if noise is on) then the
    truncation-length draw (one uniform, if random truncation is on).
    """
    k = len(slate_positions)
    spec.validate(k)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    offsets = None
    if spec.noise_half_width:
        offsets = rng.uniform(-spec.noise_half_width, spec.noise_half_width, size=k)
    trunc_u = rng.random() if spec.truncation == "random" else None
    return decide_with_draws(voter, slate_positions, spec, offsets, trunc_u)


def kendall_tau(a: Ranking, b: Ranking) -> int:
    """Discordant-pair count between two complete rankings of one slate.

    Equals the minimum number of adjacent transpositions turning one
    ranking into the other.
    """
    if sorted(a) != sorted(b) or len(set(a)) != len(a):
        raise ValueError("rankings must be complete over the same candidate set")
    pos_b = {c: i for i, c in enumerate(b)}
    count = 0
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if pos_b[a[i]] > pos_b[a[j]]:
                count += 1
    return count
