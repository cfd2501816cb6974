"""One-dimensional binned electorates and citizen-candidate sampling.

The ideological axis is the interval [-0.5, 0.5], partitioned into seven
equal-width bins. A state's electorate is described by seven non-negative
bin weights (normalized on load); voters land in a bin with probability
proportional to its weight and uniformly at random within it. Candidates
are voters drawn from the electorate itself.

Bins are closed on the left and open on the right, except the last bin
which is closed on both sides, so every point of the interval belongs to
exactly one bin.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .ballots import Ranking

BIN_COUNT = 7
BIN_WIDTH = 1.0 / BIN_COUNT
AXIS_LO = -0.5
AXIS_HI = 0.5
FLAVORS = ("bimodal", "trimodal")

WEIGHTS_HEADER = ["state", "flavor", "w1", "w2", "w3", "w4", "w5", "w6", "w7"]


class WeightsError(ValueError):
    """Invalid bin weights or weights-file contents."""


def bin_midpoints() -> np.ndarray:
    return AXIS_LO + (np.arange(BIN_COUNT) + 0.5) * BIN_WIDTH


@dataclass(frozen=True)
class BinWeights:
    """Normalized per-bin probability mass for one (state, flavor) row."""

    state: str
    flavor: str
    weights: tuple[float, ...]

    @classmethod
    def from_raw(cls, state: str, flavor: str, raw: Sequence[float]) -> "BinWeights":
        if flavor not in FLAVORS:
            raise WeightsError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
        if len(raw) != BIN_COUNT:
            raise WeightsError(f"expected {BIN_COUNT} weights, got {len(raw)}")
        vals = [float(w) for w in raw]
        if any(w < 0 for w in vals):
            raise WeightsError("bin weights must be non-negative")
        total = sum(vals)
        if total <= 0:
            raise WeightsError("bin weights must have positive sum")
        return cls(state=state, flavor=flavor, weights=tuple(w / total for w in vals))


def load_weights(path: str | Path) -> list[BinWeights]:
    """Read a weights CSV (header state,flavor,w1..w7) into normalized rows."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != WEIGHTS_HEADER:
            raise WeightsError(
                f"expected header {','.join(WEIGHTS_HEADER)!r} in {path}"
            )
        for row in reader:
            if not row or not "".join(row).strip():
                continue
            if len(row) != len(WEIGHTS_HEADER):
                raise WeightsError(f"malformed weights row {row!r}")
            rows.append(BinWeights.from_raw(row[0].strip(), row[1].strip(), row[2:]))
    if not rows:
        raise WeightsError(f"no weight rows in {path}")
    return rows


def find_weights(rows: Iterable[BinWeights], state: str, flavor: str) -> BinWeights:
    for row in rows:
        if row.state == state and row.flavor == flavor:
            return row
    raise WeightsError(f"no weights row for state={state!r} flavor={flavor!r}")


def fixture_weights_path() -> Path:
    """Path of the synthetic weights fixtures shipped with the package."""
    return Path(resources.files("spatialvote").joinpath("data/fixture_weights.csv"))


def distribution_moments(weights: BinWeights) -> tuple[float, float]:
    """Closed-form mean and variance of the bin-mixture distribution.

    Each bin contributes a uniform component of width 1/7 centered at its
    midpoint: mean = sum(w_i * m_i), variance = sum(w_i * (m_i^2 + width^2/12))
    - mean^2.
    """
    mids = bin_midpoints()
    w = np.asarray(weights.weights)
    mean = float(np.dot(w, mids))
    second = float(np.dot(w, mids**2 + BIN_WIDTH**2 / 12.0))
    return mean, second - mean * mean


def distribution_median(weights: BinWeights) -> float:
    """Analytic median of the bin-mixture distribution."""
    cum = 0.0
    for i, w in enumerate(weights.weights):
        if cum + w >= 0.5:
            left = AXIS_LO + i * BIN_WIDTH
            return left + (0.5 - cum) / w * BIN_WIDTH
        cum += w
    return AXIS_HI  # unreachable for normalized weights; guards float drift


@dataclass(frozen=True, eq=False)
class Electorate:
    """Sorted voter positions plus the weights and seed that produced them."""

    positions: np.ndarray = field(repr=False)
    weights: BinWeights
    seed: int

    def __post_init__(self):
        self.positions.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.positions)

    @cached_property
    def median(self) -> float:
        """Middle voter's position (positions are stored sorted)."""
        return float(self.positions[(self.n + 1) // 2 - 1])


def build_electorate(weights: BinWeights, n: int, seed: int) -> Electorate:
    """Draw n voters: bin by weight, position uniform within the bin.

    Deterministic for a fixed (weights, n, seed); positions are returned
    sorted ascending so the median voter is a direct index lookup.
    """
    if n < 1:
        raise ValueError("electorate size must be >= 1")
    rng = np.random.default_rng(seed)
    cum = np.cumsum(weights.weights)
    cum[-1] = 1.0
    bins = np.searchsorted(cum, rng.random(n), side="right")
    offsets = rng.random(n)
    positions = AXIS_LO + (bins + offsets) * BIN_WIDTH
    positions.sort()
    return Electorate(positions=positions, weights=weights, seed=seed)


def median_voter(positions: np.ndarray) -> float:
    """Position of the ceil(n/2)-th smallest voter (exact middle for odd n)."""
    n = len(positions)
    if n == 0:
        raise ValueError("empty electorate")
    return float(np.sort(positions)[(n + 1) // 2 - 1])


@dataclass(frozen=True)
class CandidateSlate:
    """k candidate positions copied from voters, with their source indices."""

    positions: tuple[float, ...]
    voter_indices: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.positions)


def sample_candidates(
    electorate: Electorate, k: int, rng: np.random.Generator | int
) -> CandidateSlate:
    """Draw k distinct voters uniformly without replacement as candidates.

    Only 3- and 4-candidate races are supported. ``rng`` may be a Generator
    (the engine passes its per-election stream) or an integer seed.
    """
    if k not in (3, 4):
        raise ValueError("candidate count must be 3 or 4")
    if k > electorate.n:
        raise ValueError("cannot draw more candidates than voters")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    idx = rng.choice(electorate.n, size=k, replace=False)
    return CandidateSlate(
        positions=tuple(float(electorate.positions[i]) for i in idx),
        voter_indices=tuple(int(i) for i in idx),
    )


def rank_by_distance(voter: float, slate_positions: Sequence[float]) -> Ranking:
    """Complete ranking of a slate by ascending distance from the voter.

    Exact distance ties order the lower candidate index first (stable sort
    on index order), matching the batch kernel.
    """
    dists = np.abs(np.asarray(slate_positions, dtype=float) - voter)
    return tuple(int(i) for i in np.argsort(dists, kind="stable"))
