"""Deterministic Monte Carlo simulation of ranked-choice elections on a
one-dimensional electorate, with five tabulation rules and composable
voter-behavior models."""

from .ballots import (
    PreferenceProfile,
    ProfileError,
    first_place_tally,
    pairwise_matrix,
    parse_profile,
    serialize_profile,
)
from .behavior import MODEL_NAMES, BehaviorSpec, decide_ballot, kendall_tau, spec_for_model
from .engine import ElectionRecord, RunConfig, aggregate, make_config, run_batch, run_election
from .rules import (
    RULE_NAMES,
    RuleOutcome,
    borda_winner,
    bucklin_winner,
    condorcet_winner,
    irv_winner,
    minimax_winner,
    plurality_winner,
)
from .spatial import (
    BinWeights,
    CandidateSlate,
    Electorate,
    build_electorate,
    distribution_median,
    distribution_moments,
    load_weights,
    median_voter,
    rank_by_distance,
    sample_candidates,
)
from .stats import (
    embed_state,
    most_moderating,
    relative_change,
    relative_difference,
    winner_histogram,
)

__version__ = "0.1.0"
