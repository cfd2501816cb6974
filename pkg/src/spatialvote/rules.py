"""Winner selection: plurality, instant runoff, minimax, Bucklin, Borda.

Each rule is a pure function of a PreferenceProfile and returns a
RuleOutcome carrying the winner plus a JSON-serializable audit payload.
Every tie (winner selection and IRV elimination) breaks toward the lowest
candidate index; positions are continuous upstream so ties are measure-zero
there, but the tabulators must still be total and deterministic. Audits
record a ``tie`` flag so property tests can reason about neutrality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ballots import PreferenceProfile, first_place_tally, pairwise_matrix

RULE_NAMES = ("plurality", "irv", "minimax", "bucklin", "borda")


@dataclass(frozen=True)
class RuleOutcome:
    winner: int
    audit: dict


def _argmax_low(values, candidates) -> tuple[int, bool]:
    """Lowest-index argmax over ``candidates``; flags whether it was a tie."""
    best = max(candidates, key=lambda c: (values[c], -c))
    tie = sum(1 for c in candidates if values[c] == values[best]) > 1
    return best, tie


def _argmin_low(values, candidates) -> tuple[int, bool]:
    best = min(candidates, key=lambda c: (values[c], c))
    tie = sum(1 for c in candidates if values[c] == values[best]) > 1
    return best, tie


def _require_ballots(profile: PreferenceProfile) -> None:
    if profile.total_ballots == 0:
        raise ValueError("profile has no ballots")


def plurality_winner(profile: PreferenceProfile) -> RuleOutcome:
    """Most first-place votes wins."""
    _require_ballots(profile)
    tallies = first_place_tally(profile)
    winner, tie = _argmax_low(tallies, range(profile.k))
    return RuleOutcome(winner, {"tallies": tallies, "tie": tie})


def irv_winner(profile: PreferenceProfile) -> RuleOutcome:
    """Repeated elimination of the weakest first-place candidate.

    Each round tallies every ballot for its highest-ranked still-active
    candidate; ballots ranking no active candidate are exhausted. A
    candidate wins by holding a strict majority of the non-exhausted votes,
    or by being the last one standing. Elimination removes the lowest tally
    (lowest index on ties).
    """
    _require_ballots(profile)
    total = profile.total_ballots
    active = list(range(profile.k))
    rounds = []
    any_tie = False
    while True:
        tallies = first_place_tally(profile, active)
        round_total = sum(tallies[c] for c in active)
        entry = {
            "active": list(active),
            "tallies": {c: tallies[c] for c in active},
            "exhausted": total - round_total,
            "eliminated": None,
        }
        if len(active) == 1:
            winner = active[0]
            rounds.append(entry)
            break
        leader, lead_tie = _argmax_low(tallies, active)
        if 2 * tallies[leader] > round_total:
            winner = leader
            any_tie = any_tie or lead_tie
            rounds.append(entry)
            break
        loser, elim_tie = _argmin_low(tallies, active)
        any_tie = any_tie or elim_tie
        entry["eliminated"] = loser
        rounds.append(entry)
        active.remove(loser)
    return RuleOutcome(winner, {"rounds": rounds, "tie": any_tie})


def condorcet_winner(profile: PreferenceProfile) -> int | None:
    """The candidate beating every other head-to-head, if one exists."""
    matrix = pairwise_matrix(profile)
    k = profile.k
    for x in range(k):
        if all(matrix[x, y] > matrix[y, x] for y in range(k) if y != x):
            return x
    return None


def minimax_winner(profile: PreferenceProfile) -> RuleOutcome:
    """Smallest worst head-to-head loss.

    A candidate's score is the largest vote count carried by an opponent
    who actually defeats them; match-ups the candidate wins or ties
    contribute nothing. A candidate winning every match-up scores 0 and no
    one else can, so this always agrees with ``condorcet_winner`` when that
    candidate exists even on profiles of truncated ballots (raw opposition
    counts would not: a pairwise match-up between two rarely co-ranked
    candidates can involve arbitrarily few ballots).
    """
    matrix = pairwise_matrix(profile)
    k = profile.k
    worst = [
        max(
            (int(matrix[y, x]) for y in range(k) if y != x and matrix[y, x] > matrix[x, y]),
            default=0,
        )
        for x in range(k)
    ]
    winner, tie = _argmin_low(worst, range(k))
    return RuleOutcome(winner, {"worst_loss": worst, "tie": tie})


def bucklin_winner(profile: PreferenceProfile) -> RuleOutcome:
    """Round-based scoring: round i credits ballots ranking a candidate at
    position i or better.

    The process stops at the first round where some score reaches a
    majority of ballots cast (floor(B/2)+1, fixed across rounds); the
    highest score that round wins. Truncated ballots credit only the
    positions they fill, so with heavy truncation no score may ever reach
    the threshold; the highest final-round score then wins.
    """
    _require_ballots(profile)
    k = profile.k
    threshold = profile.total_ballots // 2 + 1
    scores = [0] * k
    rounds = []
    decisive = None
    for depth in range(1, k + 1):
        for ranking, count in profile.ballots:
            if len(ranking) >= depth:
                scores[ranking[depth - 1]] += count
        rounds.append(list(scores))
        if decisive is None and max(scores) >= threshold:
            decisive = depth
            break
    winner, tie = _argmax_low(rounds[-1], range(k))
    return RuleOutcome(
        winner,
        {
            "threshold": threshold,
            "rounds": rounds,
            "decisive_round": decisive,
            "tie": tie,
        },
    )


def borda_winner(profile: PreferenceProfile) -> RuleOutcome:
    """Positional scoring: the i-th ranked of k candidates earns k - i.

    Unranked candidates earn nothing from a ballot (a bullet vote in a
    four-candidate race gives its candidate three points, everyone else
    zero).
    """
    _require_ballots(profile)
    k = profile.k
    points = [0] * k
    for ranking, count in profile.ballots:
        for pos, c in enumerate(ranking):
            points[c] += count * (k - 1 - pos)
    winner, tie = _argmax_low(points, range(k))
    return RuleOutcome(winner, {"points": points, "tie": tie})


def tabulate_all(profile: PreferenceProfile) -> dict[str, RuleOutcome]:
    """Run all five rules; order follows RULE_NAMES."""
    return {
        "plurality": plurality_winner(profile),
        "irv": irv_winner(profile),
        "minimax": minimax_winner(profile),
        "bucklin": bucklin_winner(profile),
        "borda": borda_winner(profile),
    }
