import math
import random

import numpy as np
import pytest

from spatialvote.ballots import (
    PreferenceProfile,
    ProfileError,
    first_place_tally,
    pairwise_matrix,
    parse_profile,
    profile_from_csv,
    profile_to_csv,
    serialize_profile,
    validate_ranking,
)
from spatialvote.demo import DEMO_PROFILE_TEXT

from naive_rules import random_profile


def test_demo_profile_parses(demo):
    assert demo.k == 3
    assert len(demo.ballots) == 9
    assert demo.total_ballots == 480


@pytest.mark.parametrize(
    "text,message",
    [
        ("A,B\n5: A>A", "duplicate candidate"),
        ("A,B\n5: C", "unknown candidate"),
        ("A,B\n0: A", "non-positive"),
        ("A,B\n-3: A", "non-positive"),
        ("A,B\n5:", "empty ranking"),
        ("A,A\n5: A", "duplicate candidate name"),
        ("A,B\nfive: A", "bad ballot count"),
        ("A,B\n5 A>B", "expected 'count: ranking'"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ProfileError, match=message):
        parse_profile(text)


def test_validate_ranking_bounds():
    with pytest.raises(ProfileError):
        validate_ranking((0, 3), 3)
    with pytest.raises(ProfileError):
        validate_ranking((), 3)
    assert validate_ranking((2, 0), 3) == (2, 0)


def test_normalization_merges_duplicates():
    profile = PreferenceProfile.from_pairs(2, [((0, 1), 2), ((0, 1), 3), ((1,), 1)])
    assert profile.ballots == (((0, 1), 5), ((1,), 1))
    assert profile.total_ballots == 6


def test_first_place_tally_demo(demo):
    assert first_place_tally(demo) == [180, 170, 130]


def test_first_place_tally_transfers(demo):
    # with C inactive its 50/70 columns transfer; the 10 C bullets count for no one
    assert first_place_tally(demo, {0, 1}) == [230, 240, 0]


def test_first_place_tally_empty_profile():
    profile = PreferenceProfile(k=3, ballots=())
    assert first_place_tally(profile) == [0, 0, 0]


def test_first_place_tally_empty_active(demo):
    with pytest.raises(ValueError):
        first_place_tally(demo, set())


def test_pairwise_demo(demo):
    m = pairwise_matrix(demo)
    assert m[2, 0] == 250 and m[0, 2] == 220
    assert m[2, 1] == 260 and m[1, 2] == 190
    assert m[0, 1] == 230 and m[1, 0] == 240
    assert np.all(np.diag(m) == 0)


def test_pairwise_single_ballot():
    profile = PreferenceProfile.from_pairs(2, [((0, 1), 1)])
    m = pairwise_matrix(profile)
    assert m[0, 1] == 1 and m[1, 0] == 0


def test_pairwise_entries_bounded_by_total(demo):
    m = pairwise_matrix(demo)
    B = demo.total_ballots
    for x in range(3):
        for y in range(3):
            if x != y:
                assert m[x, y] + m[y, x] <= B


def test_pairwise_comparison_count_invariant():
    # total pairwise entries = per-ballot ranked-vs-ranked plus
    # ranked-vs-unranked comparisons
    rng = random.Random(171)
    for _ in range(200):
        k, pairs = random_profile(rng)
        profile = PreferenceProfile.from_pairs(k, pairs)
        m = pairwise_matrix(profile)
        expected = sum(
            (math.comb(len(r), 2) + len(r) * (k - len(r))) * c
            for r, c in profile.ballots
        )
        assert int(m.sum()) == expected


def test_full_tally_sums_to_total():
    rng = random.Random(99)
    for _ in range(100):
        k, pairs = random_profile(rng)
        profile = PreferenceProfile.from_pairs(k, pairs)
        assert sum(first_place_tally(profile)) == profile.total_ballots


def test_text_round_trip(demo):
    assert parse_profile(serialize_profile(demo))[0] == demo
    rng = random.Random(5)
    for _ in range(50):
        k, pairs = random_profile(rng)
        profile = PreferenceProfile.from_pairs(k, pairs)
        assert parse_profile(serialize_profile(profile))[0] == profile


def test_serialize_format(demo):
    lines = serialize_profile(demo).splitlines()
    assert lines[0] == "A,B,C"
    assert lines[1] == "30: A"  # normalized: ballot types sorted by ranking
    assert "20: A>B>C" in lines


def test_csv_round_trip(demo):
    text = profile_to_csv(demo)
    assert text.splitlines()[0] == "count,ranking"
    assert profile_from_csv(text, ("A", "B", "C")) == demo


def test_demo_text_stable_under_reserialization(demo):
    once = serialize_profile(demo)
    assert serialize_profile(parse_profile(once)[0]) == once
    assert DEMO_PROFILE_TEXT != once  # demo keeps its narrative column order
