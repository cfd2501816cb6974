"""Ranked-ballot domain types, profile parsing, and elementary tallies.

Candidates are integer indices ``0..k-1`` everywhere inside the package;
names exist only at the parse/serialize boundary. A ballot ranks a
non-empty subset of the candidates in strict preference order. Unranked
candidates sit below every ranked candidate on that ballot, and two
mutually unranked candidates are incomparable (a ballot ranking neither of
a pair contributes to neither direction of the pairwise count).

Profile text format::

    A,B,C
    20: A>B>C
    130: A>C>B
    30: A

First line: comma-separated candidate names in index order. Each following
line: ``count: name>name>...``. Blank lines and lines starting with ``#``
are ignored.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Ranking = tuple[int, ...]


class ProfileError(ValueError):
    """Malformed profile text or invalid ballot data."""


def validate_ranking(ranking: Sequence[int], k: int) -> Ranking:
    """Check a ranking against a candidate count and return it as a tuple."""
    r = tuple(int(c) for c in ranking)
    if len(r) == 0:
        raise ProfileError("empty ranking (abstention is modeled upstream)")
    if len(set(r)) != len(r):
        raise ProfileError(f"duplicate candidate in ranking {r}")
    for c in r:
        if not 0 <= c < k:
            raise ProfileError(f"candidate index {c} out of range for k={k}")
    return r


@dataclass(frozen=True)
class PreferenceProfile:
    """A multiset of ballots over ``k`` candidates, grouped by ballot type.

    ``ballots`` is normalized: deduplicated, counts summed, sorted by
    ranking. Immutable, so profiles are safe to share across workers.
    """

    k: int
    ballots: tuple[tuple[Ranking, int], ...]

    @classmethod
    def from_pairs(cls, k: int, pairs: Iterable[tuple[Sequence[int], int]]) -> "PreferenceProfile":
        if k < 1:
            raise ProfileError("candidate count must be >= 1")
        merged: Counter[Ranking] = Counter()
        for ranking, count in pairs:
            if count <= 0:
                raise ProfileError(f"non-positive ballot count {count}")
            merged[validate_ranking(ranking, k)] += int(count)
        return cls(k=k, ballots=tuple(sorted(merged.items())))

    @property
    def total_ballots(self) -> int:
        return sum(count for _, count in self.ballots)

    def expand(self) -> Iterable[Ranking]:
        """Yield one ranking per cast ballot."""
        for ranking, count in self.ballots:
            for _ in range(count):
                yield ranking


def parse_profile(text: str) -> tuple[PreferenceProfile, tuple[str, ...]]:
    """Parse profile text into a normalized profile plus candidate names."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ProfileError("empty profile text")
    names = tuple(name.strip() for name in lines[0].split(","))
    if any(not name for name in names):
        raise ProfileError("blank candidate name in header")
    if len(set(names)) != len(names):
        raise ProfileError("duplicate candidate name in header")
    index = {name: i for i, name in enumerate(names)}

    pairs = []
    for ln in lines[1:]:
        head, sep, tail = ln.partition(":")
        if not sep:
            raise ProfileError(f"expected 'count: ranking', got {ln!r}")
        try:
            count = int(head.strip())
        except ValueError as exc:
            raise ProfileError(f"bad ballot count {head.strip()!r}") from exc
        entries = [e.strip() for e in tail.split(">")]
        if entries == [""]:
            raise ProfileError(f"empty ranking in line {ln!r}")
        ranking = []
        for name in entries:
            if name not in index:
                raise ProfileError(f"unknown candidate {name!r}")
            ranking.append(index[name])
        pairs.append((ranking, count))
    return PreferenceProfile.from_pairs(len(names), pairs), names


def default_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(chr(ord("A") + i) for i in range(k))
    return tuple(f"C{i}" for i in range(k))


def serialize_profile(profile: PreferenceProfile, names: Sequence[str] | None = None) -> str:
    """Render a profile in the text format accepted by parse_profile."""
    names = tuple(names) if names is not None else default_names(profile.k)
    if len(names) != profile.k:
        raise ProfileError("name count does not match candidate count")
    out = [",".join(names)]
    for ranking, count in profile.ballots:
        out.append(f"{count}: " + ">".join(names[c] for c in ranking))
    return "\n".join(out) + "\n"


def profile_to_csv(profile: PreferenceProfile, names: Sequence[str] | None = None) -> str:
    """CSV form: one row per ballot type with columns count, ranking."""
    names = tuple(names) if names is not None else default_names(profile.k)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["count", "ranking"])
    for ranking, count in profile.ballots:
        writer.writerow([count, ">".join(names[c] for c in ranking)])
    return buf.getvalue()


def profile_from_csv(text: str, names: Sequence[str]) -> PreferenceProfile:
    index = {name: i for i, name in enumerate(names)}
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["count", "ranking"]:
        raise ProfileError("expected CSV header 'count,ranking'")
    pairs = []
    for row in reader:
        if not row:
            continue
        count = int(row[0])
        try:
            ranking = [index[name] for name in row[1].split(">")]
        except KeyError as exc:
            raise ProfileError(f"unknown candidate {exc.args[0]!r}") from exc
        pairs.append((ranking, count))
    return PreferenceProfile.from_pairs(len(names), pairs)


def first_place_tally(
    profile: PreferenceProfile, active: Iterable[int] | None = None
) -> list[int]:
    """Count each ballot for its highest-ranked active candidate.

    A ballot ranking no active candidate counts for no one. With the full
    candidate set active, the tallies sum to the profile's ballot total.

    Returns a length-k list (zero for candidates outside ``active``).
    """
    if active is None:
        active_set = frozenset(range(profile.k))
    else:
        active_set = frozenset(active)
        if not active_set:
            raise ValueError("active candidate set must be non-empty")
    tallies = [0] * profile.k
    for ranking, count in profile.ballots:
        for c in ranking:
            if c in active_set:
                tallies[c] += count
                break
    return tallies


def pairwise_matrix(profile: PreferenceProfile) -> np.ndarray:
    """k-by-k matrix whose (x, y) entry counts ballots ranking x above y.

    "Above" includes x ranked while y is unranked; the diagonal is zero.
    """
    k = profile.k
    matrix = np.zeros((k, k), dtype=np.int64)
    for ranking, count in profile.ballots:
        ranked = set(ranking)
        for pos, x in enumerate(ranking):
            for y in ranking[pos + 1 :]:
                matrix[x, y] += count
            for y in range(k):
                if y not in ranked:
                    matrix[x, y] += count
    return matrix
