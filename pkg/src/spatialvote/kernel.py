"""Ballot-casting kernel dispatch plus ballot-code utilities.

The per-election hot loop (ranking every voter against the slate and
applying the behavior pipeline) runs through one of two interchangeable
backends:

* ``compiled`` -- the Cython extension ``spatialvote._kernel``;
* ``numpy`` -- the vectorized fallback ``spatialvote._kernel_py``.

The compiled backend is used when importable; setting the environment
variable ``SPATIALVOTE_PURE=1`` forces the fallback. Both produce
bit-identical ballot codes (covered by parity tests), so backend choice
never affects results, only speed. ``benchmarks/bench_kernel.py`` compares
the two.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernel_py
from ._kernel_py import TRUNC_FIXED_LENGTHS, TRUNC_IDEOLOGICAL, TRUNC_NONE
from .ballots import Ranking

try:  # pragma: no cover - exercised via the parity suite
    from . import _kernel  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover
    _kernel = None

_FORCE_PURE = os.environ.get("SPATIALVOTE_PURE", "") not in ("", "0")


def backend_name() -> str:
    return "numpy" if (_kernel is None or _FORCE_PURE) else "compiled"


def cast_ballot_codes(
    positions: np.ndarray,
    slate: np.ndarray,
    noise: np.ndarray | None,
    *,
    abstain_cutoff: float = -1.0,
    gates_on_true: bool = False,
    trunc_mode: int = TRUNC_NONE,
    trunc_cutoff: float = 0.0,
    trunc_lengths: np.ndarray | None = None,
    backend: str | None = None,
) -> np.ndarray:
    """Cast every voter's ballot; see ``_kernel_py.cast_ballot_codes``.

    ``backend`` pins "compiled" or "numpy" explicitly (parity tests and the
    benchmark); by default the module-level selection applies.
    """
    if slate.shape[0] > 8:
        raise ValueError("ballot kernel supports at most 8 candidates")
    if backend is None:
        backend = backend_name()
    if backend == "compiled":
        if _kernel is None:
            raise RuntimeError("compiled kernel is not available")
        impl = _kernel.cast_ballot_codes
    elif backend == "numpy":
        impl = _kernel_py.cast_ballot_codes
    else:
        raise ValueError(f"unknown kernel backend {backend!r}")
    return impl(
        np.ascontiguousarray(positions, dtype=np.float64),
        np.ascontiguousarray(slate, dtype=np.float64),
        noise,
        abstain_cutoff,
        gates_on_true,
        trunc_mode,
        trunc_cutoff,
        trunc_lengths,
    )


def encode_ranking(ranking: Sequence[int], k: int) -> int:
    """Integer code of a (possibly partial) ranking: digit p is the
    candidate at ballot position p, offset by one, base k+1."""
    code = 0
    for pos, c in enumerate(ranking):
        code += (c + 1) * (k + 1) ** pos
    return code


def decode_ranking(code: int, k: int) -> Ranking:
    base = k + 1
    ranking = []
    while code:
        code, digit = divmod(code, base)
        ranking.append(digit - 1)
    return tuple(ranking)


@lru_cache(maxsize=None)
def code_table(k: int) -> dict[int, Ranking]:
    """code -> ranking for every nonzero code that decodes to a valid
    partial ranking (distinct in-range candidates)."""
    table = {}
    for code in range(1, (k + 1) ** k):
        ranking = decode_ranking(code, k)
        if all(0 <= c < k for c in ranking) and len(set(ranking)) == len(ranking):
            table[code] = ranking
    return table


@lru_cache(maxsize=None)
def tau_table(k: int) -> np.ndarray:
    """Kendall-tau distance indexed by pairs of complete-ranking codes.

    Shape ((k+1)**k, (k+1)**k), int8; entries for non-complete codes are 0
    and must not be read. Lets the noise diagnostic compare millions of
    ballot pairs with one fancy-indexing pass.
    """
    from .behavior import kendall_tau

    size = (k + 1) ** k
    table = np.zeros((size, size), dtype=np.int8)
    complete = {
        code: ranking for code, ranking in code_table(k).items() if len(ranking) == k
    }
    for code_a, rank_a in complete.items():
        for code_b, rank_b in complete.items():
            table[code_a, code_b] = kendall_tau(rank_a, rank_b)
    return table


def profile_pairs_from_codes(
    codes: np.ndarray, k: int
) -> tuple[list[tuple[Ranking, int]], int, int]:
    """Group ballot codes into (ranking, count) pairs.

    Returns (pairs, cast_count, bullet_count); abstainers (code -1) are
    excluded from pairs and counts.
    """
    cast = codes[codes >= 0]
    counts = np.bincount(cast, minlength=(k + 1) ** k)
    table = code_table(k)
    pairs = [(table[int(code)], int(c)) for code, c in enumerate(counts) if c]
    bullet = int(counts[1 : k + 1].sum())
    return pairs, int(cast.size), bullet
