"""Pure-numpy implementation of the ballot-casting kernel.

This is the fallback selected at import when the compiled extension is
unavailable (see ``kernel``). Both implementations must produce identical
ballot codes for identical inputs; every floating-point operation here has
a one-to-one counterpart in the compiled loop, and the stable argsort
matches its stable insertion sort.
"""

from __future__ import annotations

import numpy as np

TRUNC_NONE = 0
TRUNC_IDEOLOGICAL = 1
TRUNC_FIXED_LENGTHS = 2


def cast_ballot_codes(
    positions: np.ndarray,
    slate: np.ndarray,
    noise: np.ndarray | None,
    abstain_cutoff: float,
    gates_on_true: bool,
    trunc_mode: int,
    trunc_cutoff: float,
    trunc_lengths: np.ndarray | None,
) -> np.ndarray:
    """Encode every voter's ballot (or abstention) as a small integer.

    A ballot ranking candidates ``c0, c1, ...`` encodes as
    ``sum((c_p + 1) * (k+1)**p)``, which is injective over all partial
    rankings; abstainers encode as -1.

    Args:
        positions: voter positions, shape (n,).
        slate: candidate positions, shape (k,).
        noise: per-voter perception offsets, shape (n, k), or None.
        abstain_cutoff: abstention distance cutoff; negative disables.
        gates_on_true: evaluate abstention/truncation distance tests on
            true positions instead of perceived ones.
        trunc_mode: TRUNC_NONE, TRUNC_IDEOLOGICAL, or TRUNC_FIXED_LENGTHS.
        trunc_cutoff: ideological cutoff (TRUNC_IDEOLOGICAL only).
        trunc_lengths: per-voter ballot lengths (TRUNC_FIXED_LENGTHS only).

    Returns:
        int32 array of shape (n,) of ballot codes, -1 for abstainers.
    """
    n = positions.shape[0]
    k = slate.shape[0]
    base = k + 1

    if noise is not None:
        perceived_dists = np.abs(positions[:, None] - (slate[None, :] + noise))
    else:
        perceived_dists = np.abs(positions[:, None] - slate[None, :])
    if gates_on_true and noise is not None:
        gate_dists = np.abs(positions[:, None] - slate[None, :])
    else:
        gate_dists = perceived_dists

    order = np.argsort(perceived_dists, axis=1, kind="stable")
    digits = (order + 1).astype(np.int64)
    gate_by_rank = np.take_along_axis(gate_dists, order, axis=1)

    if trunc_mode == TRUNC_IDEOLOGICAL:
        keep = gate_by_rank <= trunc_cutoff
        none_kept = ~keep.any(axis=1)
        # complete-turnout fallback: bullet vote for the top perceived choice
        keep[none_kept, 0] = True
    elif trunc_mode == TRUNC_FIXED_LENGTHS:
        keep = np.arange(k)[None, :] < np.asarray(trunc_lengths)[:, None]
    else:
        keep = np.ones((n, k), dtype=bool)

    # ballot position of each kept candidate = kept-count before it
    # (clamped at dropped positions, which the mask zeroes out below)
    slot = np.maximum(np.cumsum(keep, axis=1) - 1, 0)
    powers = np.power(base, slot, dtype=np.int64)
    codes = np.where(keep, digits * powers, 0).sum(axis=1).astype(np.int32)

    if abstain_cutoff >= 0:
        codes[gate_dists.min(axis=1) > abstain_cutoff] = -1
    return codes
