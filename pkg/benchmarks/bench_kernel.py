"""Compare the compiled and numpy ballot-casting backends.

Usage: python benchmarks/bench_kernel.py [--voters N] [--repeats R]

Times one election's ballot casting under each behavior profile for both
backends and checks they emit identical codes while at it.
"""

import argparse
import time

import numpy as np

from spatialvote import kernel
from spatialvote.kernel import TRUNC_FIXED_LENGTHS, TRUNC_IDEOLOGICAL


def scenarios(n, k, rng):
    noise = rng.uniform(-0.14, 0.14, size=(n, k))
    lengths = rng.choice([1, 2, k], size=n).astype(np.int64)
    return [
        ("complete ballots", dict(noise=None)),
        ("noise", dict(noise=noise)),
        ("abstention", dict(noise=None, abstain_cutoff=0.14)),
        (
            "ideological truncation",
            dict(noise=None, trunc_mode=TRUNC_IDEOLOGICAL, trunc_cutoff=0.26),
        ),
        (
            "random truncation",
            dict(noise=None, trunc_mode=TRUNC_FIXED_LENGTHS, trunc_lengths=lengths),
        ),
        (
            "all combined",
            dict(
                noise=noise,
                abstain_cutoff=0.14,
                trunc_mode=TRUNC_IDEOLOGICAL,
                trunc_cutoff=0.26,
            ),
        ),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--voters", type=int, default=100_001)
    parser.add_argument("--candidates", type=int, default=4, choices=(3, 4))
    parser.add_argument("--repeats", type=int, default=10)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    positions = np.sort(rng.uniform(-0.5, 0.5, args.voters))
    slate = rng.uniform(-0.5, 0.5, args.candidates)

    backends = ["numpy"]
    try:
        kernel.cast_ballot_codes(positions, slate, None, backend="compiled")
        backends.insert(0, "compiled")
    except RuntimeError:
        print("compiled backend unavailable; timing numpy only")

    print(f"voters={args.voters} candidates={args.candidates} repeats={args.repeats}")
    header = f"{'scenario':<24}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, kwargs in scenarios(args.voters, args.candidates, rng):
        times = {}
        codes = {}
        for backend in backends:
            t0 = time.perf_counter()
            for _ in range(args.repeats):
                codes[backend] = kernel.cast_ballot_codes(
                    positions, slate, backend=backend, **kwargs
                )
            times[backend] = (time.perf_counter() - t0) / args.repeats
        if len(backends) == 2 and not np.array_equal(codes["compiled"], codes["numpy"]):
            raise SystemExit(f"backends disagree on scenario {label!r}")
        row = f"{label:<24}" + "".join(f"{times[b] * 1e3:>11.2f} ms" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
