# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled ballot-casting kernel.

Per-voter twin of ``_kernel_py.cast_ballot_codes``; see that module for the
encoding and argument contract. The two implementations must stay
bit-identical: same arithmetic, and this insertion sort is stable exactly
like the fallback's stable argsort.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

TRUNC_NONE = 0
TRUNC_IDEOLOGICAL = 1
TRUNC_FIXED_LENGTHS = 2


def cast_ballot_codes(
    cnp.ndarray[cnp.float64_t, ndim=1] positions,
    cnp.ndarray[cnp.float64_t, ndim=1] slate,
    noise,
    double abstain_cutoff,
    bint gates_on_true,
    int trunc_mode,
    double trunc_cutoff,
    trunc_lengths,
):
    cdef Py_ssize_t n = positions.shape[0]
    cdef int k = <int> slate.shape[0]
    cdef int base = k + 1

    cdef bint has_noise = noise is not None
    cdef cnp.ndarray[cnp.float64_t, ndim=2] noise_arr
    if has_noise:
        noise_arr = np.ascontiguousarray(noise, dtype=np.float64)
    else:
        noise_arr = np.zeros((1, 1), dtype=np.float64)

    cdef bint has_lengths = trunc_mode == TRUNC_FIXED_LENGTHS
    cdef cnp.ndarray[cnp.int64_t, ndim=1] lengths_arr
    if has_lengths:
        lengths_arr = np.ascontiguousarray(trunc_lengths, dtype=np.int64)
    else:
        lengths_arr = np.zeros(1, dtype=np.int64)

    cdef cnp.ndarray[cnp.int32_t, ndim=1] codes = np.empty(n, dtype=np.int32)
    cdef bint separate_gate = gates_on_true and has_noise

    cdef double pd[8]
    cdef double gd[8]
    cdef int order[8]
    cdef Py_ssize_t i
    cdef int j, m, oj, slot, length
    cdef double v, p, d, min_gate
    cdef long code, power

    for i in range(n):
        v = positions[i]
        min_gate = 0.0
        for j in range(k):
            p = slate[j]
            if has_noise:
                p = p + noise_arr[i, j]
            pd[j] = fabs(v - p)
            if separate_gate:
                gd[j] = fabs(v - slate[j])
            else:
                gd[j] = pd[j]
            if j == 0 or gd[j] < min_gate:
                min_gate = gd[j]

        if abstain_cutoff >= 0 and min_gate > abstain_cutoff:
            codes[i] = -1
            continue

        # stable insertion sort of candidate indices by perceived distance
        for j in range(k):
            order[j] = j
        for j in range(1, k):
            oj = order[j]
            d = pd[oj]
            m = j - 1
            while m >= 0 and pd[order[m]] > d:
                order[m + 1] = order[m]
                m -= 1
            order[m + 1] = oj

        code = 0
        power = 1
        if trunc_mode == TRUNC_IDEOLOGICAL:
            slot = 0
            for j in range(k):
                oj = order[j]
                if gd[oj] <= trunc_cutoff:
                    code += (oj + 1) * power
                    power *= base
                    slot += 1
            if slot == 0:
                code = order[0] + 1
        else:
            if has_lengths:
                length = <int> lengths_arr[i]
            else:
                length = k
            for j in range(length):
                code += (order[j] + 1) * power
                power *= base
        codes[i] = <cnp.int32_t> code

    return codes
