"""Numba scan kernel: delta-set gaps for a contiguous block of elements.

One call processes x in [x_lo, x_hi]. Factorizations are enumerated by
the congruence n = n0 + a1*j, lengths come from the exponent-stable
norm, and gaps fall out of a two-run merge around the unimodal minimum
instead of a sort. Histogram, target-window violations, and gap extrema
accumulate in place so the hot loop never allocates.
"""

import numpy as np
from numba import njit


@njit(cache=True, fastmath=False)
def scan_block(
    x_lo,
    x_hi,
    a1,
    a2,
    a2inv,
    t,
    inv_t,
    has_target,
    target_lo,
    target_hi,
    has_hist,
    bin_w,
    hist,
    viol_buf,
    len_buf,
):
    """Returns (stored, total_viol, gap_min, gap_max, members, gaps)."""
    a1a2 = a1 * a2
    t_is_one = t == 1.0
    stored = 0
    total_viol = 0
    members = 0
    gaps = 0
    gap_min = np.inf
    gap_max = -np.inf
    n_bins = hist.size
    cap = viol_buf.shape[0]
    for x in range(x_lo, x_hi + 1):
        if x < 0:
            continue
        n0 = (x * a2inv) % a1
        if n0 * a2 > x:
            continue
        members += 1
        k = (x - n0 * a2) // a1a2 + 1
        if k < 2:
            continue
        if t_is_one:
            # ||.||_1 = m + n stays exact in float64
            for j in range(k):
                n = n0 + a1 * j
                len_buf[j] = float((x - n * a2) // a1 + n)
        else:
            for j in range(k):
                n = n0 + a1 * j
                m = (x - n * a2) // a1
                hi_c = m if m > n else n
                lo_c = n if m > n else m
                if lo_c == 0:
                    len_buf[j] = float(hi_c)
                else:
                    z = lo_c / hi_c
                    len_buf[j] = hi_c * (1.0 + z**t) ** inv_t
        imin = 0
        best = len_buf[0]
        for j in range(1, k):
            if len_buf[j] < best:
                best = len_buf[j]
                imin = j
        # merge the descending run (imin-1 .. 0) with the ascending run
        prev = len_buf[imin]
        ia = imin - 1
        ib = imin + 1
        while ia >= 0 or ib < k:
            if ib >= k or (ia >= 0 and len_buf[ia] <= len_buf[ib]):
                cur = len_buf[ia]
                ia -= 1
            else:
                cur = len_buf[ib]
                ib += 1
            g = cur - prev
            if g > 0.0:
                gaps += 1
                if g < gap_min:
                    gap_min = g
                if g > gap_max:
                    gap_max = g
                if has_hist:
                    b = int(g / bin_w)
                    if b >= n_bins:
                        b = n_bins - 1
                    hist[b] += 1
                if has_target and target_lo <= g <= target_hi:
                    total_viol += 1
                    if stored < cap:
                        viol_buf[stored, 0] = float(x)
                        viol_buf[stored, 1] = prev
                        viol_buf[stored, 2] = cur
                        viol_buf[stored, 3] = g
                        stored += 1
                prev = cur
    return stored, total_viol, gap_min, gap_max, members, gaps
