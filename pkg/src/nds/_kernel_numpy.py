"""Pure-numpy fallback kernel, semantics identical to the numba one.

Lengths for each x are vectorized; a per-x sort plus dedup replaces the
two-run merge (same sorted sequence, so the same gap stream). Norms can
differ from the numba path by one ulp because numpy's vectorized power
is not libm's pow; integer outputs are unaffected for sanely chosen
bins and targets.
"""

import numpy as np


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
        ns = np.arange(n0, n0 + k * a1, a1, dtype=np.int64)
        ms = (x - ns * a2) // a1
        if t == 1.0:
            lens = (ms + ns).astype(np.float64)
        else:
            hi_c = np.maximum(ms, ns).astype(np.float64)
            lo_c = np.minimum(ms, ns).astype(np.float64)
            z = lo_c / hi_c
            lens = hi_c * (1.0 + z**t) ** inv_t
            np.copyto(lens, hi_c, where=(lo_c == 0.0))
        lens.sort()
        uniq = lens[np.concatenate(([True], np.diff(lens) != 0.0))]
        if uniq.size < 2:
            continue
        d = np.diff(uniq)
        gaps += d.size
        gap_min = min(gap_min, float(d.min()))
        gap_max = max(gap_max, float(d.max()))
        if has_hist:
            idx = (d / bin_w).astype(np.int64)
            np.clip(idx, 0, n_bins - 1, out=idx)
            np.add.at(hist, idx, 1)
        if has_target:
            for i in np.flatnonzero((d >= target_lo) & (d <= target_hi)):
                total_viol += 1
                if stored < cap:
                    viol_buf[stored, 0] = float(x)
                    viol_buf[stored, 1] = uniq[i]
                    viol_buf[stored, 2] = uniq[i + 1]
                    viol_buf[stored, 3] = d[i]
                    stored += 1
    return stored, total_viol, gap_min, gap_max, members, gaps
