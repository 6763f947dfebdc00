"""Exhaustive delta-set scanning: verification, density, checkpoint/resume.

Work is split into contiguous x-blocks of 4096 elements handed to a
fork pool; results merge strictly in block order, so the report is
bitwise independent of the worker count. A single writer (the parent)
owns the checkpoint file, which is JSON written atomically via
temp-then-rename and keyed by a hash of the mathematical config, so a
resume with a different worker count or cadence is legal but a resume
against a different scan refuses to run.
"""

from __future__ import annotations

import hashlib
import json
import math
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .certificates import (
    Certificate,
    STATUS_REFUTED,
    STATUS_VERIFIED,
)
from .errors import ChecksumMismatch, DomainError
from .kernels import get_kernel
from .semigroup import GapRecord, NumericalSemigroup

BLOCK = 4096
TARGET_SLACK = 1e-9
VIOL_CAP = 262144  # per-block violation buffer rows


@dataclass(frozen=True)
class ScanConfig:
    S: NumericalSemigroup
    t: float
    x_lo: int
    x_hi: int
    target: Optional[Tuple[float, float]] = None
    bin_width: Optional[float] = None
    checkpoint_every: int = 64
    worker_count: int = 1
    checkpoint_path: Optional[str] = None

    def __post_init__(self):
        if self.t < 1.0:
            raise DomainError(f"scan needs t >= 1, got {self.t}")
        if self.target is not None and not (self.target[0] < self.target[1]):
            raise DomainError(f"empty target interval {self.target}")
        if self.bin_width is not None and not (self.bin_width > 0):
            raise DomainError("bin_width must be positive")
        if self.worker_count < 1:
            raise DomainError("worker_count must be at least 1")

    def config_hash(self) -> str:
        # worker_count / checkpoint cadence are execution details, not
        # identity: results are worker-count independent by construction
        t_lo = float(self.target[0]).hex() if self.target else "-"
        t_hi = float(self.target[1]).hex() if self.target else "-"
        bw = float(self.bin_width).hex() if self.bin_width else "-"
        key = f"{self.S.a1}|{self.S.a2}|{float(self.t).hex()}|{self.x_lo}|{self.x_hi}|{t_lo}|{t_hi}|{bw}"
        return hashlib.sha256(key.encode()).hexdigest()

    def n_bins(self) -> int:
        if self.bin_width is None:
            return 0
        return max(1, math.ceil(self.S.a2 / self.bin_width))


@dataclass
class ScanReport:
    violations: List[GapRecord]
    histogram: Optional[List[int]]
    x_completed: int
    gap_min: Optional[float]
    gap_max: Optional[float]
    members: int
    gap_count: int
    violations_total: int
    elapsed: float = field(compare=False, default=0.0)

    def to_dict(self) -> dict:
        return {
            "violations": [[v.x, v.lo, v.hi, v.gap] for v in self.violations],
            "histogram": list(self.histogram) if self.histogram is not None else None,
            "x_completed": self.x_completed,
            "gap_min": self.gap_min,
            "gap_max": self.gap_max,
            "members": self.members,
            "gap_count": self.gap_count,
            "violations_total": self.violations_total,
            "elapsed": self.elapsed,
        }


class _Aborted(Exception):
    """Internal: raised by the injected test hook to simulate a crash."""


_WORKER = {}


def _init_worker(payload):
    _WORKER["payload"] = payload


def _run_block(args):
    idx, b_lo, b_hi = args
    (a1, a2, a2inv, t, target, bin_width, n_bins, backend) = _WORKER["payload"]
    kernel, _ = get_kernel(backend)
    hist = np.zeros(max(n_bins, 1), dtype=np.int64)
    k_max = b_hi // (a1 * a2) + 2
    len_buf = np.empty(k_max, dtype=np.float64)
    viol_buf = np.empty((VIOL_CAP, 4), dtype=np.float64)
    if target is not None:
        has_target, t_lo, t_hi = True, target[0] - TARGET_SLACK, target[1] + TARGET_SLACK
    else:
        has_target, t_lo, t_hi = False, 0.0, 0.0
    stored, total, g_min, g_max, members, gaps = kernel(
        b_lo,
        b_hi,
        a1,
        a2,
        a2inv,
        float(t),
        1.0 / float(t),
        has_target,
        t_lo,
        t_hi,
        bin_width is not None,
        float(bin_width) if bin_width is not None else 1.0,
        hist,
        viol_buf,
        len_buf,
    )
    return (
        idx,
        viol_buf[: int(stored)].copy(),
        int(total),
        hist if n_bins else None,
        float(g_min),
        float(g_max),
        int(members),
        int(gaps),
    )


class _Accumulator:
    """Merge state; also the exact payload persisted to checkpoints."""

    def __init__(self, config: ScanConfig):
        self.config = config
        self.x_next = config.x_lo
        self.hist = np.zeros(config.n_bins(), dtype=np.int64) if config.bin_width else None
        self.violations: List[GapRecord] = []
        self.violations_total = 0
        self.gap_min = math.inf
        self.gap_max = -math.inf
        self.members = 0
        self.gap_count = 0
        self.x_done = 0

    def absorb(self, rows, total, hist, g_min, g_max, members, gaps, b_lo, b_hi):
        for r in rows:
            self.violations.append(GapRecord(int(r[0]), float(r[1]), float(r[2]), float(r[3])))
        self.violations_total += total
        if hist is not None:
            self.hist += hist
        self.gap_min = min(self.gap_min, g_min)
        self.gap_max = max(self.gap_max, g_max)
        self.members += members
        self.gap_count += gaps
        self.x_done += b_hi - b_lo + 1
        self.x_next = b_hi + 1

    def report(self, elapsed: float) -> ScanReport:
        return ScanReport(
            violations=list(self.violations),
            histogram=[int(c) for c in self.hist] if self.hist is not None else None,
            x_completed=self.x_done,
            gap_min=None if math.isinf(self.gap_min) else self.gap_min,
            gap_max=None if math.isinf(self.gap_max) else self.gap_max,
            members=self.members,
            gap_count=self.gap_count,
            violations_total=self.violations_total,
            elapsed=elapsed,
        )


def _checkpoint_payload(acc: _Accumulator) -> dict:
    return {
        "config_hash": acc.config.config_hash(),
        "x_next": acc.x_next,
        "partial_histogram": [int(c) for c in acc.hist] if acc.hist is not None else None,
        "violations": [
            [v.x, v.lo.hex(), v.hi.hex(), v.gap.hex()] for v in acc.violations
        ],
        "violations_total": acc.violations_total,
        "gap_min": acc.gap_min if math.isfinite(acc.gap_min) else None,
        "gap_max": acc.gap_max if math.isfinite(acc.gap_max) else None,
        "members": acc.members,
        "gap_count": acc.gap_count,
        "x_done": acc.x_done,
        "x_lo": acc.config.x_lo,
        "x_hi": acc.config.x_hi,
    }


def _write_checkpoint(acc: _Accumulator, path: str):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(_checkpoint_payload(acc), fh)
    os.replace(tmp, path)


def _load_checkpoint(config: ScanConfig, path: str) -> Optional[_Accumulator]:
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ChecksumMismatch(f"unreadable checkpoint {path}: {exc}") from exc
    if obj.get("config_hash") != config.config_hash():
        raise ChecksumMismatch(
            f"checkpoint {path} belongs to a different scan configuration"
        )
    acc = _Accumulator(config)
    acc.x_next = int(obj["x_next"])
    if acc.hist is not None:
        acc.hist = np.asarray(obj["partial_histogram"], dtype=np.int64)
    acc.violations = [
        GapRecord(int(x), float.fromhex(lo), float.fromhex(hi), float.fromhex(g))
        for x, lo, hi, g in obj["violations"]
    ]
    acc.violations_total = int(obj["violations_total"])
    acc.gap_min = math.inf if obj["gap_min"] is None else float(obj["gap_min"])
    acc.gap_max = -math.inf if obj["gap_max"] is None else float(obj["gap_max"])
    acc.members = int(obj["members"])
    acc.gap_count = int(obj["gap_count"])
    acc.x_done = int(obj["x_done"])
    return acc


def _blocks(x_lo: int, x_hi: int):
    out = []
    idx = 0
    b = x_lo
    while b <= x_hi:
        out.append((idx, b, min(b + BLOCK - 1, x_hi)))
        idx += 1
        b += BLOCK
    return out


def scan(config: ScanConfig, backend: Optional[str] = None, _abort_after_blocks: Optional[int] = None) -> ScanReport:
    """Run the configured scan; resumes from its checkpoint when present.

    `_abort_after_blocks` is a testing hook: after merging that many
    blocks (and writing the checkpoint) the scan raises, simulating a
    kill mid-run so resume behavior can be exercised deterministically.
    """
    started = time.time()
    acc = None
    if config.checkpoint_path:
        acc = _load_checkpoint(config, config.checkpoint_path)
    if acc is None:
        acc = _Accumulator(config)
    if config.x_lo > config.x_hi:
        return acc.report(time.time() - started)
    x_start = max(acc.x_next, 0)
    blocks = _blocks(x_start, config.x_hi) if x_start <= config.x_hi else []
    payload = (
        config.S.a1,
        config.S.a2,
        pow(config.S.a2, -1, config.S.a1),
        float(config.t),
        config.target,
        config.bin_width,
        config.n_bins(),
        backend,
    )
    done_since_ckpt = 0
    try:
        if config.worker_count == 1 or len(blocks) <= 1:
            _init_worker(payload)
            for blk in blocks:
                res = _run_block(blk)
                _merge_one(acc, blk, res)
                done_since_ckpt += 1
                done_since_ckpt = _maybe_checkpoint(acc, config, done_since_ckpt)
                if _abort_after_blocks is not None and blk[0] + 1 >= _abort_after_blocks:
                    raise _Aborted()
        else:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(
                processes=config.worker_count,
                initializer=_init_worker,
                initargs=(payload,),
            ) as pool:
                for blk, res in zip(blocks, pool.imap(_run_block, blocks, chunksize=1)):
                    _merge_one(acc, blk, res)
                    done_since_ckpt += 1
                    done_since_ckpt = _maybe_checkpoint(acc, config, done_since_ckpt)
                    if _abort_after_blocks is not None and blk[0] + 1 >= _abort_after_blocks:
                        raise _Aborted()
    except _Aborted:
        if config.checkpoint_path:
            _write_checkpoint(acc, config.checkpoint_path)
        raise
    if config.checkpoint_path:
        _write_checkpoint(acc, config.checkpoint_path)
    return acc.report(time.time() - started)


def _merge_one(acc: _Accumulator, blk, res):
    idx, rows, total, hist, g_min, g_max, members, gaps = res
    assert idx == blk[0]
    acc.absorb(rows, total, hist, g_min, g_max, members, gaps, blk[1], blk[2])


def _maybe_checkpoint(acc: _Accumulator, config: ScanConfig, done: int) -> int:
    if config.checkpoint_path and done >= config.checkpoint_every:
        _write_checkpoint(acc, config.checkpoint_path)
        return 0
    return done


@dataclass(frozen=True)
class DensityReport:
    histogram: List[int]
    coverage: float
    bin_width: float
    x_max: int
    gap_count: int


def density_report(S: NumericalSemigroup, t: float, x_max: int, bin_width: float,
                   worker_count: int = 1, backend: Optional[str] = None) -> DensityReport:
    """Histogram of all observed gaps over [0, a2] plus bin coverage."""
    cfg = ScanConfig(S, float(t), 1, int(x_max), bin_width=bin_width,
                     worker_count=worker_count)
    rep = scan(cfg, backend=backend)
    hist = rep.histogram or []
    covered = sum(1 for c in hist if c > 0)
    coverage = covered / len(hist) if hist else 0.0
    return DensityReport(hist, coverage, bin_width, int(x_max), rep.gap_count)


@dataclass(frozen=True)
class VerificationOutcome:
    certificate: Certificate
    report: ScanReport

    @property
    def first_violation(self) -> Optional[GapRecord]:
        return self.report.violations[0] if self.report.violations else None


def verify_certificate(
    cert: Certificate,
    worker_count: int = 1,
    checkpoint_path: Optional[str] = None,
    x_hi: Optional[int] = None,
    backend: Optional[str] = None,
) -> VerificationOutcome:
    """Exhaustively test (d-eps, d+eps) disjointness for x in [1, x0].

    x_hi widens (never narrows) the scanned range; x0 = 0 verifies
    vacuously. The returned certificate carries verified/refuted.
    """
    top = max(cert.x0, x_hi or 0)
    cfg = ScanConfig(
        cert.S,
        float(cert.t),
        1,
        top,
        target=cert.window(),
        worker_count=worker_count,
        checkpoint_path=checkpoint_path,
    )
    rep = scan(cfg, backend=backend)
    status = STATUS_REFUTED if rep.violations_total else STATUS_VERIFIED
    return VerificationOutcome(cert.with_status(status), rep)
