"""Maximum-coverage decomposition of group sequences into identity-product intervals.

A sequence g_1, ..., g_n over a finite group G is decomposed into
non-overlapping intervals [a, b] (1-based, inclusive) whose element product
g_a * ... * g_b is the identity, maximizing the number of covered positions.
An interval [j+1, i] has identity product exactly when the prefix products
f(j) and f(i) coincide, so a single left-to-right pass that remembers, for
every group value v, the best decomposition ending at an earlier prefix with
f = v finds an optimal decomposition in linear time.  The optimum always
covers at least n - |G| + 1 positions: the prefix map is injective on the
uncovered positions' prefixes together with f(0), so at most |G| - 1
positions stay uncovered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .groups import FiniteGroup, build_group, spec_from_json, spec_to_json

__all__ = [
    "Interval",
    "GradeSequence",
    "Decomposition",
    "DecompositionReport",
    "prefix_products",
    "decompose_optimal",
    "decompose_bruteforce",
    "verify_decomposition",
    "lemma_bound",
    "sequence_from_json",
    "sequence_to_json",
    "decomposition_from_json",
    "decomposition_to_json",
]

ORACLE_LIMIT = 16
_VECTOR_MIN = 4096


class Interval(NamedTuple):
    """1-based inclusive interval of sequence positions."""

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


class GradeSequence:
    """A finite-group-valued sequence; positions are 1-based."""

    def __init__(self, group: FiniteGroup, elems: Sequence[int] | np.ndarray):
        m = group.order
        if isinstance(elems, np.ndarray):
            if elems.ndim != 1 or not np.issubdtype(elems.dtype, np.integer):
                raise ValueError("elems array must be one-dimensional and integral.")
            if elems.size and (bad := np.flatnonzero((elems < 0) | (elems >= m))).size:
                pos = int(bad[0])
                raise ValueError(
                    f"element {int(elems[pos])} at position {pos + 1} "
                    f"out of range [0,{m - 1}]."
                )
            self.elems: Sequence[int] | np.ndarray = elems
        else:
            vals = tuple(elems)
            for pos, g in enumerate(vals):
                if not isinstance(g, int) or isinstance(g, bool) or not 0 <= g < m:
                    raise ValueError(
                        f"element {g!r} at position {pos + 1} out of range [0,{m - 1}]."
                    )
            self.elems = vals
        self.group = group

    def __len__(self) -> int:
        return len(self.elems)


@dataclass(frozen=True)
class Decomposition:
    """Chosen identity-product intervals plus the uncovered positions."""

    intervals: tuple[Interval, ...]
    uncovered: tuple[int, ...]
    coverage: int


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of verify_decomposition; bound_ok flags coverage >= n - |G| + 1."""

    violations: tuple[str, ...]
    bound_ok: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_bound(n: int, m: int) -> int:
    """Guaranteed coverage max(0, n - m + 1) for length n over a group of order m."""
    if n < 0:
        raise ValueError(f"sequence length must be >= 0, got {n}.")
    if m < 1:
        raise ValueError(f"group order must be >= 1, got {m}.")
    return max(0, n - m + 1)


def prefix_products(seq: GradeSequence) -> list[int]:
    """All prefix products f(0) = e, f(k) = g_1 * ... * g_k."""
    table = seq.group.mul_table
    out = [0] * (len(seq) + 1)
    acc = 0
    for k, g in enumerate(seq.elems, start=1):
        acc = table[acc][g]
        out[k] = acc
    return out


def decompose_optimal(seq: GradeSequence) -> Decomposition:
    """Maximum-coverage decomposition into identity-product intervals.

    Runs in time linear in the sequence length and is deterministic: when
    skipping position i and closing an interval at i tie, the interval wins,
    and among equally good interval starts the earliest (longest interval)
    wins.  Cyclic-group sequences of at least _VECTOR_MIN elements take a
    vectorized path with identical output.
    """
    n = len(seq)
    group = seq.group
    if (
        n >= _VECTOR_MIN
        and group.spec is not None
        and group.spec.kind == "cyclic"
    ):
        intervals, coverage = _optimal_core_cyclic(group.order, seq.elems)
    else:
        intervals, coverage = _optimal_core_reference(group.mul_table, seq.elems)
    return Decomposition(
        intervals=tuple(intervals),
        uncovered=tuple(_complement(intervals, n)),
        coverage=coverage,
    )


def _optimal_core_reference(
    table: tuple[tuple[int, ...], ...], elems: Iterable[int]
) -> tuple[list[Interval], int]:
    # phi[i] = (best coverage of the first i positions) - i, a value in
    # [-(|G|-1), 0]; best_val[v] = max phi[j] over prefixes j with f(j) = v,
    # best_j[v] the earliest j attaining it.
    m = len(table)
    neg = -(1 << 60)
    best_val = [neg] * m
    best_j = [0] * m
    best_val[0] = 0
    elems = list(elems)
    n = len(elems)
    phi = [0] * (n + 1)
    choice = [0] * (n + 1)  # 0 = position skipped, else j + 1
    f = 0
    prev_phi = 0
    for i in range(1, n + 1):
        f = table[f][elems[i - 1]]
        cand = best_val[f]
        skip = prev_phi - 1
        if cand >= skip:
            cur = cand
            choice[i] = best_j[f] + 1
        else:
            cur = skip
        phi[i] = cur
        if cur > best_val[f]:
            best_val[f] = cur
            best_j[f] = i
        prev_phi = cur
    intervals: list[Interval] = []
    i = n
    while i > 0:
        c = choice[i]
        if c:
            j = c - 1
            intervals.append(Interval(j + 1, i))
            i = j
        else:
            i -= 1
    intervals.reverse()
    return intervals, phi[n] + n


def _optimal_core_cyclic(
    m: int, elems: Sequence[int] | np.ndarray
) -> tuple[list[Interval], int]:
    # Same recurrence as the reference, evaluated in chunks: with the best[]
    # map frozen, phi[i] = max_t<=i (best[f(t)] + t) - i is a running maximum,
    # so each chunk is one vectorized scan.  A chunk stays valid up to the
    # first position whose phi would raise its own best[] entry; that update
    # is applied and the scan resumes.  best[] entries only ever increase
    # within [-(m-1), 0], so there are at most m*(m+1) such events in total.
    arr = np.asarray(elems)
    n = int(arr.size)
    f64 = np.empty(n + 1, dtype=np.int64)
    f64[0] = 0
    np.cumsum(arr, out=f64[1:])
    f64[1:] %= m
    f = f64.astype(np.int32)
    del f64

    neg = -(1 << 30)
    best_val = np.full(m, neg, dtype=np.int32)
    best_val[0] = 0
    events: list[list[tuple[int, int, int]]] = [[] for _ in range(m)]
    events[0].append((0, 0, 0))  # (prefix position, value, interval start j)

    phi = np.empty(n + 1, dtype=np.int32)
    phi[0] = 0
    start = 1
    chunk = 1 << 12
    while start <= n:
        end = min(n, start + chunk - 1)
        fb = f[start : end + 1]
        b = best_val[fb]
        t = np.arange(start, end + 1, dtype=np.int32)
        scan = np.maximum.accumulate(b + t)
        np.maximum(scan, np.int32(int(phi[start - 1]) + start - 1), out=scan)
        pb = scan - t
        upd = np.flatnonzero(pb > b)
        if upd.size:
            k = int(upd[0])
            i_star = start + k
            phi[start : i_star + 1] = pb[: k + 1]
            v = int(f[i_star])
            val = int(pb[k])
            best_val[v] = val
            events[v].append((i_star, val, i_star))
            start = i_star + 1
            chunk = 1 << 12
        else:
            phi[start : end + 1] = pb
            start = end + 1
            chunk = min(chunk << 1, 1 << 22)

    # Replay the forward decisions from the event log, newest events first.
    intervals: list[Interval] = []
    ptr = [len(ev) - 1 for ev in events]
    i = n
    while i > 0:
        v = int(f[i])
        p = ptr[v]
        ev = events[v]
        while p >= 0 and ev[p][0] > i - 1:
            p -= 1
        ptr[v] = p
        if p >= 0 and ev[p][1] >= int(phi[i - 1]) - 1:
            j = ev[p][2]
            intervals.append(Interval(j + 1, i))
            i = j
        else:
            i -= 1
    intervals.reverse()
    return intervals, int(phi[n]) + n


def _complement(intervals: Sequence[Interval], n: int) -> list[int]:
    out: list[int] = []
    nxt = 1
    for iv in intervals:
        out.extend(range(nxt, iv.start))
        nxt = iv.end + 1
    out.extend(range(nxt, n + 1))
    return out


def decompose_bruteforce(seq: GradeSequence) -> Decomposition:
    """Exhaustive-search oracle over all non-overlapping interval sets (n <= 16)."""
    n = len(seq)
    if n > ORACLE_LIMIT:
        raise ValueError(f"oracle limit exceeded: n={n} > {ORACLE_LIMIT}.")
    table = seq.group.mul_table
    elems = tuple(seq.elems)
    memo: dict[int, int] = {n + 1: 0}

    def rec(i: int) -> int:
        got = memo.get(i)
        if got is not None:
            return got
        out = rec(i + 1)
        acc = 0
        for j in range(i, n + 1):
            acc = table[acc][elems[j - 1]]
            if acc == 0:
                cand = (j - i + 1) + rec(j + 1)
                if cand > out:
                    out = cand
        memo[i] = out
        return out

    rec(1)
    intervals: list[Interval] = []
    i = 1
    while i <= n:
        target = rec(i)
        if target == rec(i + 1):
            i += 1
            continue
        acc = 0
        for j in range(i, n + 1):
            acc = table[acc][elems[j - 1]]
            if acc == 0 and (j - i + 1) + rec(j + 1) == target:
                intervals.append(Interval(i, j))
                i = j + 1
                break
    coverage = sum(iv.length for iv in intervals)
    return Decomposition(
        intervals=tuple(intervals),
        uncovered=tuple(_complement(intervals, n)),
        coverage=coverage,
    )


def verify_decomposition(seq: GradeSequence, dec: Decomposition) -> DecompositionReport:
    """Check a claimed decomposition against the sequence it describes."""
    n = len(seq)
    table = seq.group.mul_table
    violations: list[str] = []

    shaped: list[Interval] = []
    for iv in dec.intervals:
        a, b = iv
        if not (isinstance(a, int) and isinstance(b, int)) or a > b or a < 1 or b > n:
            violations.append(f"interval [{a},{b}] out of range for n={n}.")
        else:
            shaped.append(Interval(a, b))

    if any(shaped[k].start < shaped[k - 1].start for k in range(1, len(shaped))):
        violations.append("intervals not sorted by start.")
    in_order = sorted(shaped)
    for prev, cur in zip(in_order, in_order[1:]):
        if cur.start <= prev.end:
            violations.append(f"intervals [{prev.start},{prev.end}] and "
                              f"[{cur.start},{cur.end}] overlap.")

    for iv in shaped:
        acc = 0
        for k in range(iv.start, iv.end + 1):
            acc = table[acc][seq.elems[k - 1]]
        if acc != 0:
            violations.append(f"interval [{iv.start},{iv.end}] product != identity.")

    total = sum(iv.length for iv in shaped)
    if dec.coverage != total:
        violations.append(
            f"coverage miscount: stated {dec.coverage}, intervals cover {total}."
        )

    covered = set()
    for iv in shaped:
        covered.update(range(iv.start, iv.end + 1))
    expect_uncovered = [p for p in range(1, n + 1) if p not in covered]
    if list(dec.uncovered) != expect_uncovered:
        violations.append("uncovered positions do not match the complement.")

    bound_ok = dec.coverage >= lemma_bound(n, seq.group.order)
    return DecompositionReport(violations=tuple(violations), bound_ok=bound_ok)


def sequence_from_json(obj: object) -> GradeSequence:
    """Parse {"group": spec, "elems": [...]} into a validated GradeSequence."""
    if not isinstance(obj, dict):
        raise ValueError(f"sequence must be an object, got {obj!r}.")
    if "group" not in obj or "elems" not in obj:
        raise ValueError("sequence needs \"group\" and \"elems\" fields.")
    group = build_group(spec_from_json(obj["group"]))
    elems = obj["elems"]
    if not isinstance(elems, list):
        raise ValueError("\"elems\" must be a list of element indices.")
    return GradeSequence(group, elems)


def sequence_to_json(seq: GradeSequence) -> dict:
    if seq.group.spec is None:
        raise ValueError("sequence group has no serializable spec.")
    return {
        "group": spec_to_json(seq.group.spec),
        "elems": [int(g) for g in seq.elems],
    }


def decomposition_from_json(obj: object) -> Decomposition:
    if not isinstance(obj, dict):
        raise ValueError(f"decomposition must be an object, got {obj!r}.")
    ivs = obj.get("intervals")
    unc = obj.get("uncovered")
    cov = obj.get("coverage")
    if not isinstance(ivs, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p)
        for p in ivs
    ):
        raise ValueError("\"intervals\" must be a list of [start, end] pairs.")
    if not isinstance(unc, list) or not all(isinstance(x, int) for x in unc):
        raise ValueError("\"uncovered\" must be a list of positions.")
    if not isinstance(cov, int):
        raise ValueError("\"coverage\" must be an integer.")
    return Decomposition(
        intervals=tuple(Interval(a, b) for a, b in ivs),
        uncovered=tuple(unc),
        coverage=cov,
    )


def decomposition_to_json(dec: Decomposition) -> dict:
    return {
        "intervals": [[iv.start, iv.end] for iv in dec.intervals],
        "uncovered": [int(p) for p in dec.uncovered],
        "coverage": int(dec.coverage),
    }
