"""Exhaustive screened search for equal window sums up to a bound.

Every window {a, ..., a+r} with 1 <= a <= a+r <= N is fingerprinted by
its sum's residues modulo several large primes, computed from prefix
arrays in O(1) per window.  Equal exact sums force equal fingerprints,
so grouping by fingerprint and exactly confirming every nontrivial group
can never miss a collision; the big primes merely keep false groups
negligible.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .kernel import miller_rabin
from .sums import Interval, IntervalPair, window_power_sum

# Residue tuple of one window across the screening moduli.  Equal exact
# sums imply equal fingerprints (each component is the sum mod p).
Fingerprint = tuple[int, ...]

_MODULUS_LOW = 1 << 61
_MODULUS_HIGH = 1 << 62


def worker_count(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    env = os.environ.get("HYPHARM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SearchConfig:
    """Search parameters; moduli are derived deterministically from the seed."""

    max_n: int
    exponent: int = 2
    modulus_count: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_n < 2:
            raise ValueError("search bound must be at least 2")
        if self.exponent < 1:
            raise ValueError("exponent must be a positive integer")
        if self.modulus_count < 1:
            raise ValueError("need at least one screening modulus")


@dataclass
class CollisionReport:
    config: SearchConfig
    moduli: tuple[int, ...]
    interval_count: int
    screen_collision_pairs: list[IntervalPair]
    exact_collision_pairs: list[IntervalPair]
    wall_time: float


def select_moduli(config: SearchConfig) -> tuple[int, ...]:
    """Distinct ~62-bit primes > max_n, rejection-sampled from the seed."""
    rng = random.Random(config.seed)
    chosen: list[int] = []
    while len(chosen) < config.modulus_count:
        candidate = rng.randrange(_MODULUS_LOW, _MODULUS_HIGH) | 1
        if candidate > config.max_n and candidate not in chosen and miller_rabin(candidate):
            chosen.append(candidate)
    return tuple(chosen)


def prefix_residues(n_max: int, p: int, exponent: int) -> list[int]:
    """prefix[n] = sum of k^-exponent mod p for k = 1..n; prefix[0] = 0.

    Any window sum mod p is prefix[a+r] - prefix[a-1].  Inverses are
    batched with the running-product trick, so the whole array costs
    O(n_max) multiplications.
    """
    if p <= n_max:
        raise ValueError(f"modulus {p} must exceed the bound {n_max}")
    if not miller_rabin(p):
        raise ValueError(f"modulus {p} is not prime")
    products = [1] * (n_max + 1)
    for k in range(1, n_max + 1):
        products[k] = products[k - 1] * k % p
    running = pow(products[n_max], -1, p)
    inverses = [0] * (n_max + 1)
    for k in range(n_max, 0, -1):
        inverses[k] = running * products[k - 1] % p
        running = running * k % p
    prefix = [0] * (n_max + 1)
    acc = 0
    for k in range(1, n_max + 1):
        term = inverses[k]
        if exponent == 2:
            term = term * term % p
        elif exponent != 1:
            term = pow(term, exponent, p)
        acc = (acc + term) % p
        prefix[k] = acc
    return prefix


def interval_fingerprint(
    interval: Interval, moduli: tuple[int, ...], prefixes: list[list[int]]
) -> Fingerprint:
    return tuple(
        (prefix[interval.end] - prefix[interval.a - 1]) % p
        for p, prefix in zip(moduli, prefixes)
    )


def confirm_exact(pair: IntervalPair, exponent: int = 2) -> bool:
    """Exact rational equality of the two window sums."""
    return window_power_sum(pair.first, exponent) == window_power_sum(pair.second, exponent)


def _start_offset(start: int, n: int) -> int:
    # windows are laid out start-major: start 1 first, ends ascending
    return (start - 1) * n - (start - 1) * (start - 2) // 2


def _fill_chunk(matrix, start_lo, start_hi, n, prefix_arrays, moduli):
    for start in range(start_lo, start_hi):
        row0 = _start_offset(start, n)
        rows = n - start + 1
        for col, (p, pref) in enumerate(zip(moduli, prefix_arrays)):
            diff = pref[start:] - pref[start - 1]
            np.add(diff, p, out=diff, where=diff < 0)
            matrix[row0 : row0 + rows, col] = diff


def _exact_groups(members: list[Interval], exponent: int) -> list[list[Interval]]:
    by_value: dict = {}
    for interval in members:
        by_value.setdefault(window_power_sum(interval, exponent), []).append(interval)
    return [group for group in by_value.values() if len(group) > 1]


def search(config: SearchConfig, threads: int | None = None) -> CollisionReport:
    """Screen all N(N+1)/2 windows and exactly confirm every screen group.

    Self-pairs are excluded by construction (each window is enumerated
    once).  Output is deterministic for a fixed config regardless of the
    worker count: workers fill disjoint slices of the residue matrix and
    collision groups are processed in sorted window order.
    """
    t0 = time.perf_counter()
    n = config.max_n
    moduli = select_moduli(config)
    prefix_arrays = [
        np.array(prefix_residues(n, p, config.exponent), dtype=np.int64) for p in moduli
    ]
    count = n * (n + 1) // 2
    matrix = np.empty((count, len(moduli)), dtype=np.int64)

    workers = worker_count(threads)
    chunk = max(1, (n + 4 * workers - 1) // (4 * workers))
    bounds = [(lo, min(lo + chunk, n + 1)) for lo in range(1, n + 1, chunk)]
    if workers == 1:
        for lo, hi in bounds:
            _fill_chunk(matrix, lo, hi, n, prefix_arrays, moduli)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_fill_chunk, matrix, lo, hi, n, prefix_arrays, moduli)
                for lo, hi in bounds
            ]
            for future in futures:
                future.result()

    _, inverse, counts = np.unique(matrix, axis=0, return_inverse=True, return_counts=True)
    inverse = np.asarray(inverse).reshape(-1)
    screen_pairs: list[IntervalPair] = []
    exact_pairs: list[IntervalPair] = []
    if counts.size and int(counts.max()) > 1:
        order = np.argsort(inverse, kind="stable")
        offsets = np.concatenate(([0], np.cumsum(counts)))
        starts = np.empty(count, dtype=np.int64)
        for start in range(1, n + 1):
            row0 = _start_offset(start, n)
            starts[row0 : row0 + (n - start + 1)] = start
        for g in np.flatnonzero(counts > 1):
            rows = order[offsets[g] : offsets[g + 1]]
            members = sorted(
                Interval(int(starts[i]), int(i - _start_offset(int(starts[i]), n)))
                for i in rows
            )
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    screen_pairs.append(IntervalPair(members[i], members[j]))
            for group in _exact_groups(members, config.exponent):
                for i in range(len(group)):
                    for j in range(i + 1, len(group)):
                        exact_pairs.append(IntervalPair(group[i], group[j]))
    screen_pairs.sort(key=lambda q: (q.first.a, q.first.r, q.second.a, q.second.r))
    exact_pairs.sort(key=lambda q: (q.first.a, q.first.r, q.second.a, q.second.r))

    return CollisionReport(
        config=config,
        moduli=moduli,
        interval_count=count,
        screen_collision_pairs=screen_pairs,
        exact_collision_pairs=exact_pairs,
        wall_time=time.perf_counter() - t0,
    )


def detect_duplicates(intervals: list[Interval], config: SearchConfig) -> list[IntervalPair]:
    """Screen-and-confirm an explicit window list (soundness harness).

    Unlike `search`, the input may contain repeated windows; any two
    entries with equal exact sums (including duplicates) come back as a
    confirmed collision pair.
    """
    moduli = select_moduli(config)
    prefixes = [prefix_residues(config.max_n, p, config.exponent) for p in moduli]
    by_print: dict[Fingerprint, list[Interval]] = {}
    for interval in intervals:
        if interval.end > config.max_n:
            raise ValueError(f"{interval} exceeds the configured bound")
        by_print.setdefault(interval_fingerprint(interval, moduli, prefixes), []).append(interval)
    confirmed = []
    for members in by_print.values():
        if len(members) < 2:
            continue
        for group in _exact_groups(sorted(members), config.exponent):
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    confirmed.append(IntervalPair(group[i], group[j]))
    return confirmed
