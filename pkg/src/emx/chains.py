"""Chained compression of arbitrary samples down to a d-point kernel, and
the union-expansion decompression, with a full audit trace.

Compressing M points with an arity-d scheme takes M - d steps, each
applying sigma to a (d+1)-subset of the live set and ejecting one point.
Decompression starts from eta(kernel) and repeatedly unions in eta of
every d-subset of the current set; after M - d rounds the result contains
every original point, because at some step sigma mapped exactly the d
points that ejected it, and those d points are reached first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .schemes import MonotoneScheme

DEFAULT_CAP = 1_000_000

TRACE_HEADER = "# emx-trace 1"


class ResourceLimitError(RuntimeError):
    """Decompression grew past the configured cap."""

    def __init__(self, iteration: int, size: int, cap: int):
        super().__init__(
            f"decompression exceeded cap {cap} at iteration {iteration} "
            f"with {size} elements"
        )
        self.iteration = iteration
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class CompressionTrace:
    """Reproducible record of one chained compression: the original set,
    every (input subset, ejected point) step, and the final kernel."""

    original: frozenset[int]
    steps: tuple[tuple[frozenset[int], int], ...]
    kernel: frozenset[int]

    def __post_init__(self):
        if len(self.steps) != len(self.original) - len(self.kernel):
            raise ValueError("step count must equal |original| - |kernel|")
        live = set(self.original)
        for subset, ejected in self.steps:
            if ejected not in subset or not subset <= live:
                raise ValueError("trace step inconsistent with the live set")
            live.remove(ejected)
        if live != set(self.kernel):
            raise ValueError("kernel does not match the replayed steps")


def compress_chain(points: Iterable[int], scheme: MonotoneScheme) -> CompressionTrace:
    """Compress a point set to a kernel of scheme.m points.

    Subset policy: each step feeds sigma the d+1 smallest-id live points.
    Any policy round-trips (decompression unions over all d-subsets);
    fixing one makes traces replayable.
    """
    original = frozenset(points)
    d = scheme.m
    if len(original) < d:
        raise ValueError(f"need at least {d} distinct points, got {len(original)}")
    live = set(original)
    steps: list[tuple[frozenset[int], int]] = []
    while len(live) > d:
        beta = frozenset(sorted(live)[: d + 1])
        kept = scheme.sigma(beta)
        (ejected,) = beta - kept
        steps.append((beta, ejected))
        live.remove(ejected)
    return CompressionTrace(original, tuple(steps), frozenset(live))


def decompress_chain(
    kernel: Iterable[int],
    scheme: MonotoneScheme,
    iterations: int,
    cap: int = DEFAULT_CAP,
) -> frozenset[int]:
    """Union-expand a kernel: R0 = eta(kernel), then each round adds eta of
    every d-subset of the cumulative set, for the given number of rounds.

    Growth is monotone and every round adds finitely many points. Subsets
    already expanded are memoized and skipped, and expansion stops early
    once a round adds nothing (no later round could). The cap turns
    combinatorial blowup into an explicit error naming the iteration and
    the size reached.
    """
    kernel = frozenset(kernel)
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    d = scheme.m
    current = set(scheme.eta(kernel))
    if len(current) > cap:
        raise ResourceLimitError(0, len(current), cap)
    expanded = {kernel}
    for iteration in range(1, iterations + 1):
        added: set[int] = set()
        for combo in combinations(sorted(current), d):
            t = frozenset(combo)
            if t in expanded:
                continue
            expanded.add(t)
            added |= scheme.eta(t)
        if added <= current:
            break
        current |= added
        if len(current) > cap:
            raise ResourceLimitError(iteration, len(current), cap)
    return frozenset(current)


def trace_to_text(trace: CompressionTrace) -> str:
    """Line-oriented trace dump: one step per line as `input ids | ejected`."""
    lines = [TRACE_HEADER]
    lines.append("original: " + " ".join(map(str, sorted(trace.original))))
    for subset, ejected in trace.steps:
        lines.append("step: " + " ".join(map(str, sorted(subset))) + " | " + str(ejected))
    lines.append("kernel: " + " ".join(map(str, sorted(trace.kernel))))
    return "\n".join(lines) + "\n"


def trace_from_text(text: str) -> CompressionTrace:
    """Parse a trace dump produced by trace_to_text."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != TRACE_HEADER:
        raise ValueError(f"expected trace header {TRACE_HEADER!r}")
    original: frozenset[int] | None = None
    kernel: frozenset[int] | None = None
    steps: list[tuple[frozenset[int], int]] = []
    for line in lines[1:]:
        tag, _, body = line.partition(":")
        body = body.strip()
        if tag == "original":
            original = frozenset(map(int, body.split()))
        elif tag == "kernel":
            kernel = frozenset(map(int, body.split()))
        elif tag == "step":
            left, _, right = body.partition("|")
            steps.append((frozenset(map(int, left.split())), int(right.strip())))
        else:
            raise ValueError(f"unexpected trace line {line!r}")
    if original is None or kernel is None:
        raise ValueError("trace is missing its original or kernel line")
    return CompressionTrace(original, tuple(steps), kernel)
