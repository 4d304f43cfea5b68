"""Cumulative daily slicing, component migrations, and arrival attribution.

Slices are cumulative prefixes of the corpus, so a user never departs:
once present, a user stays in every later slice. Migration matrices count
label changes between consecutive slices; arrivals count users first seen
at the later slice, per component they land in.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .bowtie import COMPONENT_ORDER, BowTieDecomposition, Component, bowtie_decompose
from .graph import ConversationGraph, TimeWindow, time_slice

SECONDS_PER_DAY = 86400

ARRIVAL = "ARRIVAL"


@dataclass(frozen=True)
class SliceSeries:
    """Decompositions of the cumulative windows [boundaries[0], boundaries[k+1])."""

    boundaries: tuple[int, ...]
    decomps: tuple[BowTieDecomposition, ...]

    def __len__(self) -> int:
        return len(self.decomps)


@dataclass(frozen=True)
class MigrationMatrix:
    """Component-to-component user counts between slices ``day_from`` and
    ``day_to``, plus arrivals (users absent from the earlier slice)."""

    day_from: int
    day_to: int
    counts: dict[tuple[Component, Component], int]
    arrivals: dict[Component, int]


def day_boundaries(g: ConversationGraph, delta: int = SECONDS_PER_DAY) -> list[int]:
    """UTC day-start boundaries covering every tweet in the graph.

    The first boundary is the midnight at or before the earliest tweet; the
    last is strictly after the latest, so the final window is inclusive.
    """
    if not g.tweets:
        raise ValueError("cannot derive day boundaries from an empty corpus")
    lo = min(t.timestamp for t in g.tweets)
    hi = max(t.timestamp for t in g.tweets)
    start = (lo // delta) * delta
    boundaries = [start]
    while boundaries[-1] <= hi:
        boundaries.append(boundaries[-1] + delta)
    return boundaries


def cumulative_slices(g: ConversationGraph, day_starts: Sequence[int]) -> SliceSeries:
    """Decompose every cumulative prefix window of the corpus."""
    if len(day_starts) < 2:
        raise ValueError("need at least two day boundaries")
    if any(a >= b for a, b in zip(day_starts, day_starts[1:])):
        raise ValueError("day boundaries must be strictly ascending")
    decomps = []
    for end in day_starts[1:]:
        window = TimeWindow(day_starts[0], end)
        decomps.append(bowtie_decompose(time_slice(g, window)))
    return SliceSeries(boundaries=tuple(day_starts), decomps=tuple(decomps))


def migration_matrix(series: SliceSeries, k: int) -> MigrationMatrix:
    """Migrations between slice ``k`` and slice ``k+1``."""
    if not 0 <= k < len(series.decomps) - 1:
        raise IndexError(f"slice index {k} out of range")
    before = series.decomps[k].label_of
    after = series.decomps[k + 1].label_of
    counts = {(a, b): 0 for a in COMPONENT_ORDER for b in COMPONENT_ORDER}
    arrivals = {b: 0 for b in COMPONENT_ORDER}
    for user, label in after.items():
        prior = before.get(user)
        if prior is None:
            arrivals[label] += 1
        else:
            counts[(prior, label)] += 1
    return MigrationMatrix(day_from=k, day_to=k + 1, counts=counts, arrivals=arrivals)


def instability(series: SliceSeries, component: Component) -> float:
    """Fraction of the users ever holding ``component`` in a non-final slice
    whose final-slice label differs. 0.0 when no user ever held it."""
    if len(series.decomps) < 2:
        raise ValueError("instability needs at least two slices")
    ever: set[str] = set()
    for decomp in series.decomps[:-1]:
        ever.update(u for u, c in decomp.label_of.items() if c is component)
    if not ever:
        return 0.0
    final = series.decomps[-1].label_of
    moved = sum(1 for u in ever if final[u] is not component)
    return moved / len(ever)


def write_alluvial_csv(series: SliceSeries, path: str | Path) -> None:
    """Plot-ready migration counts, one row per cell, arrivals flagged with
    a reserved ARRIVAL source label."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["day_from", "day_to", "from_component", "to_component", "count"])
        for k in range(max(0, len(series.decomps) - 1)):
            matrix = migration_matrix(series, k)
            for a in COMPONENT_ORDER:
                for b in COMPONENT_ORDER:
                    writer.writerow([k, k + 1, a.value, b.value, matrix.counts[(a, b)]])
            for b in COMPONENT_ORDER:
                writer.writerow([k, k + 1, ARRIVAL, b.value, matrix.arrivals[b]])


def write_empty_alluvial_csv(path: str | Path) -> None:
    """Header-only alluvial file, for corpora too small to slice."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerow(
            ["day_from", "day_to", "from_component", "to_component", "count"])
