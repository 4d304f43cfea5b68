"""SCC decomposition and bow-tie component assignment.

The graph is split around its largest strongly connected component (LSCC):

* ``IN``: reaches the LSCC, is not reached by it.
* ``OUT``: reached from the LSCC, does not reach it back.
* ``TENDRILS``: no directed reachability to or from the LSCC, but weakly
  connected to it. Vertices on IN-to-OUT paths that bypass the core
  ("tubes") land here too; sub-roles are kept as a diagnostic.
* ``DISC``: the weakly connected component does not contain the LSCC.

When IN outweighs both the core and OUT the structure is skewed toward the
audience side; ``is_askew`` captures exactly that.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable

from .graph import ConversationGraph


class Component(str, Enum):
    IN = "IN"
    LSCC = "LSCC"
    OUT = "OUT"
    TENDRILS = "TENDRILS"
    DISC = "DISC"


COMPONENT_ORDER: tuple[Component, ...] = (
    Component.IN, Component.LSCC, Component.OUT, Component.TENDRILS, Component.DISC,
)

# Diagnostic sub-roles for TENDRILS members.
TENDRIL_IN = "tendril_in"        # reachable from IN
TENDRIL_OUT = "tendril_out"      # reaches OUT
TUBE = "tube"                    # both: on an IN->OUT path bypassing the core
TENDRIL_OTHER = "tendril_other"  # weakly attached only


@dataclass(frozen=True)
class SccDecomposition:
    """Partition of the users into strongly connected components.

    ``lscc_id`` names a component of maximal size; among equally large ones
    the component containing the lexicographically smallest user id wins.
    ``lscc_id`` is None only for an empty graph.
    """

    component_of: dict[str, int]
    members: dict[int, frozenset[str]]
    lscc_id: int | None

    @property
    def lscc(self) -> frozenset[str]:
        if self.lscc_id is None:
            return frozenset()
        return self.members[self.lscc_id]


@dataclass(frozen=True)
class BowTieDecomposition:
    """Total mapping user -> component, plus the core identity.

    ``scc`` is the underlying SCC partition and ``sub_role_of`` holds the
    diagnostic tendril sub-roles; both are carried for downstream reporting.
    """

    label_of: dict[str, Component]
    lscc: frozenset[str]
    scc: SccDecomposition
    sub_role_of: dict[str, str]

    def members(self, component: Component) -> frozenset[str]:
        return frozenset(u for u, c in self.label_of.items() if c is component)

    def sizes(self) -> dict[Component, int]:
        counts = {c: 0 for c in COMPONENT_ORDER}
        for c in self.label_of.values():
            counts[c] += 1
        return counts

    @property
    def is_askew(self) -> bool:
        sizes = self.sizes()
        return (sizes[Component.IN] > sizes[Component.LSCC]
                and sizes[Component.IN] > sizes[Component.OUT])


@dataclass(frozen=True)
class ComponentStats:
    """Mass and flow concentration figures for one decomposition.

    ``lscc_scc_mass_pct`` is the core's share of the summed size of all
    nontrivial SCCs (size >= 2), None when no nontrivial SCC exists.
    ``lscc_flow_pct`` is the share of conversational tweets (nonempty
    recipients) that touch the core on either side, None when the corpus
    has no conversational tweets.
    """

    mass_pct: dict[Component, float]
    lscc_scc_mass_pct: float | None
    lscc_flow_pct: float | None
    user_count: int
    tweet_count: int
    is_askew: bool


def _tarjan_scc(adj: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Iterative Tarjan with Nuutila's modification, over index adjacency.

    Returns (components as index lists, component id per vertex). Component
    ids are assigned in completion order, deterministically for a fixed
    adjacency structure.
    """
    n = len(adj)
    preorder = [0] * n           # 1-based visit order; 0 = unvisited
    lowlink = [0] * n
    ptr = [0] * n                # resume position in adj[v] between visits
    assigned = bytearray(n)
    comp_of = [-1] * n
    comps: list[list[int]] = []
    pending: list[int] = []      # visited, not yet assigned to a component
    counter = 0
    for source in range(n):
        if preorder[source]:
            continue
        stack = [source]
        while stack:
            v = stack[-1]
            if not preorder[v]:
                counter += 1
                preorder[v] = counter
            neighbors = adj[v]
            i = ptr[v]
            descend = False
            while i < len(neighbors):
                w = neighbors[i]
                if not preorder[w]:
                    ptr[v] = i
                    stack.append(w)
                    descend = True
                    break
                i += 1
            if descend:
                continue
            ptr[v] = i
            low = preorder[v]
            for w in neighbors:
                if not assigned[w]:
                    wlow = lowlink[w] if preorder[w] > preorder[v] else preorder[w]
                    if wlow < low:
                        low = wlow
            lowlink[v] = low
            stack.pop()
            if low == preorder[v]:
                members = [v]
                assigned[v] = 1
                while pending and preorder[pending[-1]] > preorder[v]:
                    k = pending.pop()
                    assigned[k] = 1
                    members.append(k)
                cid = len(comps)
                for m in members:
                    comp_of[m] = cid
                comps.append(members)
            else:
                pending.append(v)
    return comps, comp_of


def scc_decompose(g: ConversationGraph) -> SccDecomposition:
    """Decompose the graph into strongly connected components."""
    comps, comp_of = _tarjan_scc(g.out_adj())
    ids = g.user_ids
    members = {cid: frozenset(ids[i] for i in comp)
               for cid, comp in enumerate(comps)}
    component_of = {ids[i]: comp_of[i] for i in range(len(ids))}
    lscc_id: int | None = None
    if comps:
        top = max(len(c) for c in comps)
        lscc_id = min((cid for cid, c in enumerate(comps) if len(c) == top),
                      key=lambda cid: min(members[cid]))
    return SccDecomposition(component_of=component_of, members=members, lscc_id=lscc_id)


def _reachable(adj: list[list[int]], seeds: Iterable[int], n: int,
               blocked: bytearray | None = None) -> bytearray:
    """Vertices reachable from the seeds (seeds included). Vertices flagged
    in ``blocked`` are marked when reached but never expanded."""
    seen = bytearray(n)
    frontier = []
    for s in seeds:
        if not seen[s]:
            seen[s] = 1
            frontier.append(s)
    while frontier:
        nxt = []
        for v in frontier:
            if blocked is not None and blocked[v]:
                continue
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = 1
                    nxt.append(w)
        frontier = nxt
    return seen


def bowtie_decompose(g: ConversationGraph) -> BowTieDecomposition:
    """Assign every user to IN, LSCC, OUT, TENDRILS, or DISC.

    Forward reachability from the core yields OUT, backward reachability
    yields IN, and weak connectivity to the core separates TENDRILS from
    DISC. On an edgeless graph the core degenerates to the singleton chosen
    by the SCC tie-break and everything else is DISC. An empty graph gives
    an empty decomposition with an empty core.
    """
    scc = scc_decompose(g)
    if scc.lscc_id is None:
        return BowTieDecomposition(label_of={}, lscc=frozenset(), scc=scc, sub_role_of={})
    ids = g.user_ids
    n = len(ids)
    idx = g.index_of
    out_adj = g.out_adj()
    in_adj = g.in_adj()
    core = [idx[u] for u in scc.lscc]

    fwd = _reachable(out_adj, core, n)    # core plus everything it reaches
    bwd = _reachable(in_adj, core, n)     # core plus everything reaching it

    in_core = bytearray(n)
    for v in core:
        in_core[v] = 1

    label_of: dict[str, Component] = {}
    rest: list[int] = []
    for v in range(n):
        if in_core[v]:
            label_of[ids[v]] = Component.LSCC
        elif bwd[v]:
            # mutual reachability outside the core would contradict SCC maximality
            assert not fwd[v], ids[v]
            label_of[ids[v]] = Component.IN
        elif fwd[v]:
            label_of[ids[v]] = Component.OUT
        else:
            rest.append(v)

    sub_role_of: dict[str, str] = {}
    if rest:
        # weak connectivity to the core decides TENDRILS vs DISC
        undirected = [out_adj[v] + in_adj[v] for v in range(n)]
        weak = _reachable(undirected, core, n)
        in_side = [v for v in range(n) if bwd[v] and not in_core[v]]
        out_side = [v for v in range(n) if fwd[v] and not in_core[v]]
        # IN can only reach tendrils through non-core, non-OUT vertices, so
        # the pruned traversals stay inside IN/TENDRILS territory (and the
        # mirror argument holds for reaching OUT).
        barrier = bytearray(n)
        for v in range(n):
            if in_core[v] or (fwd[v] and not in_core[v]):
                barrier[v] = 1
        from_in = _reachable(out_adj, in_side, n, blocked=barrier)
        barrier_b = bytearray(n)
        for v in range(n):
            if in_core[v] or (bwd[v] and not in_core[v]):
                barrier_b[v] = 1
        to_out = _reachable(in_adj, out_side, n, blocked=barrier_b)
        for v in rest:
            u = ids[v]
            if weak[v]:
                label_of[u] = Component.TENDRILS
                if from_in[v] and to_out[v]:
                    sub_role_of[u] = TUBE
                elif from_in[v]:
                    sub_role_of[u] = TENDRIL_IN
                elif to_out[v]:
                    sub_role_of[u] = TENDRIL_OUT
                else:
                    sub_role_of[u] = TENDRIL_OTHER
            else:
                label_of[u] = Component.DISC

    return BowTieDecomposition(label_of=label_of, lscc=scc.lscc, scc=scc,
                               sub_role_of=sub_role_of)


def component_stats(g: ConversationGraph, d: BowTieDecomposition) -> ComponentStats:
    """Mass percentages per component plus core concentration figures."""
    total = len(g.users)
    sizes = d.sizes()
    mass_pct = {c: (100.0 * sizes[c] / total if total else 0.0)
                for c in COMPONENT_ORDER}

    nontrivial_mass = sum(len(m) for m in d.scc.members.values() if len(m) >= 2)
    lscc_scc_mass_pct = (100.0 * len(d.lscc) / nontrivial_mass
                         if nontrivial_mass else None)

    core = d.lscc
    conversational = 0
    touching = 0
    for t in g.tweets:
        if not t.recipients:
            continue
        conversational += 1
        if t.author in core or not core.isdisjoint(t.recipients):
            touching += 1
    lscc_flow_pct = (100.0 * touching / conversational if conversational else None)

    return ComponentStats(mass_pct=mass_pct,
                          lscc_scc_mass_pct=lscc_scc_mass_pct,
                          lscc_flow_pct=lscc_flow_pct,
                          user_count=total,
                          tweet_count=len(g.tweets),
                          is_askew=d.is_askew)


def stats_to_dict(stats: ComponentStats) -> dict:
    """JSON-ready mirror of the stats fields."""
    return {
        "mass_pct": {c.value: stats.mass_pct[c] for c in COMPONENT_ORDER},
        "lscc_scc_mass_pct": stats.lscc_scc_mass_pct,
        "lscc_flow_pct": stats.lscc_flow_pct,
        "user_count": stats.user_count,
        "tweet_count": stats.tweet_count,
        "is_askew": stats.is_askew,
    }


def write_components_csv(d: BowTieDecomposition, path: str | Path) -> None:
    """Write the user -> component assignment table, sorted by user."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["user", "component"])
        for user in sorted(d.label_of):
            writer.writerow([user, d.label_of[user].value])


def read_components_csv(path: str | Path) -> dict[str, Component]:
    result: dict[str, Component] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            result[row["user"]] = Component(row["component"])
    return result
