"""Spare-color propagation on anchored towers of grid layers.

A tower is a run of grid layers inside the plain group's Cayley graph
(a segment of levels, or a cyclic closure).  Anchor layers are pinned to
the coordinate coloring shifted by the anchor's grid offset: column u gets
color ((u - a0) mod k) + 1, using colors 1..k and leaving k+1 spare.

Between consecutive anchors the coloring walks from one anchor map to the
next through single-column recolorings: each step repaints exactly one
column with the color the previous layer left unused.  Layer-to-layer
properness is automatic for such steps, because cross edges join distinct
columns and two different columns of consecutive layers can only clash if
a color moved columns without passing through the spare.  Anchor gaps
must exceed 3k, which leaves room for any schedule this module emits (the
rotation needs at most 3k/2 steps).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional

from .chi import Budget, Coloring, find_coloring, is_proper
from .errors import InputError, InvariantViolation
from .graphs import FiniteGraph
from .groups import MarkedGroupSpec
from .instances import CYCLE, SEGMENT
from .quotients import build_quotient, cayley_window

OrbitMap = tuple[int, ...]  # column -> color, injective, one spare color


@dataclass(frozen=True)
class AnchoredTower:
    """Anchor positions and grid offsets over a layer range.

    anchors: ordered (position, (a0, b0)) pairs; the offset is the grid
    location of the anchor point, so the column shift across a gap is the
    difference of consecutive a0 values.  Every gap (including the wrap
    gap in cycle mode) must exceed 3k layers.
    """

    k: int
    extent: int
    mode: str
    anchors: tuple[tuple[int, tuple[int, int]], ...]

    def __post_init__(self):
        if self.k < 3:
            raise InputError(f"k must be >= 3, got {self.k}")
        if self.mode not in (SEGMENT, CYCLE):
            raise InputError(f"mode must be '{SEGMENT}' or '{CYCLE}'")
        if not self.anchors:
            raise InputError("a tower needs at least one anchor")
        object.__setattr__(
            self,
            "anchors",
            tuple(
                (int(pos), (a0 % self.k, b0 % self.k))
                for pos, (a0, b0) in self.anchors
            ),
        )
        positions = [pos for pos, _ in self.anchors]
        if positions != sorted(positions) or len(set(positions)) != len(positions):
            raise InputError("anchor positions must be strictly increasing")
        if positions[0] < 0 or positions[-1] >= self.extent:
            raise InputError("anchor positions must lie within the extent")
        floor = 3 * self.k
        for (p1, _), (p2, _) in zip(self.anchors, self.anchors[1:]):
            if p2 - p1 <= floor:
                raise InputError(
                    f"anchor gap {p2 - p1} must exceed 3k = {floor}"
                )
        if self.mode == CYCLE and len(self.anchors) >= 1:
            wrap = positions[0] + self.extent - positions[-1]
            if len(self.anchors) == 1:
                wrap = self.extent
            if wrap <= floor:
                raise InputError(
                    f"wrap-around anchor gap {wrap} must exceed 3k = {floor}"
                )

    @property
    def gap_count(self) -> int:
        return len(self.anchors) - (0 if self.mode == CYCLE else 1)


def anchor_coloring(k: int, column_offset: int = 0) -> OrbitMap:
    """The coordinate coloring of one layer: column u -> ((u - a0) mod k) + 1.

    Uses colors 1..k; the spare color k+1 never appears.
    """
    if k < 3:
        raise InputError(f"k must be >= 3, got {k}")
    return tuple(((u - column_offset) % k) + 1 for u in range(k))


def spare_color(k: int, orbit_map: OrbitMap) -> int:
    """The single color of 1..k+1 the map does not use."""
    used = set(orbit_map)
    if len(orbit_map) != k or len(used) != k:
        raise InputError("orbit map must be injective on the k columns")
    missing = set(range(1, k + 2)) - used
    if len(missing) != 1:
        raise InputError("orbit map must use colors within 1..k+1")
    return missing.pop()


def transfer_schedule(
    k: int, source: OrbitMap, target: OrbitMap
) -> list[OrbitMap]:
    """Single-column steps carrying the source map onto the target map.

    Both maps must be injective and spare-free (color k+1 unused).  Each
    returned state differs from its predecessor on exactly one column, the
    new color is the predecessor's unused color, and the final state equals
    the target.  The length never exceeds 3k (a color cycle of length L
    costs L+1 steps, totalling at most 3k/2).
    """
    for name, m in (("source", source), ("target", target)):
        if spare_color(k, m) != k + 1:
            raise InputError(f"{name} map must leave color {k + 1} unused")
    cur = list(source)
    schedule: list[OrbitMap] = []
    limit = 3 * k
    while tuple(cur) != tuple(target):
        spare = (k + 1) * (k + 2) // 2 - sum(cur)
        if spare == k + 1:
            column = next(u for u in range(k) if cur[u] != target[u])
        else:
            column = target.index(spare)
        cur[column] = spare
        schedule.append(tuple(cur))
        if len(schedule) > limit:
            raise InvariantViolation(
                f"transfer schedule exceeded {limit} steps"
            )
    return schedule


def three_swap_round(k: int, source: OrbitMap, swap_color: int) -> list[OrbitMap]:
    """One round of the three-transposition walk: park color k on the
    spare, move swap_color onto k, then bring k+1's column back to
    swap_color.  Nets a transposition of colors k and swap_color while
    restoring k+1 as the spare.  Kept as an executable trace of the
    round-by-round description the schedule generalizes."""
    if not (1 <= swap_color < k):
        raise InputError("swap color must lie in 1..k-1")
    if spare_color(k, source) != k + 1:
        raise InputError("source map must leave the spare color unused")
    states = []
    cur = list(source)
    cur[cur.index(k)] = k + 1
    states.append(tuple(cur))
    cur = list(cur)
    cur[cur.index(swap_color)] = k
    states.append(tuple(cur))
    cur = list(cur)
    cur[cur.index(k + 1)] = swap_color
    states.append(tuple(cur))
    return states


@dataclass
class TowerColoring:
    """Materialized tower graph plus the per-layer column maps."""

    tower: AnchoredTower
    graph: FiniteGraph
    coloring: Coloring
    orbit_maps: list[OrbitMap]

    @property
    def colors_used(self) -> int:
        return self.coloring.used

    def to_json(self) -> dict:
        return {
            "tower": tower_to_json(self.tower),
            "coloring": self.coloring.to_json(),
            "labels": [list(l) for l in self.graph.labels],
            "colors_used": self.colors_used,
        }


def tower_graph(tower: AnchoredTower) -> FiniteGraph:
    """The plain-group layer graph the tower colors."""
    spec = MarkedGroupSpec(tower.k)
    if tower.mode == CYCLE:
        return build_quotient(spec, tower.extent).graph
    return cayley_window(spec, tower.extent)


def color_tower(tower: AnchoredTower) -> TowerColoring:
    """Color the whole tower with at most k+1 colors.

    Anchor layers take their shifted coordinate coloring; each gap runs
    the transfer schedule and then repeats the target map until the next
    anchor.  Layers outside the anchor range (segment mode) copy the
    nearest anchor.  The result is checked proper before returning.
    """
    k = tower.k
    maps: list[Optional[OrbitMap]] = [None] * tower.extent
    for pos, (a0, _) in tower.anchors:
        maps[pos] = anchor_coloring(k, a0)

    pairs = list(zip(tower.anchors, tower.anchors[1:]))
    if tower.mode == CYCLE:
        if len(tower.anchors) == 1:
            pos, (a0, _) = tower.anchors[0]
            pairs.append(((pos, (a0, 0)), (pos + tower.extent, (a0, 0))))
        else:
            first_pos, first_off = tower.anchors[0]
            last = tower.anchors[-1]
            pairs.append((last, (first_pos + tower.extent, first_off)))
    for (pos_a, (a0_a, _)), (pos_b, (a0_b, _)) in pairs:
        source = anchor_coloring(k, a0_a)
        target = anchor_coloring(k, a0_b)
        gap = pos_b - pos_a
        schedule = transfer_schedule(k, source, target)
        if len(schedule) > gap - 1:
            raise InvariantViolation(
                f"schedule of {len(schedule)} steps cannot fit a gap of {gap}"
            )
        for i in range(1, gap):
            idx = (pos_a + i) % tower.extent
            maps[idx] = schedule[i - 1] if i - 1 < len(schedule) else target
    if tower.mode == SEGMENT:
        first_pos = tower.anchors[0][0]
        last_pos = tower.anchors[-1][0]
        for idx in range(first_pos):
            maps[idx] = maps[first_pos]
        for idx in range(last_pos + 1, tower.extent):
            maps[idx] = maps[last_pos]

    assert all(m is not None for m in maps)
    graph = tower_graph(tower)
    colors = [0] * graph.n
    for v, (a, _b, n) in enumerate(graph.labels):
        colors[v] = maps[n][a]
    coloring = Coloring(tuple(colors), k + 1)
    if not is_proper(graph, coloring):
        raise InvariantViolation("tower coloring came out improper")
    return TowerColoring(tower, graph, coloring, maps)


def witness_k_insufficient(
    k: int, tower: AnchoredTower, budget: Optional[Budget] = None
) -> bool:
    """True iff no k-coloring of the gap graph extends both pinned anchor
    layers (exhaustive search).  Requires a single-gap segment tower."""
    if tower.mode != SEGMENT or len(tower.anchors) != 2:
        raise InputError("witness check needs a segment tower with two anchors")
    if tower.k != k:
        raise InputError("tower modulus disagrees with k")
    graph = tower_graph(tower)
    constraints = {}
    for pos, (a0, _) in tower.anchors:
        layer_map = anchor_coloring(k, a0)
        for v, (a, _b, n) in enumerate(graph.labels):
            if n == pos:
                constraints[v] = layer_map[a]
    return find_coloring(graph, k, constraints, budget=budget) is None


def greedy_discrete_set(positions: list[int], r: int) -> list[int]:
    """Greedy maximal subset with pairwise gaps greater than r.

    Scans ascending and keeps a position iff it is more than r away from
    every kept one; every rejected position is within r of a kept one.
    """
    if r < 1:
        raise InputError(f"r must be >= 1, got {r}")
    kept: list[int] = []
    for p in sorted(positions):
        if not kept or p - kept[-1] > r:
            kept.append(p)
    return kept


def random_tower(
    k: int, rng: random.Random, mode: str = SEGMENT, zero_offsets: bool = False
) -> AnchoredTower:
    """A seeded random tower with valid gaps; for tests and demo runs."""
    floor = 3 * k
    count = rng.choice((2, 3))
    gaps = [floor + 1 + rng.randrange(6) for _ in range(count)]
    positions = [0]
    for gap in gaps[: count - 1]:
        positions.append(positions[-1] + gap)
    if mode == CYCLE:
        extent = positions[-1] + gaps[-1]
    else:
        extent = positions[-1] + 1 + rng.randrange(3)
    offset = (0, 0) if zero_offsets else None
    anchors = tuple(
        (
            pos,
            offset if offset is not None else (rng.randrange(k), rng.randrange(k)),
        )
        for pos in positions
    )
    return AnchoredTower(k, extent, mode, anchors)


# -- serialization ------------------------------------------------------------


def tower_to_json(tower: AnchoredTower) -> dict:
    return {
        "k": tower.k,
        "extent": tower.extent,
        "mode": tower.mode,
        "anchors": [
            {"position": pos, "offset": list(off)} for pos, off in tower.anchors
        ],
    }


def tower_from_json(doc: dict) -> AnchoredTower:
    try:
        anchors = tuple(
            (int(a["position"]), (int(a["offset"][0]), int(a["offset"][1])))
            for a in doc["anchors"]
        )
        return AnchoredTower(
            int(doc["k"]), int(doc["extent"]), doc["mode"], anchors
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed tower document: {exc}") from exc


def load_tower(path: str) -> AnchoredTower:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"cannot parse {path}: {exc}") from exc
    return tower_from_json(doc)
