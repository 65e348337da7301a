"""Exact proper-coloring search: decision, optimization, and enumeration.

Three entry points share one philosophy: never report a value that was not
proven.  `find_coloring` is a complete backtracking decision procedure,
`chromatic_number` wraps it in an ascending bound loop, and
`enumerate_colorings` walks every proper coloring in lexicographic order.
Searches accept an optional Budget; running out raises UndecidedError with
whatever bounds were established, never a guess.

Colors are 1-based throughout (palette p means colors 1..p).
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InputError, UndecidedError
from .graphs import FiniteGraph


@dataclass(frozen=True)
class Coloring:
    """A total assignment vertex -> color in {1..palette}."""

    colors: tuple[int, ...]
    palette: int

    def __post_init__(self):
        if any(not (1 <= c <= self.palette) for c in self.colors):
            raise InputError("color out of palette range")

    @property
    def used(self) -> int:
        return len(set(self.colors))

    def to_json(self) -> dict:
        return {"palette": self.palette, "colors": list(self.colors)}


def is_proper(g: FiniteGraph, coloring: Coloring) -> bool:
    """True iff no edge of g is monochromatic under the coloring."""
    cols = coloring.colors
    if len(cols) != g.n:
        raise InputError(
            f"coloring covers {len(cols)} vertices, graph has {g.n}"
        )
    for u in range(g.n):
        cu = cols[u]
        for v in g.adj[u]:
            if v > u and cols[v] == cu:
                return False
    return True


class Budget:
    """Search budget: wall-clock milliseconds and/or a node cap.

    Node counting is deterministic; the millisecond limit is checked every
    few thousand nodes so light runs never pay for a clock read.
    """

    CHECK_EVERY = 4096

    def __init__(self, ms: Optional[float] = None, max_nodes: Optional[int] = None):
        self.ms = ms
        self.max_nodes = max_nodes
        self.nodes = 0
        self._deadline = time.monotonic() + ms / 1000.0 if ms is not None else None

    def spend(self, what: str = "search"):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise UndecidedError(f"{what}: node budget exhausted")
        if self._deadline is not None and self.nodes % self.CHECK_EVERY == 0:
            if time.monotonic() > self._deadline:
                raise UndecidedError(f"{what}: time budget exhausted")


def _ensure_recursion_room(depth: int):
    need = depth + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


# -- enumeration -------------------------------------------------------------


def enumerate_colorings(
    g: FiniteGraph,
    palette: int,
    visitor: Optional[Callable[[tuple[int, ...]], None]] = None,
    *,
    base_forbidden: Optional[list[int]] = None,
    pin_first: bool = False,
    canonical: bool = False,
    budget: Optional[Budget] = None,
) -> int:
    """Visit every proper coloring with the given palette available.

    Colors may go unused.  Enumeration assigns vertices 0..n-1 in order and
    colors in ascending order, so the visit sequence is deterministic and
    lexicographic.  Returns the total count.

    base_forbidden gives a per-vertex bitmask of disallowed colors (bit c =
    color c), useful for enumerating extensions of an already-colored
    neighborhood.  pin_first restricts vertex 0 to color 1 (sound only for
    permutation-invariant properties).  canonical restricts each vertex to
    used colors plus the single lowest unused one, enumerating exactly one
    representative per color-permutation class.
    """
    if palette < 1:
        raise InputError(f"palette must be >= 1, got {palette}")
    n = g.n
    if n == 0:
        if visitor is not None:
            visitor(())
        return 1
    _ensure_recursion_room(n)
    later = [tuple(w for w in g.adj[v] if w > v) for v in range(n)]
    forb = list(base_forbidden) if base_forbidden is not None else [0] * n
    if len(forb) != n:
        raise InputError("base_forbidden must cover every vertex")
    assign = [0] * n
    all_colors = [1 << c for c in range(1, palette + 1)]
    count = 0

    def rec(v: int, max_used: int):
        nonlocal count
        if budget is not None:
            budget.spend("enumerate_colorings")
        if v == n:
            count += 1
            if visitor is not None:
                visitor(tuple(assign))
            return
        banned = forb[v]
        top = max_used + 1 if canonical else palette
        if pin_first and v == 0:
            top = 1
        for c in range(1, min(top, palette) + 1):
            bit = all_colors[c - 1]
            if banned & bit:
                continue
            assign[v] = c
            touched = []
            for w in later[v]:
                if not forb[w] & bit:
                    forb[w] |= bit
                    touched.append(w)
            rec(v + 1, max_used if c <= max_used else c)
            for w in touched:
                forb[w] ^= bit
        assign[v] = 0

    rec(0, 0)
    return count


# -- decision search ---------------------------------------------------------


def find_coloring(
    g: FiniteGraph,
    palette: int,
    constraints: Optional[dict[int, int]] = None,
    *,
    budget: Optional[Budget] = None,
) -> Optional[Coloring]:
    """A proper coloring extending the constraints, or None if none exists.

    Complete search: a None answer is a proof of non-existence (subject to
    the budget; running out raises UndecidedError).  Vertex selection is
    saturation-first with degree and index tie-breaks, so results are
    deterministic.  When no constraints are given, color symmetry is broken
    by only ever introducing the lowest unused color.
    """
    if palette < 1:
        raise InputError(f"palette must be >= 1, got {palette}")
    n = g.n
    if n == 0:
        return Coloring((), palette)
    constraints = constraints or {}
    full = 0
    for c in range(1, palette + 1):
        full |= 1 << c
    banned = [0] * n
    assign = [0] * n
    degrees = [len(g.adj[v]) for v in range(n)]
    symmetry_break = not constraints

    for v, c in constraints.items():
        if not (0 <= v < n):
            raise InputError(f"constrained vertex {v} out of range")
        if not (1 <= c <= palette):
            raise InputError(f"constraint color {c} outside palette {palette}")

    # seed pinned vertices first; a contradiction among them is final
    used_mask = 0
    unassigned = n
    for v, c in sorted(constraints.items()):
        bit = 1 << c
        if banned[v] & bit:
            return None
        assign[v] = c
        used_mask |= bit
        unassigned -= 1
        for w in g.adj[v]:
            if not assign[w]:
                banned[w] |= bit

    _ensure_recursion_room(n)

    def select() -> int:
        best, best_key = -1, None
        for v in range(n):
            if assign[v]:
                continue
            key = (bin(banned[v]).count("1"), degrees[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def rec(remaining: int, used: int) -> bool:
        if budget is not None:
            budget.spend("find_coloring")
        if remaining == 0:
            return True
        v = select()
        allowed = full & ~banned[v]
        if symmetry_break:
            lowest_unused = (~used) & full
            lowest_unused &= -lowest_unused
            allowed &= used | lowest_unused
        while allowed:
            bit = allowed & -allowed
            allowed ^= bit
            c = bit.bit_length() - 1
            assign[v] = c
            touched = []
            dead = False
            for w in g.adj[v]:
                if not assign[w] and not banned[w] & bit:
                    banned[w] |= bit
                    touched.append(w)
                    if banned[w] == full:
                        dead = True
            if not dead and rec(remaining - 1, used | bit):
                return True
            for w in touched:
                banned[w] ^= bit
            assign[v] = 0
        return False

    if rec(unassigned, used_mask):
        return Coloring(tuple(assign), palette)
    return None


# -- bounds and the chromatic number ------------------------------------------


def greedy_clique(g: FiniteGraph) -> list[int]:
    """A maximal clique found greedily from high-degree seeds (lower bound)."""
    masks = g.neighbor_masks()
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    best: list[int] = []
    for seed in order[:24]:
        clique = [seed]
        inter = masks[seed]
        for v in order:
            if inter >> v & 1:
                clique.append(v)
                inter &= masks[v]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def dsatur_greedy(g: FiniteGraph) -> Coloring:
    """Greedy saturation-order coloring; an upper-bound witness."""
    n = g.n
    assign = [0] * n
    banned = [0] * n
    degrees = [len(g.adj[v]) for v in range(n)]
    top = 1
    for _ in range(n):
        best, best_key = -1, None
        for v in range(n):
            if assign[v]:
                continue
            key = (bin(banned[v]).count("1"), degrees[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        c = 1
        while banned[best] >> c & 1:
            c += 1
        assign[best] = c
        top = max(top, c)
        bit = 1 << c
        for w in g.adj[best]:
            banned[w] |= bit
    return Coloring(tuple(assign), top)


@dataclass
class ChiResult:
    """Outcome of a chromatic-number computation: proven bounds, witness."""

    lower: int
    upper: int
    witness: Optional[Coloring]
    undecided: bool
    nodes: int = 0

    @property
    def value(self) -> Optional[int]:
        return self.lower if not self.undecided and self.lower == self.upper else None


def chromatic_info(
    g: FiniteGraph,
    upper_hint: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> ChiResult:
    """Exact chromatic number with proven bounds; tri-state under budget."""
    if g.n == 0:
        raise InputError("chromatic number of the empty graph is undefined")
    if g.edge_count == 0:
        cols = Coloring((1,) * g.n, 1)
        return ChiResult(1, 1, cols, False)
    lower = max(2, len(greedy_clique(g)))
    witness = dsatur_greedy(g)
    upper = witness.palette
    budget = budget or Budget()
    try:
        if upper_hint is not None and lower <= upper_hint < upper:
            found = find_coloring(g, upper_hint, budget=budget)
            if found is not None:
                witness, upper = found, upper_hint
        p = lower
        while p < upper:
            found = find_coloring(g, p, budget=budget)
            if found is not None:
                witness, upper = found, p
                break
            lower = p + 1
            p += 1
    except UndecidedError:
        return ChiResult(lower, upper, witness, True, budget.nodes)
    return ChiResult(lower, upper, witness, False, budget.nodes)


def chromatic_number(
    g: FiniteGraph,
    upper_hint: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> int:
    """Exact chromatic number; raises UndecidedError if the budget runs out."""
    result = chromatic_info(g, upper_hint, budget)
    if result.undecided:
        raise UndecidedError(
            f"chromatic number undecided at budget: in [{result.lower}, {result.upper}]",
            lower=result.lower,
            upper=result.upper,
        )
    assert result.value is not None
    return result.value
