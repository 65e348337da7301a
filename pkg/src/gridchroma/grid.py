"""The complete-difference grid graph on Z_k x Z_k and its coloring laws.

Vertices are the k^2 cells (a, b); two cells are adjacent exactly when
they differ in both coordinates, giving a (k-1)^2-regular graph.  A row
fixes b (first coordinate sweeps); a column fixes a.  Independent sets of
size >= 2 live entirely inside one row or one column, which splits every
proper (2k-2)-coloring into exactly one of two camps:

  horizontal: every row contains a color set of size >= 2 inside it,
  vertical:   every column contains a color set of size >= 2 inside it.

Note the coloring that sends (a, b) to a has full columns as color sets
and is therefore vertical under this convention.

The module also builds the two-orbit graph (two adjacent grid layers of a
tower, plain or twisted) and provides exhaustive verifiers for the
dichotomy, the orientation-propagation law across layers, and the rigidity
of k-colorings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .chi import Budget, Coloring, enumerate_colorings, is_proper
from .errors import InputError, InvariantViolation, UndecidedError
from .graphs import FiniteGraph
from .groups import GroupElement, MarkedGroupSpec, generator_element, generators, multiply

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

SINGLETON = "singleton"
NOT_INDEPENDENT = "not-independent"


@dataclass(frozen=True)
class GridGraphH:
    """The grid graph for one modulus k, with (a, b) labels."""

    k: int
    graph: FiniteGraph

    def index(self, a: int, b: int) -> int:
        return a * self.k + b

    def cell(self, v: int) -> tuple[int, int]:
        return divmod(v, self.k)

    def row(self, b: int) -> list[int]:
        return [self.index(a, b) for a in range(self.k)]

    def column(self, a: int) -> list[int]:
        return [self.index(a, b) for b in range(self.k)]


def grid_graph(k: int) -> GridGraphH:
    """Build the complete-difference graph on the k x k grid."""
    if k < 3:
        raise InputError(f"grid modulus must be >= 3, got {k}")
    edges = []
    for a in range(k):
        for b in range(k):
            u = a * k + b
            for a2 in range(a + 1, k):
                for b2 in range(k):
                    if b2 != b:
                        edges.append((u, a2 * k + b2))
    labels = [(a, b) for a in range(k) for b in range(k)]
    return GridGraphH(k, FiniteGraph(k * k, edges, labels))


@dataclass(frozen=True)
class Classification:
    """Shape of an independent set: singleton, horizontal(b), vertical(a)."""

    kind: str
    index: Optional[int] = None


def classify_independent_set(h: GridGraphH, vertices: Iterable[int]) -> Classification:
    """Classify a non-empty vertex set of the grid graph.

    Size >= 2 independent sets always sit inside exactly one row or one
    column; the classification carries the witnessing index.
    """
    vs = sorted(set(vertices))
    if not vs:
        raise InputError("cannot classify the empty set")
    cells = [h.cell(v) for v in vs]
    for i, (a, b) in enumerate(cells):
        for a2, b2 in cells[i + 1 :]:
            if a != a2 and b != b2:
                return Classification(NOT_INDEPENDENT)
    if len(vs) == 1:
        return Classification(SINGLETON)
    a_values = {a for a, _ in cells}
    b_values = {b for _, b in cells}
    if len(b_values) == 1:
        return Classification(HORIZONTAL, b_values.pop())
    if len(a_values) == 1:
        return Classification(VERTICAL, a_values.pop())
    raise InvariantViolation(
        "independent set of size >= 2 confined to neither a row nor a column"
    )


def _orientation_flags(k: int, cols: tuple[int, ...]) -> tuple[bool, bool]:
    """(horizontal?, vertical?) for a proper grid coloring given as a flat
    tuple indexed by a*k+b.  Assumes properness."""
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(cols):
        by_color.setdefault(c, []).append(v)
    row_has = [False] * k
    col_has = [False] * k
    for cells in by_color.values():
        if len(cells) < 2:
            continue
        a0, b0 = divmod(cells[0], k)
        same_a = all(v // k == a0 for v in cells[1:])
        same_b = all(v % k == b0 for v in cells[1:])
        if same_b:
            row_has[b0] = True
        elif same_a:
            col_has[a0] = True
    return all(row_has), all(col_has)


def orientation(h: GridGraphH, coloring: Coloring) -> str:
    """Which side of the coloring dichotomy a proper (2k-2)-coloring is on."""
    if coloring.palette != 2 * h.k - 2:
        raise InputError(
            f"orientation is defined for palette {2 * h.k - 2}, got {coloring.palette}"
        )
    if not is_proper(h.graph, coloring):
        raise InputError("orientation requires a proper coloring")
    horiz, vert = _orientation_flags(h.k, coloring.colors)
    if horiz == vert:
        raise InvariantViolation(
            f"coloring dichotomy failed: horizontal={horiz}, vertical={vert}"
        )
    return HORIZONTAL if horiz else VERTICAL


def projection_coloring(k: int, axis: str, palette: Optional[int] = None) -> Coloring:
    """The k-coloring of the grid by one coordinate (axis 'a' or 'b').

    The palette can be padded upward (e.g. to 2k-2) with colors unused.
    """
    if axis not in ("a", "b"):
        raise InputError("axis must be 'a' or 'b'")
    palette = palette or k
    if palette < k:
        raise InputError("palette too small for a coordinate coloring")
    cols = tuple(
        (a if axis == "a" else b) + 1 for a in range(k) for b in range(k)
    )
    return Coloring(cols, palette)


# -- the two-orbit graph ------------------------------------------------------


@dataclass(frozen=True)
class TwoOrbitGraph:
    """Two adjacent grid layers of a tower, with cross edges by group law."""

    k: int
    twisted: bool
    graph: FiniteGraph

    def index(self, a: int, b: int, level: int) -> int:
        return level * self.k * self.k + a * self.k + b

    def layer(self, level: int) -> range:
        base = level * self.k * self.k
        return range(base, base + self.k * self.k)

    def layer_colors(self, coloring: Coloring, level: int) -> tuple[int, ...]:
        base = level * self.k * self.k
        return coloring.colors[base : base + self.k * self.k]


def two_orbit_graph(k: int, twisted: bool) -> TwoOrbitGraph:
    """Build two adjacent layers; cross edges come from the group product,
    so the twisted case needs no hand-coded offsets."""
    spec = MarkedGroupSpec(k, twisted=twisted)
    kk = k * k
    edges = set()
    gens = generators(spec)
    for level in (0, 1):
        for a in range(k):
            for b in range(k):
                x = GroupElement(a, b, level)
                u = level * kk + a * k + b
                for gen in gens:
                    y = multiply(spec, generator_element(gen), x)
                    if 0 <= y.n <= 1:
                        v = y.n * kk + y.a * k + y.b
                        edges.add((u, v) if u < v else (v, u))
    labels = [
        (a, b, level) for level in (0, 1) for a in range(k) for b in range(k)
    ]
    g = FiniteGraph(2 * kk, sorted(edges), labels)
    # each layer must induce a copy of the grid graph
    h_edges = set(grid_graph(k).graph.edges())
    for level in (0, 1):
        base = level * kk
        induced = {
            (u - base, v - base)
            for u, v in g.edges()
            if base <= u < base + kk and base <= v < base + kk
        }
        if induced != h_edges:
            raise InvariantViolation("tower layer is not a copy of the grid graph")
    return TwoOrbitGraph(k, twisted, g)


# -- verification reports -----------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of an exhaustive coloring check."""

    name: str
    params: dict
    count: int = 0
    violations: list = field(default_factory=list)
    undecided: bool = False
    notes: list = field(default_factory=list)

    MAX_RECORDED = 10

    @property
    def ok(self) -> bool:
        return not self.violations and not self.undecided

    def record_violation(self, item):
        if len(self.violations) < self.MAX_RECORDED:
            self.violations.append(item)
        else:
            self.violations.append("... further violations suppressed")
            raise _StopVerification

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "count": self.count,
            "violations": self.violations,
            "undecided": self.undecided,
            "notes": self.notes,
            "ok": self.ok,
        }


class _StopVerification(Exception):
    pass


def verify_dichotomy(
    k: int,
    budget: Optional[Budget] = None,
    canonical: Optional[bool] = None,
) -> VerificationReport:
    """Check every proper (2k-2)-coloring of the grid graph lands on exactly
    one side of the horizontal/vertical split.

    For k=3 the full unpruned enumeration runs by default.  For larger k,
    enumeration is reduced to one representative per color permutation
    (sound: both branch predicates are invariant under recoloring), and a
    budget turns an unfinished run into an explicit undecided report.
    """
    if k < 3:
        raise InputError(f"k must be >= 3, got {k}")
    palette = 2 * k - 2
    if canonical is None:
        canonical = k > 3
    h = grid_graph(k)
    report = VerificationReport(
        "dichotomy", {"k": k, "palette": palette, "canonical": canonical}
    )

    def visit(cols: tuple[int, ...]):
        horiz, vert = _orientation_flags(k, cols)
        if horiz == vert:
            report.record_violation(
                {"coloring": list(cols), "horizontal": horiz, "vertical": vert}
            )

    try:
        report.count = enumerate_colorings(
            h.graph, palette, visit, canonical=canonical, budget=budget
        )
    except UndecidedError:
        report.undecided = True
    except _StopVerification:
        pass
    return report


def verify_invariance(
    k: int,
    twisted: bool,
    budget: Optional[Budget] = None,
) -> VerificationReport:
    """Check orientation propagation across adjacent tower layers.

    Enumerates every proper (2k-2)-coloring of the two-orbit graph; plain
    layers must share an orientation, twisted layers must swap it.
    """
    if k < 3:
        raise InputError(f"k must be >= 3, got {k}")
    palette = 2 * k - 2
    tg = two_orbit_graph(k, twisted)
    kk = k * k
    want_equal = not twisted
    report = VerificationReport(
        "invariance", {"k": k, "twisted": twisted, "palette": palette}
    )

    def visit(cols: tuple[int, ...]):
        h0, v0 = _orientation_flags(k, cols[:kk])
        h1, v1 = _orientation_flags(k, cols[kk:])
        if h0 == v0 or h1 == v1:
            report.record_violation(
                {"coloring": list(cols), "reason": "layer escaped the dichotomy"}
            )
            return
        if (h0 == h1) != want_equal:
            report.record_violation(
                {
                    "coloring": list(cols),
                    "layer0": HORIZONTAL if h0 else VERTICAL,
                    "layer1": HORIZONTAL if h1 else VERTICAL,
                }
            )

    try:
        report.count = enumerate_colorings(tg.graph, palette, visit, budget=budget)
    except UndecidedError:
        report.undecided = True
    except _StopVerification:
        pass
    return report


def verify_rigidity(
    k: int,
    budget: Optional[Budget] = None,
) -> VerificationReport:
    """Check that every proper k-coloring of the plain two-orbit graph is a
    coordinate projection, with the same projection on both layers.

    In particular the color pattern of layer 1 equals that of layer 0, the
    finite form of "shifting one layer up never changes the color".
    """
    if k < 3:
        raise InputError(f"k must be >= 3, got {k}")
    tg = two_orbit_graph(k, twisted=False)
    kk = k * k
    report = VerificationReport("rigidity", {"k": k, "palette": k})

    def projection_axis(layer: tuple[int, ...]) -> Optional[str]:
        if all(
            layer[a * k + b] == layer[a * k] for a in range(k) for b in range(k)
        ):
            return "a"
        if all(layer[a * k + b] == layer[b] for a in range(k) for b in range(k)):
            return "b"
        return None

    def visit(cols: tuple[int, ...]):
        lo, hi = cols[:kk], cols[kk:]
        axis0, axis1 = projection_axis(lo), projection_axis(hi)
        if axis0 is None or axis1 is None or axis0 != axis1 or lo != hi:
            report.record_violation(
                {"coloring": list(cols), "layer0_axis": axis0, "layer1_axis": axis1}
            )

    try:
        report.count = enumerate_colorings(tg.graph, k, visit, budget=budget)
    except UndecidedError:
        report.undecided = True
    except _StopVerification:
        pass
    return report
