"""Finite forms of the Cayley graphs: windows and cyclic quotients.

A window keeps the shift coordinate in a range 0..levels-1 and drops edges
leaving it.  A quotient reduces the shift coordinate modulo M >= 3, which
is induced by the right action of the shift-by-M element: right and left
multiplications commute, so left generator edges descend to the cosets
(this is checked at construction rather than assumed).  The quotient has
k^2 * M vertices and is 3(k-1)^2-regular.

Quotients of the plain group stay k-chromatic.  Quotients of the twisted
group collapse onto the plain ones for even M (swap grid coordinates on
odd levels), but for odd M the layer orientations would have to alternate
around an odd cycle, forcing the chromatic number up to 2k-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chi import Budget, ChiResult, Coloring, chromatic_info, find_coloring, is_proper
from .errors import InputError, InvariantViolation
from .graphs import FiniteGraph
from .grid import HORIZONTAL, VERTICAL, VerificationReport, _orientation_flags
from .groups import (
    GroupElement,
    MarkedGroupSpec,
    generator_element,
    generators,
    multiply,
    untwist,
)


def cayley_window(spec: MarkedGroupSpec, levels: int) -> FiniteGraph:
    """The Cayley graph restricted to shift levels 0..levels-1."""
    if levels < 1:
        raise InputError(f"window needs at least one level, got {levels}")
    k = spec.k
    kk = k * k

    def index(e: GroupElement) -> int:
        return e.n * kk + e.a * k + e.b

    edges = set()
    gens = generators(spec)
    for n in range(levels):
        for a in range(k):
            for b in range(k):
                x = GroupElement(a, b, n)
                u = index(x)
                for gen in gens:
                    y = multiply(spec, generator_element(gen), x)
                    if 0 <= y.n < levels:
                        v = index(y)
                        edges.add((u, v) if u < v else (v, u))
    labels = [
        (a, b, n) for n in range(levels) for a in range(k) for b in range(k)
    ]
    return FiniteGraph(levels * kk, sorted(edges), labels)


@dataclass(frozen=True)
class QuotientGraph:
    """Cayley graph with the shift coordinate reduced modulo M."""

    spec: MarkedGroupSpec
    modulus: int
    graph: FiniteGraph

    def index(self, a: int, b: int, n: int) -> int:
        k = self.spec.k
        return (n % self.modulus) * k * k + a * k + b

    def layer(self, n: int) -> range:
        kk = self.spec.k ** 2
        base = (n % self.modulus) * kk
        return range(base, base + kk)

    def layer_colors(self, coloring: Coloring, n: int) -> tuple[int, ...]:
        kk = self.spec.k ** 2
        base = (n % self.modulus) * kk
        return coloring.colors[base : base + kk]


def build_quotient(spec: MarkedGroupSpec, modulus: int) -> QuotientGraph:
    """Build the quotient for M >= 3 (smaller M collapses the two cross
    directions onto each other)."""
    if modulus < 3:
        raise InputError(f"quotient modulus must be >= 3, got {modulus}")
    k = spec.k
    kk = k * k
    gens = generators(spec)
    shift_m = GroupElement(0, 0, modulus)

    def index(e: GroupElement) -> int:
        return (e.n % modulus) * kk + e.a * k + e.b

    edges = set()
    for n in range(modulus):
        for a in range(k):
            for b in range(k):
                x = GroupElement(a, b, n)
                u = index(x)
                nbrs = set()
                for gen in gens:
                    y = multiply(spec, generator_element(gen), x)
                    # the reduction is well defined only because left
                    # generator action commutes with the right shift-by-M
                    left_then_right = multiply(spec, y, shift_m)
                    right_then_left = multiply(
                        spec, generator_element(gen), multiply(spec, x, shift_m)
                    )
                    if index(left_then_right) != index(right_then_left):
                        raise InvariantViolation(
                            "right shift-by-M action does not commute with "
                            f"generator {gen} at {x}"
                        )
                    v = index(y)
                    nbrs.add(v)
                    edges.add((u, v) if u < v else (v, u))
                if len(nbrs) != spec.degree:
                    raise InvariantViolation(
                        f"quotient vertex {x} has {len(nbrs)} distinct "
                        f"neighbors, expected {spec.degree}"
                    )
    labels = [
        (a, b, n) for n in range(modulus) for a in range(k) for b in range(k)
    ]
    return QuotientGraph(spec, modulus, FiniteGraph(modulus * kk, sorted(edges), labels))


def quotient_chi(
    spec: MarkedGroupSpec,
    modulus: int,
    budget: Optional[Budget] = None,
) -> ChiResult:
    """Exact chromatic number of the quotient; tri-state under budget."""
    q = build_quotient(spec, modulus)
    return chromatic_info(q.graph, budget=budget)


def orientation_sequence(q: QuotientGraph, coloring: Coloring) -> list[str]:
    """Per-layer orientation of a proper (2k-2)-coloring of the quotient."""
    k = q.spec.k
    palette = 2 * k - 2
    if coloring.palette != palette:
        raise InputError(
            f"orientation sequence needs palette {palette}, got {coloring.palette}"
        )
    if not is_proper(q.graph, coloring):
        raise InputError("orientation sequence requires a proper coloring")
    out = []
    for n in range(q.modulus):
        horiz, vert = _orientation_flags(k, q.layer_colors(coloring, n))
        if horiz == vert:
            raise InvariantViolation(
                f"layer {n} escaped the orientation dichotomy"
            )
        out.append(HORIZONTAL if horiz else VERTICAL)
    return out


def verify_alternation_obstruction(
    k: int,
    modulus: int,
    budget: Optional[Budget] = None,
) -> VerificationReport:
    """Confirm the odd-modulus twisted quotient has no (2k-2)-coloring.

    Two independent routes are reported: exhaustive search proves no proper
    (2k-2)-coloring exists, and the structural parity argument explains
    why; any such coloring would orient each layer, consecutive layers of
    the twisted quotient must swap orientation, and an odd cycle of layers
    cannot 2-color its orientations (chi of an odd cycle is 3).
    """
    if k < 3:
        raise InputError(f"k must be >= 3, got {k}")
    if modulus % 2 == 0:
        raise InputError(
            f"alternation obstruction applies to odd moduli, got {modulus}"
        )
    palette = 2 * k - 2
    report = VerificationReport(
        "alternation", {"k": k, "modulus": modulus, "palette": palette}
    )
    q = build_quotient(MarkedGroupSpec(k, twisted=True), modulus)
    from .errors import UndecidedError

    try:
        found = find_coloring(q.graph, palette, budget=budget)
    except UndecidedError:
        report.undecided = True
        return report
    if found is not None:
        report.record_violation(
            {"coloring": list(found.colors), "reason": "unexpected proper coloring"}
        )
        return report
    report.notes.append(
        f"search: no proper {palette}-coloring of the {q.graph.n}-vertex quotient"
    )
    cycle = FiniteGraph(modulus, [(i, (i + 1) % modulus) for i in range(modulus)])
    odd_cycle_chi = chromatic_info(cycle).value
    if odd_cycle_chi != 3:
        raise InvariantViolation("odd cycle chromatic number sanity check failed")
    report.notes.append(
        "parity: layer orientations would alternate across every twisted "
        f"layer boundary, but a {modulus}-cycle admits no proper 2-coloring "
        f"(its chromatic number is {odd_cycle_chi})"
    )
    report.count = 1
    return report


def verify_even_quotient_isomorphism(k: int, modulus: int) -> VerificationReport:
    """Check the coordinate-swap-on-odd-levels map is a graph isomorphism
    between the twisted and plain quotients (even modulus keeps level
    parity well defined)."""
    if modulus % 2 != 0:
        raise InputError(
            f"the swap map needs an even modulus to be well defined, got {modulus}"
        )
    plain = build_quotient(MarkedGroupSpec(k), modulus)
    twisted = build_quotient(MarkedGroupSpec(k, twisted=True), modulus)
    report = VerificationReport(
        "even-quotient-isomorphism", {"k": k, "modulus": modulus}
    )

    def image(v: int) -> int:
        a, b, n = twisted.graph.labels[v]
        e = untwist(GroupElement(a, b, n))
        return plain.index(e.a, e.b, e.n)

    mapped = {tuple(sorted((image(u), image(v)))) for u, v in twisted.graph.edges()}
    plain_edges = {tuple(sorted(e)) for e in plain.graph.edges()}
    if mapped != plain_edges:
        missing = sorted(plain_edges - mapped)[:5]
        extra = sorted(mapped - plain_edges)[:5]
        report.record_violation({"missing": missing, "extra": extra})
        return report
    if len(mapped) != twisted.graph.edge_count:
        report.record_violation({"reason": "map not injective on edges"})
        return report
    report.count = len(mapped)
    report.notes.append(
        f"swap map carries all {len(mapped)} twisted edges onto the plain "
        "edge set bijectively"
    )
    return report
