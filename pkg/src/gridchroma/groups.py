"""Exact arithmetic for the two marked groups behind the tower graphs.

Both groups share the carrier set (Z_k x Z_k) x Z.  The plain group is the
direct product; the twisted group applies the coordinate swap
(a, b) -> (b, a) to the right factor's grid part once whenever the left
factor carries an odd shift.  Both are marked with the generating set

    {(s1, s2) : 0 < s1, s2 < k} x {-1, 0, +1}

which has 3(k-1)^2 elements, is closed under inversion, and excludes the
identity.  Downstream graph builders always use the edge convention
"x adjacent to y iff y = s * x for some generator s" (left multiplication
by generators); the graph automorphisms realizing vertex transitivity are
therefore right multiplications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import InputError


class GroupElement(NamedTuple):
    """An element ((a, b), n): grid part mod k, integer shift part."""

    a: int
    b: int
    n: int


class Generator(NamedTuple):
    """A generator ((s1, s2), eps) with s1, s2 nonzero and eps in {-1,0,+1}."""

    s1: int
    s2: int
    eps: int


IDENTITY = GroupElement(0, 0, 0)


@dataclass(frozen=True)
class MarkedGroupSpec:
    """Grid modulus k plus the choice between plain and twisted product."""

    k: int
    twisted: bool = False

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 3:
            raise InputError(f"grid modulus must be an integer >= 3, got {self.k!r}")

    @property
    def degree(self) -> int:
        """Size of the generating set, 3(k-1)^2."""
        return 3 * (self.k - 1) ** 2

    @property
    def name(self) -> str:
        return f"{'twisted' if self.twisted else 'plain'}(k={self.k})"


def element(spec: MarkedGroupSpec, a: int, b: int, n: int) -> GroupElement:
    """Build an element with the grid part reduced mod k."""
    return GroupElement(a % spec.k, b % spec.k, n)


def multiply(spec: MarkedGroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    """Group product g * h.

    Plain: componentwise addition.  Twisted: the grid part of h is swapped
    iff the shift part of g is odd, then added to g's grid part; shift
    parts add.
    """
    a, b = h.a, h.b
    if spec.twisted and g.n % 2 != 0:
        a, b = b, a
    return GroupElement((g.a + a) % spec.k, (g.b + b) % spec.k, g.n + h.n)


def inverse(spec: MarkedGroupSpec, g: GroupElement) -> GroupElement:
    """The unique element whose product with g (either side) is the identity."""
    a, b = (-g.a) % spec.k, (-g.b) % spec.k
    if spec.twisted and g.n % 2 != 0:
        a, b = b, a
    return GroupElement(a, b, -g.n)


def generators(spec: MarkedGroupSpec) -> list[Generator]:
    """All 3(k-1)^2 generators, in (s1, s2, eps) lexicographic order."""
    k = spec.k
    return [
        Generator(s1, s2, eps)
        for s1 in range(1, k)
        for s2 in range(1, k)
        for eps in (-1, 0, 1)
    ]


def generator_element(gen: Generator) -> GroupElement:
    return GroupElement(gen.s1, gen.s2, gen.eps)


def neighbors(spec: MarkedGroupSpec, x: GroupElement) -> Iterator[GroupElement]:
    """All s * x over the generating set; yields 3(k-1)^2 elements."""
    for gen in generators(spec):
        yield multiply(spec, generator_element(gen), x)


def untwist(g: GroupElement) -> GroupElement:
    """Swap the grid coordinates on odd shift levels; fix even levels.

    This involution carries the twisted group's Cayley adjacency onto the
    plain group's Cayley adjacency and back, so the two Cayley graphs are
    isomorphic even though the groups are not.
    """
    if g.n % 2 != 0:
        return GroupElement(g.b, g.a, g.n)
    return g
