"""Relative index i(F, Q) = chi(F) - a(F, Q)/2 of a surface piece, and its bookkeeping laws.

Indices are half-integers, so every function here works with the doubled
value 2*i, which is an ordinary integer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ContractError, DomainError, StructureError

PatchLabel = str


def _counts(m: Mapping | None, what: str) -> dict:
    out = {}
    for k, v in dict(m or {}).items():
        v = int(v)
        if v < 0:
            raise DomainError(f"{what} for patch {k!r} must be non-negative, got {v}")
        if v:
            out[str(k)] = v
    return out


@dataclass(frozen=True)
class SurfacePiece:
    """Euler characteristic plus per-patch counts of boundary arcs and circles."""

    euler_char: int
    arc_counts: Mapping[str, int] = field(default_factory=dict)
    circle_counts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "euler_char", int(self.euler_char))
        object.__setattr__(self, "arc_counts", _counts(self.arc_counts, "arc count"))
        object.__setattr__(self, "circle_counts", _counts(self.circle_counts, "circle count"))

    def __hash__(self):
        return hash((self.euler_char, tuple(sorted(self.arc_counts.items())), tuple(sorted(self.circle_counts.items()))))

    def arcs(self, patch: str) -> int:
        return self.arc_counts.get(patch, 0)

    def __add__(self, other: "SurfacePiece") -> "SurfacePiece":
        """Disjoint union."""
        arcs = dict(self.arc_counts)
        circles = dict(self.circle_counts)
        for k, v in other.arc_counts.items():
            arcs[k] = arcs.get(k, 0) + v
        for k, v in other.circle_counts.items():
            circles[k] = circles.get(k, 0) + v
        return SurfacePiece(self.euler_char + other.euler_char, arcs, circles)

    def to_json(self) -> dict:
        return {
            "euler_char": self.euler_char,
            "arc_counts": dict(sorted(self.arc_counts.items())),
            "circle_counts": dict(sorted(self.circle_counts.items())),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SurfacePiece":
        if "euler_char" not in data:
            raise StructureError("surface piece needs 'euler_char'")
        return cls(data["euler_char"], data.get("arc_counts", {}), data.get("circle_counts", {}))


def _patch_set(patches) -> set[str]:
    return {patches} if isinstance(patches, str) else set(patches)


def index(piece: SurfacePiece, patches: Iterable[str] | str) -> int:
    """Doubled index 2*i(F, Q) = 2 chi(F) - a(F, Q), with Q the union of ``patches``."""
    return 2 * piece.euler_char - sum(piece.arcs(p) for p in _patch_set(patches))


def index_value(piece: SurfacePiece, patches) -> Fraction:
    """The index itself, as an exact rational."""
    return Fraction(index(piece, patches), 2)


def cut_labels(q_prime: str) -> tuple[str, str]:
    """Names of the two copies of Q' left behind by a cut."""
    return f"{q_prime}_1", f"{q_prime}_2"


def cut_along(piece: SurfacePiece, q_prime: str, k: int, c: int = 0) -> SurfacePiece:
    """Cut along a surface Q' meeting the piece in ``k`` arcs and ``c`` circles.

    Each arc cut raises chi by one and leaves a copy of the arc on both
    Q'_1 and Q'_2.  Circles are recorded on both copies but do not change
    chi.  The doubled index relative to Q + Q'_1 + Q'_2 equals the old one
    relative to Q.
    """
    if k < 0 or c < 0:
        raise DomainError("arc and circle counts of a cut must be non-negative")
    q1, q2 = cut_labels(q_prime)
    if any(lbl in piece.arc_counts or lbl in piece.circle_counts for lbl in (q1, q2)):
        raise DomainError(f"patch {q_prime!r} has already been cut")
    arcs = dict(piece.arc_counts)
    circles = dict(piece.circle_counts)
    for lbl in (q1, q2):
        arcs[lbl] = k
        circles[lbl] = c
    return SurfacePiece(piece.euler_char + k, arcs, circles)


def additivity_check(whole, part1, part2, q, q1, q2) -> bool:
    """True iff 2 i(whole, q) = 2 i(part1, q1) + 2 i(part2, q2)."""
    return index(whole, q) == index(part1, q1) + index(part2, q2)


# ---------------------------------------------------------------------------
# fat graphs


@dataclass(frozen=True)
class FatGraph:
    """Fat vertices (disks) joined by band edges; ``faces`` are the complementary pieces.

    ``patch`` names the distinguished boundary patch U; each face records its
    corners against U as ``arc_counts[patch]``.
    """

    vertex_count: int
    arc_edges: tuple = ()
    circle_edge_count: int = 0
    faces: tuple = ()
    patch: str = "U"

    def __post_init__(self):
        object.__setattr__(self, "arc_edges", tuple((int(a), int(b)) for a, b in self.arc_edges))
        object.__setattr__(self, "faces", tuple(self.faces))
        if self.vertex_count < 0 or self.circle_edge_count < 0:
            raise DomainError("vertex and circle-edge counts must be non-negative")
        for a, b in self.arc_edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise StructureError(f"edge ({a}, {b}) names a missing vertex")

    def valences(self) -> list[int]:
        val = [0] * self.vertex_count
        for a, b in self.arc_edges:
            val[a] += 1
            val[b] += 1
        return val

    def disjoint_union(self, other: "FatGraph") -> "FatGraph":
        off = self.vertex_count
        return FatGraph(
            self.vertex_count + other.vertex_count,
            self.arc_edges + tuple((a + off, b + off) for a, b in other.arc_edges),
            self.circle_edge_count + other.circle_edge_count,
            self.faces + other.faces,
            self.patch,
        )


def fat_graph_index_sum(g: FatGraph) -> int:
    """Sum of doubled face indices relative to U, after checking the counting identities.

    With every vertex of valence 4 we have E = 2V, and the corners on U
    number C = 2V.  Together with 0 = V - E + sum chi(F_j) these force
    sum 2 i(F_j, U) = 2(E - V) - C = 0.
    """
    V, E = g.vertex_count, len(g.arc_edges)
    bad = [v for v, d in enumerate(g.valences()) if d != 4]
    if bad:
        raise ContractError("valence-4", f"vertices {bad[:8]} do not have valence 4")
    if E != 2 * V:
        raise ContractError("E=2V", f"{E} arc edges for {V} vertices")
    C = sum(f.arcs(g.patch) for f in g.faces)
    if C != 2 * V:
        raise ContractError("C=2V", f"{C} corners on {g.patch} for {V} vertices")
    chi = sum(f.euler_char for f in g.faces)
    if V - E + chi != 0:
        raise ContractError("euler", f"V - E + sum chi = {V - E + chi}, expected 0")
    return sum(index(f, g.patch) for f in g.faces)


def fat_graph_from_rotation(rotation, mate, u_parity, patch: str = "U", circle_edges: int = 0) -> FatGraph:
    """Build a fat graph from a rotation system.

    ``rotation[v]`` lists the four half-edge ids around vertex v in cyclic
    order, ``mate`` pairs half-edges into edges, and ``u_parity[v]`` picks
    which two alternating corners of v lie on U.  Faces are traced as
    disks; a corner between positions j and j+1 of v lies on U when
    j % 2 == u_parity[v].
    """
    where = {}
    for v, hs in enumerate(rotation):
        for j, h in enumerate(hs):
            where[h] = (v, j)
    edges, seen = [], set()
    for h, h2 in mate.items():
        if h not in seen:
            seen.update((h, h2))
            edges.append((where[h][0], where[h2][0]))
    faces, used = [], set()
    for start in where:
        if start in used:
            continue
        corners, h = 0, start
        while h not in used:
            used.add(h)
            v, j = where[mate[h]]
            if j % 2 == u_parity[v]:
                corners += 1
            h = rotation[v][(j + 1) % 4]
        faces.append(SurfacePiece(1, {patch: corners}))
    return FatGraph(len(rotation), tuple(edges), circle_edges, tuple(faces), patch)


def genus(g: FatGraph) -> Fraction:
    """Genus of the closed surface V - E + F = 2 - 2g, with faces counted by chi."""
    return Fraction(2 - (g.vertex_count - len(g.arc_edges) + sum(f.euler_char for f in g.faces)), 2)


def random_torus_fat_graph(rng: random.Random, max_vertices: int = 8, patch: str = "U") -> FatGraph:
    """A random valence-4 fat graph whose faces are disks on a torus (rejection sampling)."""
    while True:
        V = rng.randint(1, max_vertices)
        halves = list(range(4 * V))
        rng.shuffle(halves)
        mate = {}
        for a, b in zip(halves[::2], halves[1::2]):
            mate[a], mate[b] = b, a
        rotation = [[4 * v + j for j in range(4)] for v in range(V)]
        for hs in rotation:
            rng.shuffle(hs)
        g = fat_graph_from_rotation(rotation, mate, [rng.randint(0, 1) for _ in range(V)], patch, rng.randint(0, 3))
        if genus(g) == 1:
            return g
