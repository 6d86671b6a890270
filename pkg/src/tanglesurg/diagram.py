"""Planar diagrams: PD codes, component tracing, orientation, and crossing invariants.

PD convention
-------------
Each crossing is a 4-tuple of arc ids listed counterclockwise, starting
from the incoming under-strand.  Slots 0 and 2 carry the under-strand,
slots 1 and 3 the over-strand.  Seen from slot 0 (south, pointing north)
slot 1 lies east and slot 3 west.  A crossing is positive (right-hand
rule) when the over-strand enters at slot 3, i.e. runs west to east.

Arcs run between crossing slots; a tangle diagram additionally has open
ends at the four boundary points.  Crossingless closed loops cannot be
written as arcs and are counted in ``free_loops``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .endpoints import ENDPOINTS, as_label
from .errors import DomainError, ResourceError, StructureError
from .polynomial import LaurentPolynomial

MAX_BRACKET_CROSSINGS = 24
_END_NAMES = tuple(e.value for e in ENDPOINTS)


def _end_ref(name: str) -> int:
    return -(_END_NAMES.index(name) + 1)


def _end_name(ref: int) -> str:
    return _END_NAMES[-ref - 1]


@dataclass(frozen=True)
class PDCode:
    """A planar diagram code, closed or with four open ends.

    ``tags`` and ``frames`` are optional per-crossing provenance produced by
    the tangle compiler (which sub-tangle a crossing came from, and the
    compass position of each slot in that sub-tangle's own frame).  They
    take no part in equality.
    """

    crossings: tuple = ()
    open_ends: Mapping[str, int] | None = None
    free_loops: int = 0
    tags: tuple | None = field(default=None, compare=False, repr=False)
    frames: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        try:
            xs = tuple(tuple(int(a) for a in x) for x in self.crossings)
        except (TypeError, ValueError) as exc:
            raise StructureError(f"crossings must be 4-tuples of integers: {exc}") from None
        if any(len(x) != 4 for x in xs):
            raise StructureError("every crossing must list exactly four arcs")
        object.__setattr__(self, "crossings", xs)
        if self.open_ends is not None:
            try:
                ends = {as_label(k).value: int(v) for k, v in dict(self.open_ends).items()}
            except ValueError as exc:
                raise StructureError(f"bad open end: {exc}") from None
            object.__setattr__(self, "open_ends", ends or None)
        if self.free_loops < 0:
            raise StructureError("free_loops must be non-negative")
        for name, seq in (("tags", self.tags), ("frames", self.frames)):
            if seq is not None:
                seq = tuple(tuple(f) if name == "frames" else f for f in seq)
                if len(seq) != len(xs):
                    raise StructureError(f"{name} must have one entry per crossing")
                object.__setattr__(self, name, seq)

    def __hash__(self):
        ends = tuple(sorted(self.open_ends.items())) if self.open_ends else None
        return hash((self.crossings, ends, self.free_loops))

    def __len__(self):
        return len(self.crossings)

    @property
    def is_closed(self) -> bool:
        return not self.open_ends

    def arcs(self) -> list[int]:
        ids = {a for x in self.crossings for a in x}
        if self.open_ends:
            ids.update(self.open_ends.values())
        return sorted(ids)

    def with_meta(self, tags=None, frames=None) -> "PDCode":
        return PDCode(self.crossings, self.open_ends, self.free_loops, tags, frames)

    def to_json(self) -> dict:
        out = {
            "crossings": [list(x) for x in self.crossings],
            "open_ends": {k: self.open_ends[k] for k in _END_NAMES if k in self.open_ends}
            if self.open_ends
            else None,
        }
        if self.free_loops:
            out["free_loops"] = self.free_loops
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "PDCode":
        if "crossings" not in data:
            raise StructureError("PD document needs a 'crossings' list")
        return cls(data["crossings"], data.get("open_ends"), int(data.get("free_loops", 0)))


class ComponentTrace(NamedTuple):
    count: int
    labels: dict  # arc id -> component label (minimum arc id on the component)


@dataclass(frozen=True)
class OrientedDiagram:
    """A PD code whose tuples start at the incoming under-strand, plus the traced orientation.

    ``direction`` maps each arc to its (tail, head) slot references; a slot
    reference is ``4*i + k`` for slot ``k`` of crossing ``i`` or a negative
    number for an open end.
    """

    pd: PDCode
    over_in: tuple
    direction: Mapping[int, tuple[int, int]]
    component_of: Mapping[int, int]
    strands: tuple  # per component, the ordered arcs along the orientation

    @property
    def components(self) -> tuple[int, ...]:
        return tuple(min(s) if s else -1 for s in self.strands)

    def strand(self, label: int) -> tuple[int, ...]:
        for s in self.strands:
            if s and min(s) == label:
                return s
        raise DomainError(f"unknown component label {label}")


# ---------------------------------------------------------------------------
# tracing


def _occurrences(pd: PDCode) -> dict[int, list[int]]:
    occ: dict[int, list[int]] = defaultdict(list)
    for i, x in enumerate(pd.crossings):
        for k, a in enumerate(x):
            occ[a].append(4 * i + k)
    if pd.open_ends:
        for name, a in pd.open_ends.items():
            occ[a].append(_end_ref(name))
    bad = sorted(a for a, refs in occ.items() if len(refs) != 2)
    if bad:
        raise StructureError(f"arc ids must occur exactly twice; offending arcs: {bad[:8]}")
    return dict(occ)


def _walk(pd: PDCode, occ, arc: int, tail: int) -> list[tuple[int, int, int]]:
    """Follow a strand from ``arc`` entered at ``tail``; returns (arc, tail, head) passages."""
    path = []
    start = (arc, tail)
    while True:
        r1, r2 = occ[arc]
        head = r2 if r1 == tail else r1
        path.append((arc, tail, head))
        if head < 0:
            break
        i, k = divmod(head, 4)
        tail = 4 * i + (k + 2) % 4
        arc = pd.crossings[i][(k + 2) % 4]
        if (arc, tail) == start:
            break
    return path


def _ref_key(pd: PDCode):
    if pd.frames is None:
        return lambda ref: (ref // 4, ref % 4) if ref >= 0 else (-1, -ref)
    order = {"NW": 0, "SW": 1, "SE": 2, "NE": 3}
    return lambda ref: (ref // 4, order[pd.frames[ref // 4][ref % 4]]) if ref >= 0 else (-1, -ref)


def _default_walks(pd: PDCode, occ) -> list[list[tuple[int, int, int]]]:
    """Open strands first (from their lower-ordered end), then closed components."""
    walks, seen = [], set()
    if pd.open_ends:
        for name in _END_NAMES:
            a = pd.open_ends.get(name)
            if a is None or a in seen:
                continue
            w = _walk(pd, occ, a, _end_ref(name))
            seen.update(p[0] for p in w)
            walks.append(w)
    key = _ref_key(pd)
    for a in sorted(occ):
        if a in seen:
            continue
        w = _walk(pd, occ, a, min(occ[a], key=key))
        seen.update(p[0] for p in w)
        walks.append(w)
    return walks


def trace_components(pd: PDCode) -> ComponentTrace:
    """Count components (open strands and free loops included) and label every arc."""
    occ = _occurrences(pd)
    labels = {}
    walks = _default_walks(pd, occ)
    for w in walks:
        lab = min(p[0] for p in w)
        for p in w:
            labels[p[0]] = lab
    return ComponentTrace(len(walks) + pd.free_loops, labels)


def _reverse(walk):
    return [(a, h, t) for a, t, h in reversed(walk)]


def _orient(pd: PDCode, strict: bool, reverse: Iterable[int] = (), relabel: bool = False) -> OrientedDiagram:
    occ = _occurrences(pd)
    walks = _default_walks(pd, occ)
    flips = set(reverse)
    known = {min(p[0] for p in w) for w in walks}
    if flips - known:
        raise DomainError(f"unknown component label(s) {sorted(flips - known)}")
    oriented = []
    for w in walks:
        label = min(p[0] for p in w)
        if strict:
            under = {h % 4 for _, _, h in w if h >= 0 and h % 2 == 0}
            if under == {2}:
                w = _reverse(w)
            elif len(under) > 1:
                raise StructureError(
                    f"component {label} enters its under-crossings inconsistently; "
                    "slot 0 must always be the incoming under-strand"
                )
        if label in flips:
            w = _reverse(w)
        oriented.append(w)

    rot = [False] * len(pd.crossings)
    for w in oriented:
        for _, _, h in w:
            if h >= 0 and h % 4 == 2:
                rot[h // 4] = True

    def remap(ref):
        if ref < 0:
            return ref
        i, k = divmod(ref, 4)
        return 4 * i + ((k + 2) % 4 if rot[i] else k)

    crossings = [x[2:] + x[:2] if r else x for x, r in zip(pd.crossings, rot)]
    frames = None
    if pd.frames is not None:
        frames = [f[2:] + f[:2] if r else f for f, r in zip(pd.frames, rot)]
    open_ends = dict(pd.open_ends) if pd.open_ends else None

    if relabel:
        new_id = {}
        for w in oriented:
            for a, _, _ in w:
                new_id[a] = len(new_id)
        crossings = [tuple(new_id[a] for a in x) for x in crossings]
        if open_ends:
            open_ends = {k: new_id[v] for k, v in open_ends.items()}
        oriented = [[(new_id[a], t, h) for a, t, h in w] for w in oriented]

    over_in = [0] * len(crossings)
    direction, component_of, strands = {}, {}, []
    for w in oriented:
        label = min(p[0] for p in w)
        strands.append(tuple(p[0] for p in w))
        for a, t, h in w:
            direction[a] = (remap(t), remap(h))
            component_of[a] = label
            if h >= 0 and remap(h) % 2 == 1:
                over_in[h // 4] = remap(h) % 4
    new_pd = PDCode(crossings, open_ends, pd.free_loops, pd.tags, frames)
    return OrientedDiagram(new_pd, tuple(over_in), direction, component_of, tuple(strands))


def orient(pd: PDCode, reverse: Iterable[int] = ()) -> OrientedDiagram:
    """Orient ``pd`` following its own slot-0 convention.

    Components that never pass under take a deterministic default
    direction.  Labels listed in ``reverse`` are then reversed, which
    rotates their under-crossing tuples by two slots.
    """
    return _orient(pd, strict=True, reverse=reverse)


def canonicalize(pd: PDCode) -> PDCode:
    """Choose default orientations, rotate tuples to match, and renumber arcs along the strands.

    Arc ids become consecutive integers in traversal order: open strands
    first (from the lower-ordered endpoint, NW < NE < SW < SE), then closed
    components.  Deterministic for a fixed diagram layout.
    """
    return _orient(pd, strict=False, relabel=True).pd


# ---------------------------------------------------------------------------
# crossing invariants


def crossing_sign(od: OrientedDiagram, crossing: int) -> int:
    """+1 for a right-handed crossing, -1 for a left-handed one."""
    return 1 if od.over_in[crossing] == 3 else -1


def writhe(od: OrientedDiagram) -> int:
    return sum(crossing_sign(od, i) for i in range(len(od.pd.crossings)))


def linking_number(od: OrientedDiagram, comp_a: int, comp_b: int) -> int:
    """Half the signed count of crossings between two distinct components."""
    labels = set(od.components)
    for c in (comp_a, comp_b):
        if c not in labels:
            raise DomainError(f"unknown component label {c}")
    if comp_a == comp_b:
        raise DomainError("linking number needs two distinct components")
    total = 0
    for i, x in enumerate(od.pd.crossings):
        pair = {od.component_of[x[0]], od.component_of[x[1]]}
        if pair == {comp_a, comp_b}:
            total += crossing_sign(od, i)
    if total % 2:
        raise DomainError("odd mutual crossing count; components must be closed")
    return total // 2


def relative_linking(od: OrientedDiagram, tau: Iterable[int], gamma: Iterable[int]) -> int:
    """Sum of signs of the crossings at which a ``gamma`` arc passes under a ``tau`` arc.

    Crossings where ``gamma`` passes over ``tau`` contribute nothing.  Both
    arguments are arc-id sets and may describe open strands.
    """
    tau, gamma = set(tau), set(gamma)
    if tau & gamma:
        raise DomainError(f"tau and gamma share arcs {sorted(tau & gamma)}")
    total = 0
    for i, x in enumerate(od.pd.crossings):
        if (x[0] in gamma or x[2] in gamma) and (x[1] in tau or x[3] in tau):
            total += crossing_sign(od, i)
    return total


def mirror_pd(pd: PDCode) -> PDCode:
    """Switch every crossing, keeping arc ids and the orientation of ``pd``."""
    od = orient(pd)
    xs, fs = [], []
    for i, x in enumerate(od.pd.crossings):
        shift = 1 if od.over_in[i] == 1 else 3
        xs.append(x[shift:] + x[:shift])
        if od.pd.frames is not None:
            f = od.pd.frames[i]
            fs.append(f[shift:] + f[:shift])
    return PDCode(xs, od.pd.open_ends, pd.free_loops, pd.tags, fs if od.pd.frames is not None else None)


# ---------------------------------------------------------------------------
# Kauffman bracket


def _loop_value() -> LaurentPolynomial:
    return LaurentPolynomial({2: -1, -2: -1})


def _assemble(counts: Mapping[tuple[int, int], int], c: int, free_loops: int) -> LaurentPolynomial:
    d = _loop_value()
    powers: dict[int, LaurentPolynomial] = {}
    total = LaurentPolynomial()
    for (a, loops), n in sorted(counts.items()):
        k = loops + free_loops - 1
        if k not in powers:
            powers[k] = d**k
        total = total + powers[k].shift(2 * a - c) * n
    return total


def _closed_check(pd: PDCode):
    if pd.open_ends:
        raise StructureError("the bracket needs a closed diagram")
    c = len(pd.crossings)
    if c > MAX_BRACKET_CROSSINGS:
        raise ResourceError(f"{c} crossings exceeds the state-sum cap of {MAX_BRACKET_CROSSINGS}")
    return c


def bracket_reference(pd: PDCode) -> LaurentPolynomial:
    """Plain per-state union-find state sum.  Slow; used as an oracle for small diagrams."""
    c = _closed_check(pd)
    occ = _occurrences(pd)
    if c == 0:
        return _loop_value() ** (pd.free_loops - 1) if pd.free_loops else LaurentPolynomial.one()
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for state in range(1 << c):
        parent = list(range(4 * c))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def union(u, v):
            parent[find(u)] = find(v)

        for r1, r2 in occ.values():
            union(r1, r2)
        a = 0
        for i in range(c):
            if state >> i & 1:
                a += 1
                union(4 * i, 4 * i + 1)
                union(4 * i + 2, 4 * i + 3)
            else:
                union(4 * i, 4 * i + 3)
                union(4 * i + 1, 4 * i + 2)
        loops = len({find(u) for u in range(4 * c)})
        counts[(a, loops)] += 1
    return _assemble(counts, c, pd.free_loops)


def _count_cycles(perm: np.ndarray) -> np.ndarray:
    """Cycles of each row permutation, by pointer jumping on a flattened index."""
    rows, n = perm.shape
    p = (perm + (np.arange(rows, dtype=np.int32) * n)[:, None]).ravel()
    label = np.tile(np.arange(n, dtype=np.int16), rows)
    span = 1
    while span < n:
        label = np.minimum(label, label[p])
        p = p[p]
        span *= 2
    return (label.reshape(rows, n) == np.arange(n, dtype=np.int16)).sum(axis=1)


def kauffman_bracket(pd: PDCode, chunk: int = 1 << 11) -> LaurentPolynomial:
    """State-sum bracket in ``A``: <O> = 1, A-smoothing joins slots (0,1),(2,3).

    All 2**c states are enumerated in vectorised chunks; loops of a state
    are the cycles of (smoothing matching) o (arc matching), each loop
    counted twice.  Integer arithmetic throughout, so the result does not
    depend on the chunking.  Results are cached per PD code.
    """
    return _bracket_cached(pd, chunk)


@lru_cache(maxsize=64)
def _bracket_cached(pd: PDCode, chunk: int) -> LaurentPolynomial:
    c = _closed_check(pd)
    occ = _occurrences(pd)
    if c == 0:
        return _loop_value() ** (pd.free_loops - 1) if pd.free_loops else LaurentPolynomial.one()
    n = 4 * c
    arc_partner = np.empty(n, dtype=np.int32)
    for r1, r2 in occ.values():
        arc_partner[r1] = r2
        arc_partner[r2] = r1
    slot = np.tile(np.arange(4), c)
    base = np.repeat(np.arange(c), 4) * 4
    partner_a = (base + (slot ^ 1)).astype(np.int32)
    partner_b = (base + (3 - slot)).astype(np.int32)
    shifts = np.arange(c, dtype=np.int64)
    width = 2 * c + 1
    hist = np.zeros((c + 1) * width, dtype=np.int64)
    total = 1 << c
    for start in range(0, total, chunk):
        states = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = ((states[:, None] >> shifts) & 1).astype(bool)
        smooth = np.where(np.repeat(bits, 4, axis=1), partner_a, partner_b)
        perm = smooth[:, arc_partner]
        loops = _count_cycles(perm) // 2
        acount = bits.sum(axis=1)
        hist += np.bincount(acount * width + loops, minlength=hist.size)
    counts = {(int(k) // width, int(k) % width): int(v) for k, v in enumerate(hist) if v}
    return _assemble(counts, c, pd.free_loops)


def jones(od: OrientedDiagram) -> LaurentPolynomial:
    """Jones polynomial (-A^3)^(-writhe) <D> at A = t^(-1/4); exponents in quarter units of t."""
    w = writhe(od)
    normalized = kauffman_bracket(od.pd).shift(-3 * w) * (-1 if w % 2 else 1)
    return LaurentPolynomial({-e: c for e, c in normalized.items()}, denominator=4, variable="t")

