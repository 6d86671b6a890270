"""Rational tangles, tangle sums, bottom twists, mirrors, and gluing two tangles into a link.

Diagram layout
--------------
The zero tangle is two horizontal arcs (NW-NE and SW-SE), the infinity
tangle two vertical arcs (NW-SW and NE-SE).  A horizontal twist adds a
crossing between the NE and SE ends (fraction F -> F + s); a vertical
twist adds one between the SW and SE ends (F -> 1/(1/F + s)).  In both
cases the "+1" crossing has the SW-NE strand on top.

Expressions compile to :class:`TangleDiagram`; every crossing keeps a tag
naming the sub-expression it came from and, per slot, its compass
position inside that sub-expression's own frame.  The classifier uses
both to find the T(+-1/2) strings of a glued knot.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import diagram as dg
from .diagram import PDCode
from .endpoints import (
    CYCLIC,
    ENDPOINTS,
    REFLECT_Y_AXIS,
    ROTATE_CCW,
    EndpointLabel,
    apply_linear,
    as_label,
)
from .errors import DomainError, StructureError

NW, NE, SW, SE = ENDPOINTS


# ---------------------------------------------------------------------------
# slopes


@dataclass(frozen=True)
class Slope:
    """A reduced fraction p/q with q >= 1.  Use :data:`INFINITY` for 1/0."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        p, q = int(self.numerator), int(self.denominator)
        if q == 0:
            raise DomainError("denominator 0 is reserved for the INFINITY constant")
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        object.__setattr__(self, "numerator", p // g)
        object.__setattr__(self, "denominator", q // g)

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise DomainError("the infinity slope has no rational value")
        return Fraction(self.numerator, self.denominator)

    def __neg__(self):
        return self if self.is_infinite else Slope(-self.numerator, self.denominator)

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"

    @classmethod
    def parse(cls, text: str) -> "Slope":
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?", text)
        if not m:
            raise StructureError(f"cannot parse slope {text!r}")
        p, q = int(m.group(1)), int(m.group(2) or 1)
        if q == 0:
            if abs(p) != 1:
                raise StructureError("the infinity slope is written 1/0")
            return INFINITY
        return cls(p, q)


def _make_infinity() -> Slope:
    s = object.__new__(Slope)
    object.__setattr__(s, "numerator", 1)
    object.__setattr__(s, "denominator", 0)
    return s


INFINITY = _make_infinity()
ZERO = Slope(0, 1)


def continued_fraction(s: Slope) -> list[int]:
    """Terms [a1, ..., ak] with s = 1/(a1 + 1/(a2 + ... + 1/ak)); [] for 0.

    Terms share the sign of s, so negating s negates every term.
    """
    if s.is_infinite:
        raise DomainError("the infinity slope has no continued fraction")
    p, q = s.numerator, s.denominator
    if p == 0:
        return []
    num, den = q, abs(p)
    terms = []
    while den:
        a, rem = divmod(num, den)
        terms.append(a)
        num, den = den, rem
    return [-a for a in terms] if p < 0 else terms


def evaluate_continued_fraction(terms) -> Fraction:
    """Inverse of :func:`continued_fraction`, in exact arithmetic."""
    value = None  # None stands for the reciprocal of an empty tail, i.e. infinity
    for a in reversed(list(terms)):
        denom = a if value is None else a + value
        if denom == 0:
            raise DomainError("expansion passes through infinity")
        value = Fraction(1, 1) / denom
    return Fraction(0) if value is None else value


# ---------------------------------------------------------------------------
# expression trees


class TangleExpr:
    """Base class of the expression nodes."""

    def __str__(self):  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class Rational(TangleExpr):
    slope: Slope

    def __post_init__(self):
        s = self.slope
        if not (s.is_infinite or s.numerator == 0 or s.denominator >= 2):
            raise DomainError(f"rational leaves need denominator >= 2 (or the 0 / infinity tangle), got {s}")

    def __str__(self):
        return f"T({self.slope})"


@dataclass(frozen=True)
class Sum(TangleExpr):
    left: TangleExpr
    right: TangleExpr

    def __str__(self):
        return f"sum({self.left},{self.right})"


@dataclass(frozen=True)
class BottomTwist(TangleExpr):
    inner: TangleExpr
    half_twists: int

    def __str__(self):
        return f"twist({self.inner},{self.half_twists})"


@dataclass(frozen=True)
class Mirror(TangleExpr):
    inner: TangleExpr

    def __str__(self):
        return f"mirror({self.inner})"


def tangle(p: int, q: int = 1) -> Rational:
    return Rational(Slope(p, q))


def tangle_sum(t1: TangleExpr, t2: TangleExpr) -> Sum:
    return Sum(t1, t2)


def bottom_twist(t: TangleExpr, k: int) -> TangleExpr:
    """Add ``k`` left-handed half twists to the two lower endpoints (right-handed if k < 0)."""
    return t if k == 0 else BottomTwist(t, int(k))


def montesinos(r1: Slope, r2: Slope, n: int = 0) -> TangleExpr:
    """T(r1, r2; n): the sum T(r1) + T(r2) followed by n bottom half twists."""
    return bottom_twist(Sum(Rational(r1), Rational(r2)), n)


def mirror_tangle(t: TangleExpr) -> TangleExpr:
    """Mirror image, pushed down to the leaves: p/q -> -p/q and k -> -k."""
    if isinstance(t, Rational):
        return Rational(-t.slope)
    if isinstance(t, Sum):
        return Sum(mirror_tangle(t.left), mirror_tangle(t.right))
    if isinstance(t, BottomTwist):
        return BottomTwist(mirror_tangle(t.inner), -t.half_twists)
    if isinstance(t, Mirror):
        return normalize(t.inner)
    raise StructureError(f"not a tangle expression: {t!r}")


def normalize(t: TangleExpr) -> TangleExpr:
    """Remove every Mirror node by pushing it to the leaves."""
    if isinstance(t, Mirror):
        return mirror_tangle(t.inner)
    if isinstance(t, Sum):
        return Sum(normalize(t.left), normalize(t.right))
    if isinstance(t, BottomTwist):
        return BottomTwist(normalize(t.inner), t.half_twists)
    return t


def crossing_count(t: TangleExpr) -> int:
    if isinstance(t, Rational):
        return 0 if t.slope.is_infinite else sum(abs(a) for a in continued_fraction(t.slope))
    if isinstance(t, Sum):
        return crossing_count(t.left) + crossing_count(t.right)
    if isinstance(t, BottomTwist):
        return crossing_count(t.inner) + abs(t.half_twists)
    if isinstance(t, Mirror):
        return crossing_count(t.inner)
    raise StructureError(f"not a tangle expression: {t!r}")


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(T|sum|twist|mirror)\b|([(),])|([+-]?\d+(?:\s*/\s*\d+)?))")


def parse_expr(text: str) -> TangleExpr:
    """Parse ``T(p/q)``, ``sum(e1,e2)``, ``twist(e,k)`` and ``mirror(e)``."""
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise StructureError(f"unexpected input at column {pos}: {text[pos:pos + 12]!r}")
        tokens.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    tokens = [t for t in tokens if t.strip()]
    i = 0

    def take(expected=None):
        nonlocal i
        if i >= len(tokens):
            raise StructureError("unexpected end of expression")
        tok = tokens[i]
        if expected is not None and tok != expected:
            raise StructureError(f"expected {expected!r}, found {tok!r}")
        i += 1
        return tok

    def expr():
        head = take()
        take("(")
        if head == "T":
            node = Rational(Slope.parse(take()))
        elif head == "sum":
            a = expr()
            take(",")
            node = Sum(a, expr())
        elif head == "twist":
            a = expr()
            take(",")
            k = take()
            if "/" in k:
                raise StructureError("twist counts are integers")
            node = bottom_twist(a, int(k))
        elif head == "mirror":
            node = mirror_tangle(expr())
        else:
            raise StructureError(f"unknown constructor {head!r}")
        take(")")
        return node

    result = expr()
    if i != len(tokens):
        raise StructureError(f"trailing input after expression: {tokens[i]!r}")
    return result


# ---------------------------------------------------------------------------
# diagram construction


class _Raw:
    """Mutable scratch diagram used while compiling; never escapes this module."""

    def __init__(self):
        self.crossings: list[list[int]] = []
        self.frames: list[list[str]] = []
        self.tags: list[str] = []
        self.ends: dict = {}
        self.free_loops = 0
        self.next_arc = 0

    def arc(self) -> int:
        self.next_arc += 1
        return self.next_arc - 1

    def add(self, arcs, frames, tag):
        self.crossings.append(list(arcs))
        self.frames.append(list(frames))
        self.tags.append(tag)

    def rename(self, old: int, new: int):
        for x in self.crossings:
            for k, a in enumerate(x):
                if a == old:
                    x[k] = new
        for key, a in self.ends.items():
            if a == old:
                self.ends[key] = new

    def join(self, k1, k2):
        a, b = self.ends.pop(k1), self.ends.pop(k2)
        if a == b:
            self.free_loops += 1
        else:
            self.rename(b, a)

    def absorb(self, other: "_Raw", key) -> None:
        off = self.next_arc
        self.crossings += [[a + off for a in x] for x in other.crossings]
        self.frames += [list(f) for f in other.frames]
        self.tags += other.tags
        for k, a in other.ends.items():
            self.ends[key(k)] = a + off
        self.free_loops += other.free_loops
        self.next_arc += other.next_arc

    def freeze(self) -> PDCode:
        return PDCode(
            [tuple(x) for x in self.crossings],
            {k.value: a for k, a in self.ends.items()} if self.ends else None,
            self.free_loops,
            tuple(self.tags),
            tuple(tuple(f) for f in self.frames),
        )


_PLUS_FRAMES = ("NW", "SW", "SE", "NE")
_MINUS_FRAMES = ("SW", "SE", "NE", "NW")


def _base(vertical: bool) -> _Raw:
    r = _Raw()
    a, b = r.arc(), r.arc()
    r.ends = {NW: a, SW: a, NE: b, SE: b} if vertical else {NW: a, NE: a, SW: b, SE: b}
    return r


def _twist_right(r: _Raw, sign: int, tag: str):
    x, y, u, v = r.ends[NE], r.ends[SE], r.arc(), r.arc()
    if sign > 0:
        r.add((x, y, v, u), _PLUS_FRAMES, tag)
    else:
        r.add((y, v, u, x), _MINUS_FRAMES, tag)
    r.ends[NE], r.ends[SE] = u, v


def _twist_bottom(r: _Raw, sign: int, tag: str):
    x, y, u, v = r.ends[SW], r.ends[SE], r.arc(), r.arc()
    if sign > 0:
        r.add((x, u, v, y), _PLUS_FRAMES, tag)
    else:
        r.add((u, v, y, x), _MINUS_FRAMES, tag)
    r.ends[SW], r.ends[SE] = u, v


def _rational_raw(s: Slope, tag: str) -> _Raw:
    if s.is_infinite:
        return _base(vertical=True)
    terms = continued_fraction(s)
    k = len(terms)
    r = _base(vertical=(k + 1) % 2 == 0)
    for j in range(k, 0, -1):
        a = terms[j - 1]
        step = _twist_right if j % 2 == 0 else _twist_bottom
        for _ in range(abs(a)):
            step(r, 1 if a > 0 else -1, tag)
    return r


def _sum_raw(r1: _Raw, r2: _Raw) -> _Raw:
    out = _Raw()
    out.absorb(r1, lambda k: ("L", k))
    out.absorb(r2, lambda k: ("R", k))
    out.join(("L", NE), ("R", NW))
    out.join(("L", SE), ("R", SW))
    out.ends = {
        NW: out.ends[("L", NW)],
        SW: out.ends[("L", SW)],
        NE: out.ends[("R", NE)],
        SE: out.ends[("R", SE)],
    }
    return out


def _compile_raw(t: TangleExpr, path: str = "") -> _Raw:
    if isinstance(t, Rational):
        return _rational_raw(t.slope, path + str(t))
    if isinstance(t, Sum):
        return _sum_raw(_compile_raw(t.left, path + "sum.0/"), _compile_raw(t.right, path + "sum.1/"))
    if isinstance(t, BottomTwist):
        r = _compile_raw(t.inner, path + "twist.0/")
        sign = -1 if t.half_twists > 0 else 1  # left-handed for positive k
        for _ in range(abs(t.half_twists)):
            _twist_bottom(r, sign, path + f"twist({t.half_twists})")
        return r
    if isinstance(t, Mirror):
        return _compile_raw(mirror_tangle(t.inner), path)
    raise StructureError(f"not a tangle expression: {t!r}")


Pairing = tuple  # ((label, label), (label, label)) as strings, sorted by ENDPOINTS order


def _normalize_pairing(pairs) -> Pairing:
    order = {e.value: i for i, e in enumerate(ENDPOINTS)}
    pp = [tuple(sorted((as_label(a).value, as_label(b).value), key=order.get)) for a, b in pairs]
    return tuple(sorted(pp, key=lambda p: order[p[0]]))


def end_pairing(pd: PDCode) -> Pairing:
    """Which boundary points are joined by a string, found by tracing."""
    if not pd.open_ends or len(pd.open_ends) != 4:
        raise StructureError("a tangle diagram needs exactly four open ends")
    occ = dg._occurrences(pd)
    pairs, seen = [], set()
    for name in (e.value for e in ENDPOINTS):
        if name in seen:
            continue
        walk = dg._walk(pd, occ, pd.open_ends[name], dg._end_ref(name))
        other = dg._end_name(walk[-1][2])
        seen.update((name, other))
        pairs.append((name, other))
    return _normalize_pairing(pairs)


@dataclass(frozen=True)
class TangleDiagram:
    """A compiled tangle: a PD code with the four open ends plus the traced string pairing."""

    pd: PDCode
    string_pairing: Pairing = field(default=None)

    def __post_init__(self):
        if not self.pd.open_ends or set(self.pd.open_ends) != {e.value for e in ENDPOINTS}:
            raise StructureError("a tangle diagram needs one open end per boundary label")
        traced = end_pairing(self.pd)
        if self.string_pairing is None:
            object.__setattr__(self, "string_pairing", traced)
        elif _normalize_pairing(self.string_pairing) != traced:
            raise StructureError("string_pairing disagrees with the traced diagram")

    @property
    def crossings(self):
        return self.pd.crossings

    @property
    def open_ends(self):
        return self.pd.open_ends

    @property
    def arcs(self):
        return self.pd.arcs()

    def to_json(self) -> dict:
        out = self.pd.to_json()
        out["string_pairing"] = [list(p) for p in self.string_pairing]
        return out


def compile_expr(t: TangleExpr) -> TangleDiagram:
    """Lay out ``t`` as a planar diagram with consecutive arc ids."""
    return TangleDiagram(dg.canonicalize(_compile_raw(t).freeze()))


def rational_tangle(s: Slope) -> TangleDiagram:
    """The slope-``s`` rational tangle for any finite slope (no leaf restriction)."""
    if s.is_infinite:
        raise DomainError("rational_tangle expects a finite slope; use Rational(INFINITY)")
    return TangleDiagram(dg.canonicalize(_rational_raw(s, f"T({s})").freeze()))


def endpoint_permutation(t: TangleExpr) -> Pairing:
    return compile_expr(t).string_pairing


def _raw_from_pd(pd: PDCode) -> _Raw:
    r = _Raw()
    r.crossings = [list(x) for x in pd.crossings]
    r.frames = [list(f) for f in pd.frames] if pd.frames else [list(_PLUS_FRAMES)] * len(pd.crossings)
    r.tags = list(pd.tags) if pd.tags else [""] * len(pd.crossings)
    r.ends = {as_label(k): a for k, a in (pd.open_ends or {}).items()}
    r.free_loops = pd.free_loops
    r.next_arc = max(pd.arcs(), default=-1) + 1
    return r


def _closure(t, pairs) -> PDCode:
    td = t if isinstance(t, TangleDiagram) else compile_expr(t)
    r = _raw_from_pd(td.pd)
    for a, b in pairs:
        r.join(a, b)
    return dg.canonicalize(r.freeze())


def numerator_closure(t) -> PDCode:
    """Join NW to SW and NE to SE (T(p/q) closes to a knot iff q is odd)."""
    return _closure(t, [(NW, SW), (NE, SE)])


def denominator_closure(t) -> PDCode:
    """Join NW to NE and SW to SE (T(p/q) closes to a knot iff p is odd)."""
    return _closure(t, [(NW, NE), (SW, SE)])


# ---------------------------------------------------------------------------
# gluing


def _reverses_cyclic_order(perm: Mapping[EndpointLabel, EndpointLabel]) -> bool:
    idx = [CYCLIC.index(perm[e]) for e in CYCLIC]
    step = (idx[1] - idx[0]) % 4
    return step == 3


@dataclass(frozen=True)
class GluingMap:
    """A bijection of the boundary labels; ``reverses_orientation`` is derived from it."""

    permutation: Mapping
    name: str = field(default="", compare=False)

    def __post_init__(self):
        try:
            perm = {as_label(k): as_label(v) for k, v in dict(self.permutation).items()}
        except ValueError as exc:
            raise StructureError(f"bad gluing label: {exc}") from None
        if set(perm) != set(ENDPOINTS) or set(perm.values()) != set(ENDPOINTS):
            raise StructureError("a gluing map must be a bijection of NW, NE, SW, SE")
        idx = [CYCLIC.index(perm[e]) for e in CYCLIC]
        if not all((idx[(i + 1) % 4] - idx[i]) % 4 == (idx[1] - idx[0]) % 4 for i in range(4)) or (
            idx[1] - idx[0]
        ) % 4 not in (1, 3):
            raise DomainError("gluing maps must be symmetries of the boundary square")
        object.__setattr__(self, "permutation", perm)

    @property
    def reverses_orientation(self) -> bool:
        return _reverses_cyclic_order(self.permutation)

    def __call__(self, label) -> EndpointLabel:
        return self.permutation[as_label(label)]

    def inverse(self) -> "GluingMap":
        return GluingMap({v: k for k, v in self.permutation.items()})

    def __hash__(self):
        return hash(tuple(self.permutation[e] for e in ENDPOINTS))

    def to_json(self) -> dict:
        return {
            "permutation": {e.value: self.permutation[e].value for e in ENDPOINTS},
            "reverses_orientation": self.reverses_orientation,
        }

    @classmethod
    def from_json(cls, data) -> "GluingMap":
        perm = data["permutation"] if "permutation" in data else data
        return cls(perm)

    @classmethod
    def from_matrix(cls, matrix, name: str = "") -> "GluingMap":
        return cls({e: apply_linear(matrix, e) for e in ENDPOINTS}, name)

    def then(self, other: "GluingMap") -> "GluingMap":
        """Apply ``self`` first, then ``other``."""
        return GluingMap({e: other(self(e)) for e in ENDPOINTS})


def standard_eta() -> GluingMap:
    """Counterclockwise quarter turn followed by the reflection in the y-axis."""
    rot = GluingMap.from_matrix(ROTATE_CCW)
    ref = GluingMap.from_matrix(REFLECT_Y_AXIS)
    g = rot.then(ref)
    return GluingMap(g.permutation, "eta")


_DIHEDRAL = (
    ("id", ((1, 0), (0, 1))),
    ("rot90", ((0, -1), (1, 0))),
    ("rot180", ((-1, 0), (0, -1))),
    ("rot270", ((0, 1), (-1, 0))),
    ("ref_x", ((1, 0), (0, -1))),
    ("ref_y", ((-1, 0), (0, 1))),
    ("ref_diag", ((0, 1), (1, 0))),
    ("ref_antidiag", ((0, -1), (-1, 0))),
)


def dihedral_gluings() -> list[GluingMap]:
    """The eight symmetries of the boundary square, as gluing maps."""
    return [GluingMap.from_matrix(m, name) for name, m in _DIHEDRAL]


def glue(t1: TangleExpr, t2: TangleExpr, g: GluingMap) -> PDCode:
    """Closed diagram joining endpoint e of ``t1`` to endpoint g(e) of ``t2``.

    ``t1`` sits on the left.  ``t2`` is moved to the right by the symmetry
    rho = h o g^-1 (h the reflection in the y-axis), so that g(e) lands
    opposite h(e).  A planar rotation leaves its PD tuples unchanged; a
    planar reflection is realised by a half turn about an in-plane axis,
    which also swaps over and under.  The four joining arcs then run
    crossing-free: two across the middle, one over the top, one under the
    bottom.
    """
    r1 = _compile_raw(t1, "side1/")
    r2 = _compile_raw(t2, "side2/")
    h = GluingMap.from_matrix(REFLECT_Y_AXIS)
    rho = g.inverse().then(h)
    if rho.reverses_orientation:
        r2.crossings = [x[::-1] for x in r2.crossings]
        r2.frames = [f[::-1] for f in r2.frames]
    r2.ends = {rho(k): a for k, a in r2.ends.items()}
    out = _Raw()
    out.absorb(r1, lambda k: ("L", k))
    out.absorb(r2, lambda k: ("R", k))
    for a, b in ((NE, NW), (SE, SW), (NW, NE), (SW, SE)):
        out.join(("L", a), ("R", b))
    return dg.canonicalize(out.freeze())


def glue_predicts_knot(g: GluingMap, p1: Pairing, p2: Pairing) -> bool:
    """True iff each string of side 1 is sent to endpoints of different strings of side 2.

    This decides whether the glued diagram is a knot only when both sides
    consist of their two strings alone (no closed components inside).
    """
    strings2 = [frozenset(as_label(x) for x in pair) for pair in p2]
    for a, b in p1:
        ga, gb = g(a), g(b)
        if any(ga in s and gb in s for s in strings2):
            return False
    return True
