"""Special-disk types, disk weights, train-track splitting types, relative framings and boundary slopes.

Throughout, ``n`` is the (even) number of times the surface meets a
meridian of the knot, ``r = n/2``, ``s`` the number of type (6) disks,
``eps`` records whether the two strings of T(-+1/2) are consistently
oriented, and ``sigma`` is +1 for T(1/3,-1/2;4) and -1 for its mirror.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DomainError


def _check_eps(eps: int, name: str = "eps") -> int:
    if eps not in (1, -1):
        raise DomainError(f"{name} must be +1 or -1, got {eps}")
    return eps


def _check_n(n: int) -> int:
    if n <= 0 or n % 2:
        raise DomainError(f"n must be a positive even integer, got {n}")
    return n


# ---------------------------------------------------------------------------
# special disks


class SpecialDiskType(Enum):
    """The six special disks: (curve on P, which rational tangles carry it)."""

    TYPE1 = (1, "c0")
    TYPE2 = (2, "c1")
    TYPE3 = (3, "c2")
    TYPE4 = (4, "c1")
    TYPE5 = (5, "c2")
    TYPE6 = (6, "c3")

    @property
    def number(self) -> int:
        return self.value[0]

    @property
    def curve(self) -> str:
        return self.value[1]

    def allows(self, q: int) -> bool:
        k = self.number
        if k == 1:
            return q % 2 == 1 and q >= 3
        if k in (2, 3):
            return q == 3
        return q == 2


def allowed_disk_types(q: int) -> frozenset:
    """Special disk types available in E(T(+-1/q))."""
    if q < 2 or (q % 2 == 0 and q != 2):
        raise DomainError(f"special disks need q = 2 or q odd >= 3, got {q}")
    return frozenset(t for t in SpecialDiskType if t.allows(q))


def montesinos_side_feasible(q: int) -> bool:
    """Whether the first slot T(+-1/q) of a Montesinos side can meet U_+.

    Only q = 3 offers disks of type (2)/(3); for larger odd q only type (1)
    disks exist and the surface misses U_+.
    """
    types = allowed_disk_types(q)
    return SpecialDiskType.TYPE2 in types and SpecialDiskType.TYPE3 in types


# ---------------------------------------------------------------------------
# weights and train tracks


@dataclass(frozen=True)
class DiskWeights:
    a1: int
    a2: int
    a3: int
    a4: int
    a5: int
    a6: int

    def __post_init__(self):
        w = self.as_tuple()
        if any(a < 0 for a in w):
            raise DomainError(f"disk weights must be non-negative: {w}")
        if self.a2 != self.a3 or self.a4 != self.a5 or self.a4 != self.a1 + self.a2:
            raise DomainError(f"weights {w} violate a2 = a3, a4 = a5 = a1 + a2")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a5, self.a6)


def solve_weights(n: int, s: int) -> DiskWeights:
    """The unique weights (r - s, r + s, r + s, n, n, s) for a special surface."""
    _check_n(n)
    r = n // 2
    if not 0 <= s <= r:
        raise DomainError(f"s must lie in [0, {r}] for n = {n}, got {s}")
    w = DiskWeights(r - s, r + s, r + s, n, n, s)
    # the matching equation across the two rational tangles
    assert 2 * w.a2 == w.a5 + 2 * w.a6
    return w


class TrainTrackType(str, Enum):
    TT1 = "TT1"  # r - s > s > 0
    TT2 = "TT2"  # s > r - s > 0
    TT3 = "TT3"  # s = 0
    TT4 = "TT4"  # r - s = 0
    TT5 = "TT5"  # r - s = s


def train_track_type(r: int, s: int) -> TrainTrackType:
    """Splitting type of the side train track; TT5 > TT3 > TT4 > strict cases."""
    if r < 1 or not 0 <= s <= r:
        raise DomainError(f"need r >= 1 and 0 <= s <= r, got r={r}, s={s}")
    if r - s == s:
        return TrainTrackType.TT5
    if s == 0:
        return TrainTrackType.TT3
    if s == r:
        return TrainTrackType.TT4
    return TrainTrackType.TT1 if r - s > s else TrainTrackType.TT2


# ---------------------------------------------------------------------------
# framings

THETA_A1 = 6
THETA_A2_A3 = 4
THETA_A6 = 0


def theta_a4_a5(eps: int) -> int:
    return -2 * _check_eps(eps)


@dataclass(frozen=True)
class FramingContext:
    n: int
    s: int
    eps: int = 1
    sigma: int = 1

    def __post_init__(self):
        _check_n(self.n)
        _check_eps(self.eps)
        _check_eps(self.sigma, "sigma")
        if not 0 <= self.s <= self.r:
            raise DomainError(f"s must lie in [0, {self.r}], got {self.s}")

    @property
    def r(self) -> int:
        return self.n // 2


def theta_montesinos(n: int, s: int, eps: int) -> int:
    """Framing of the regular special surface in T(1/3,-1/2): (5 - 2 eps) n - 2s."""
    return (5 - 2 * _check_eps(eps)) * n - 2 * s


def theta_montesinos_diskwise(weights: DiskWeights, eps: int) -> int:
    """The same framing summed disk by disk; A2/A3 and A4/A5 enter as pairs."""
    return (
        THETA_A1 * weights.a1
        + THETA_A2_A3 * weights.a2
        + theta_a4_a5(eps) * weights.a4
        + THETA_A6 * weights.a6
    )


def twist_correction(n: int, eps: int) -> int:
    """Change of framing from the four bottom half twists: (2 - 2 eps) n."""
    return (2 - 2 * _check_eps(eps)) * n


def rotation_correction(n: int) -> int:
    """Turning the n endpoints clockwise around the boundary adds n negative under-crossings."""
    return -n


def _theta_side(n: int, two_s: int, eps: int, sigma: int) -> int:
    return sigma * ((6 - 4 * eps) * n - two_s)


def theta_twisted_side(ctx: FramingContext) -> int:
    """sigma * ((6 - 4 eps) n - 2s); the mirror side negates every crossing sign."""
    value = _theta_side(ctx.n, 2 * ctx.s, ctx.eps, ctx.sigma)
    composed = theta_montesinos(ctx.n, ctx.s, ctx.eps) + twist_correction(ctx.n, ctx.eps) + rotation_correction(ctx.n)
    assert value == ctx.sigma * composed
    return value


def theta_side(n: int, s: int, eps: int = 1, sigma: int = 1) -> int:
    return theta_twisted_side(FramingContext(n, s, eps, sigma))


def type12_half_twist_correction(n: int, eps: int, s2: int) -> int:
    """Framing after half-twisting the lower edge of a type (1)/(2) track: (4 - 4 eps) n - 2 s2."""
    return (4 - 4 * _check_eps(eps)) * n - 2 * s2


@dataclass(frozen=True)
class SurgerySlope:
    p: int
    q: int
    m: int

    @property
    def is_integral(self) -> bool:
        return self.q == 1

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "m": self.m}


def boundary_slope(theta1: int, theta2: int, n: int) -> SurgerySlope:
    """Slope p/q of F = F1 + F2 with m boundary circles, where m p = theta1 + theta2 and m q = n."""
    _check_n(n)
    total = theta1 + theta2
    g = math.gcd(total, n)
    p, q = total // g, n // g
    return SurgerySlope(p, q, n // q)


def type12_obstruction_residue(n: int, eps: int = 1, s2: int = 0) -> int:
    """theta1 + theta2 mod n when a type (1)/(2) track is matched to a half-twisted partner.

    Matching the vertical edges forces 2 s1 = r - 2 s2, so the sum is
    (10 - 8 eps) n - r, which is r mod n whatever eps and s2 are.
    """
    _check_n(n)
    r = n // 2
    theta1 = _theta_side(n, r - 2 * s2, eps, 1)
    theta2 = type12_half_twist_correction(n, eps, s2)
    assert theta1 + theta2 == (10 - 8 * eps) * n - r
    return (theta1 + theta2) % n


def type34_mixed_residue(n: int, s2: int = 0, eps: int = 1, sigma1: int = 1, sigma2: int = 1) -> int:
    """theta1 + theta2 mod n for a type (5) side (2 s1 = r) against a type (3)/(4) side (s2 in {0, r})."""
    _check_n(n)
    r = n // 2
    if s2 not in (0, r):
        raise DomainError(f"a type (3)/(4) side has s = 0 or s = r, got {s2}")
    theta1 = _theta_side(n, r, eps, sigma1)
    theta2 = _theta_side(n, 2 * s2, eps, sigma2)
    return (theta1 + theta2) % n


def framing_certificate(ctx: FramingContext) -> dict:
    return {
        "n": ctx.n,
        "r": ctx.r,
        "s": ctx.s,
        "epsilon": ctx.eps,
        "sigma": ctx.sigma,
        "theta": theta_twisted_side(ctx),
        "weights": list(solve_weights(ctx.n, ctx.s).as_tuple()),
        "track_type": train_track_type(ctx.r, ctx.s).value,
    }
