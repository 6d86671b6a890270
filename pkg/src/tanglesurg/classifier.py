"""Case enumeration over side tangles, train-track types and gluing maps, plus the knot catalog.

Each side of the Conway sphere is T(1/3,-1/2;4) (sigma = +1) or its
mirror T(-1/3,1/2;-4) (sigma = -1).  Branches are rejected by the mod-n
residue obstructions, by the two-component test, and finally by the
integer-slope test; survivors carry a certificate that
:func:`verify_certificate` re-derives from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import diagram as dg
from . import framing as fr
from .errors import DomainError, StructureError, TangleSurgError
from .framing import SurgerySlope, TrainTrackType
from .tangle import (
    GluingMap,
    Slope,
    TangleExpr,
    dihedral_gluings,
    endpoint_permutation,
    glue,
    glue_predicts_knot,
    mirror_tangle,
    montesinos,
    standard_eta,
)

CATALOG_N = 4
_KNOT_BY_SIGMA = {(1, 1): "K1", (1, -1): "K2", (-1, -1): "K3"}
_TT12 = (TrainTrackType.TT1, TrainTrackType.TT2)
_TT34 = (TrainTrackType.TT3, TrainTrackType.TT4)


def side_expr(sigma: int) -> TangleExpr:
    """T(1/3,-1/2;4) for sigma = +1, its mirror T(-1/3,1/2;-4) for sigma = -1."""
    base = montesinos(Slope(1, 3), Slope(-1, 2), 4)
    if sigma == 1:
        return base
    if sigma == -1:
        return mirror_tangle(base)
    raise DomainError(f"sigma must be +1 or -1, got {sigma}")


@dataclass(frozen=True)
class SideSpec:
    sigma: int
    s: int
    n: int

    @property
    def r(self) -> int:
        return self.n // 2

    @property
    def track_type(self) -> TrainTrackType:
        return fr.train_track_type(self.r, self.s)

    @property
    def expr(self) -> TangleExpr:
        return side_expr(self.sigma)


@dataclass(frozen=True)
class CandidateConfig:
    side1: SideSpec
    side2: SideSpec
    gluing: GluingMap
    n: int

    def __post_init__(self):
        if not (self.side1.n == self.side2.n == self.n):
            raise DomainError("both sides must use the same n")


@dataclass(frozen=True)
class ClassificationResult:
    knot_id: str
    slope: SurgerySlope
    certificate: dict = field(compare=False)

    def __hash__(self):
        return hash((self.knot_id, self.slope))

    def to_json(self) -> dict:
        return {"knot": self.knot_id, "slope": self.slope.to_json(), "certificate": self.certificate}

    @classmethod
    def from_json(cls, data) -> "ClassificationResult":
        try:
            sl = data["slope"]
            return cls(str(data["knot"]), SurgerySlope(int(sl["p"]), int(sl["q"]), int(sl["m"])), dict(data["certificate"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"malformed classification result: {exc}") from None


@dataclass(frozen=True)
class KnotCatalogEntry:
    id: str
    side1: TangleExpr
    side2: TangleExpr
    gluing: GluingMap
    pd: dg.PDCode
    expected_slope: int

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "side1": str(self.side1),
            "side2": str(self.side2),
            "gluing": self.gluing.to_json(),
            "expected_slope": self.expected_slope,
            "crossing_count": len(self.pd.crossings),
            "pd": self.pd.to_json(),
        }


def build_catalog() -> list[KnotCatalogEntry]:
    """K1, K2, K3: two copies of the side tangle (or its mirror) glued by eta."""
    eta = standard_eta()
    out = []
    for (s1, s2), kid in _KNOT_BY_SIGMA.items():
        slope = {"K1": 3, "K2": 0, "K3": -3}[kid]
        out.append(KnotCatalogEntry(kid, side_expr(s1), side_expr(s2), eta, _glued(s1, s2, eta), slope))
    return out


def catalog_entry(knot_id: str) -> KnotCatalogEntry:
    for e in build_catalog():
        if e.id == knot_id:
            return e
    raise DomainError(f"unknown knot id {knot_id!r}; expected K1, K2 or K3")


def enumerate_gluings() -> list[GluingMap]:
    """Image of one vertex (4 choices) times orientation on the track cycle (2 choices)."""
    return dihedral_gluings()


def knot_filter(g: GluingMap, p1, p2) -> bool:
    return glue_predicts_knot(g, p1, p2)


@lru_cache(maxsize=None)
def _glued(sigma1: int, sigma2: int, g: GluingMap) -> dg.PDCode:
    return glue(side_expr(sigma1), side_expr(sigma2), g)


@lru_cache(maxsize=None)
def _pairing(sigma: int):
    return endpoint_permutation(side_expr(sigma))


def _half_twist_leaf(tag: str, side: int) -> bool:
    return tag.startswith(f"side{side}/") and (tag.endswith("T(-1/2)") or tag.endswith("T(1/2)"))


def epsilon_from_oriented(od: dg.OrientedDiagram, side: int) -> int:
    """+1 if the two strings of the side's T(-+1/2) run the same way (both down or both up).

    At each crossing of that rational tangle one strand of each string
    passes; a strand runs downwards when it enters the crossing from the
    crossing's top (NW or NE in the tangle's own frame).
    """
    if od.pd.tags is None or od.pd.frames is None:
        raise StructureError("epsilon needs a diagram compiled from tangle expressions")
    values = set()
    for i, tag in enumerate(od.pd.tags):
        if not _half_twist_leaf(tag, side):
            continue
        frames = od.pd.frames[i]
        under_down = frames[0] in ("NW", "NE")
        over_down = frames[od.over_in[i]] in ("NW", "NE")
        values.add(1 if under_down == over_down else -1)
    if not values:
        raise DomainError(f"side {side} has no T(+-1/2) crossings")
    if len(values) > 1:
        raise StructureError(f"inconsistent string directions inside side {side}'s T(+-1/2)")
    return values.pop()


def epsilon_of(pd: dg.PDCode, side: int) -> int:
    """Orientation consistency of the T(-+1/2) strings on ``side`` (1 or 2) of a glued knot."""
    if side not in (1, 2):
        raise DomainError("side must be 1 or 2")
    count = dg.trace_components(pd).count
    if count != 1:
        raise DomainError(f"epsilon needs a knot, diagram has {count} components")
    return epsilon_from_oriented(dg.orient(pd), side)


# ---------------------------------------------------------------------------
# enumeration


def _branch(sigma1, sigma2, s1, s2, t1, t2) -> dict:
    return {"sigma": [sigma1, sigma2], "s": [s1, s2], "track_types": [t1.value, t2.value]}


def _side_certificate(n, sigma, s, eps) -> dict:
    cert = fr.framing_certificate(fr.FramingContext(n, s, eps, sigma))
    cert["tangle"] = str(side_expr(sigma))
    return cert


def run_classification(n: int):
    """Full enumeration; returns (results, rejected branches)."""
    if n < 2 or n % 2:
        raise DomainError(f"n must be an even integer >= 2, got {n}")
    r = n // 2
    found: dict = {}
    rejected = []
    gluings = enumerate_gluings()
    for sigma1 in (1, -1):
        for sigma2 in (1, -1):
            for s1 in range(r + 1):
                for s2 in range(r + 1):
                    t1, t2 = fr.train_track_type(r, s1), fr.train_track_type(r, s2)
                    branch = _branch(sigma1, sigma2, s1, s2, t1, t2)
                    if t1 in _TT12 or t2 in _TT12:
                        partner_s = s2 if t1 in _TT12 else s1
                        partner_t = t2 if t1 in _TT12 else t1
                        reason = (
                            "type (1)/(2) tracks: framing sum is r mod n"
                            if partner_t in _TT12
                            else "type (1)/(2) track has no homeomorphic partner; framing sum is r mod n"
                        )
                        residue = fr.type12_obstruction_residue(n, 1, partner_s)
                        rejected.append({"branch": branch, "reason": reason, "residue": residue})
                        continue
                    if t1 in _TT34 and t2 in _TT34:
                        rejected.append(
                            {"branch": branch, "reason": "both tracks of type (3)/(4): link of two components", "residue": None}
                        )
                        continue
                    if t1 in _TT34 or t2 in _TT34:
                        if t1 in _TT34:
                            residue = fr.type34_mixed_residue(n, s1, 1, sigma2, sigma1)
                        else:
                            residue = fr.type34_mixed_residue(n, s2, 1, sigma1, sigma2)
                        rejected.append(
                            {"branch": branch, "reason": "type (5) track against type (3)/(4)", "residue": residue}
                        )
                        continue
                    _enumerate_tt5(n, sigma1, sigma2, s1, s2, branch, gluings, found, rejected)
    results = []
    for key in sorted(found, key=lambda k: (k[0], k[1].p)):
        cert = found[key]
        results.append(ClassificationResult(key[0], key[1], cert))
    return results, rejected


def _enumerate_tt5(n, sigma1, sigma2, s1, s2, branch, gluings, found, rejected):
    p1, p2 = _pairing(sigma1), _pairing(sigma2)
    for g in gluings:
        if not knot_filter(g, p1, p2):
            rejected.append({"branch": dict(branch, gluing=g.name), "reason": "gluing gives a two-component link", "residue": None})
            continue
        pd = _glued(sigma1, sigma2, g)
        count = dg.trace_components(pd).count
        if count != 1:  # the pairing test and the trace must agree
            raise AssertionError(f"pairing predicts a knot but trace finds {count} components")
        eps1, eps2 = epsilon_of(pd, 1), epsilon_of(pd, 2)
        th1 = fr.theta_side(n, s1, eps1, sigma1)
        th2 = fr.theta_side(n, s2, eps2, sigma2)
        slope = fr.boundary_slope(th1, th2, n)
        if not slope.is_integral:
            rejected.append(
                {"branch": dict(branch, gluing=g.name), "reason": "non-integral slope", "residue": (th1 + th2) % n}
            )
            continue
        order = sorted([(sigma1, s1, eps1, th1), (sigma2, s2, eps2, th2)], key=lambda t: -t[0])
        knot = _KNOT_BY_SIGMA[(order[0][0], order[1][0])]
        key = (knot, slope)
        if key in found:
            if g.name not in found[key]["equivalent_gluings"]:
                found[key]["equivalent_gluings"].append(g.name)
            continue
        found[key] = {
            "knot": knot,
            "n": n,
            "sides": [_side_certificate(n, sg, s, e) for sg, s, e, _ in order],
            "theta": [t[3] for t in order],
            "theta_sum": th1 + th2,
            "epsilon": [t[2] for t in order],
            "gluing": dict(g.to_json(), name=g.name),
            "equivalent_gluings": [g.name],
            "component_count": count,
            "slope": slope.to_json(),
            "boundary_circles": slope.m,
        }


def classify(n: int) -> list[ClassificationResult]:
    """(knot, integer slope) pairs surviving every filter, sorted by knot id."""
    return run_classification(n)[0]


def classification_report(n: int) -> dict:
    results, rejected = run_classification(n)
    return {"n": n, "results": [r.to_json() for r in results], "rejected": rejected}


def verify_certificate(result) -> bool:
    """Re-derive weights, framings, epsilon, component count and slope; True iff all agree."""
    try:
        if isinstance(result, dict):
            result = ClassificationResult.from_json(result)
        cert = result.certificate
        n = int(cert["n"])
        sides = cert["sides"]
        if len(sides) != 2:
            return False
        sigmas = tuple(int(s["sigma"]) for s in sides)
        if _KNOT_BY_SIGMA.get(sigmas) != result.knot_id or cert.get("knot", result.knot_id) != result.knot_id:
            return False
        g = GluingMap.from_json(cert["gluing"])
        pd = _glued(sigmas[0], sigmas[1], g)
        if dg.trace_components(pd).count != 1 or cert["component_count"] != 1:
            return False
        thetas = []
        for idx, side in enumerate(sides, start=1):
            s = int(side["s"])
            if fr.train_track_type(n // 2, s) is not TrainTrackType.TT5 or side["track_type"] != "TT5":
                return False
            if list(fr.solve_weights(n, s).as_tuple()) != list(side["weights"]):
                return False
            eps = epsilon_of(pd, idx)
            if eps != side["epsilon"] or eps != cert["epsilon"][idx - 1]:
                return False
            theta = fr.theta_side(n, s, eps, sigmas[idx - 1])
            if theta != side["theta"] or theta != cert["theta"][idx - 1]:
                return False
            thetas.append(theta)
        slope = fr.boundary_slope(thetas[0], thetas[1], n)
        if slope != result.slope or slope.to_json() != cert["slope"] or not slope.is_integral:
            return False
        if slope.p * slope.m != sum(thetas) or cert["theta_sum"] != sum(thetas) or slope.m != n:
            return False
        if cert["boundary_circles"] != slope.m or (n == CATALOG_N and slope.m != 4):
            return False
        return True
    except (KeyError, TypeError, ValueError, TangleSurgError):
        return False
