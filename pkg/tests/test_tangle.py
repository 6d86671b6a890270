import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanglesurg import diagram as dg
from tanglesurg.endpoints import ENDPOINTS, EndpointLabel
from tanglesurg.errors import DomainError, StructureError
from tanglesurg.tangle import (
    INFINITY,
    BottomTwist,
    GluingMap,
    Mirror,
    Rational,
    Slope,
    Sum,
    bottom_twist,
    compile_expr,
    continued_fraction,
    crossing_count,
    denominator_closure,
    dihedral_gluings,
    endpoint_permutation,
    evaluate_continued_fraction,
    glue,
    glue_predicts_knot,
    mirror_tangle,
    montesinos,
    numerator_closure,
    parse_expr,
    rational_tangle,
    standard_eta,
    tangle,
    tangle_sum,
)

ZETA8 = cmath.exp(1j * cmath.pi / 4)


def reduced_slopes(max_q, max_p):
    for q in range(1, max_q + 1):
        for p in range(-max_p, max_p + 1):
            if gcd(p, q) == 1:
                yield Slope(p, q)


def bracket_fraction(td):
    """Fraction of a tangle from its bracket at A = exp(i pi/4), where the loop value vanishes.

    Writing <T> = f<0> + g<oo>, the side closure evaluates to f and the
    top/bottom closure to g, and the fraction is proportional to g/f.
    """
    f = dg.bracket_reference(numerator_closure(td))(ZETA8)
    g = dg.bracket_reference(denominator_closure(td))(ZETA8)
    if abs(f) < 1e-9:
        return None
    return 1j * g / f


# -- slopes and continued fractions --------------------------------------------


def test_slope_reduction_and_infinity():
    assert Slope(2, 4) == Slope(1, 2)
    assert Slope(1, -3) == Slope(-1, 3)
    with pytest.raises(DomainError):
        Slope(1, 0)
    assert INFINITY.is_infinite and Slope.parse("1/0") is INFINITY


def test_continued_fraction_examples():
    assert continued_fraction(Slope(1, 3)) == [3]
    assert continued_fraction(Slope(0, 1)) == []
    assert evaluate_continued_fraction(continued_fraction(Slope(3, 10))) == Fraction(3, 10)
    with pytest.raises(DomainError):
        continued_fraction(INFINITY)


@given(st.integers(-200, 200), st.integers(1, 200))
def test_continued_fraction_reevaluates(p, q):
    s = Slope(p, q)
    assert evaluate_continued_fraction(continued_fraction(s)) == Fraction(p, q)
    assert continued_fraction(-s) == [-a for a in continued_fraction(s)]


# -- rational tangles ---------------------------------------------------------------


def test_zero_tangle():
    td = rational_tangle(Slope(0))
    assert len(td.crossings) == 0
    assert td.string_pairing == (("NW", "NE"), ("SW", "SE"))


def test_small_rational_closures():
    assert len(rational_tangle(Slope(1, 3)).crossings) == 3
    assert dg.trace_components(numerator_closure(rational_tangle(Slope(1, 3)))).count == 1
    assert len(rational_tangle(Slope(1, 2)).crossings) == 2
    assert dg.trace_components(numerator_closure(rational_tangle(Slope(1, 2)))).count == 2


def test_crossing_count_is_sum_of_terms():
    for s in reduced_slopes(9, 12):
        assert len(rational_tangle(s).crossings) == sum(abs(a) for a in continued_fraction(s))


def test_bracket_fraction_matches_slope():
    # calibrate the overall sign on the single crossing, then check every slope
    unit = bracket_fraction(rational_tangle(Slope(1)))
    sign = 1 if abs(unit - 1) < 1e-9 else -1
    assert abs(sign * unit - 1) < 1e-9
    for s in reduced_slopes(7, 9):
        value = bracket_fraction(rational_tangle(s))
        assert value is not None
        assert abs(sign * value - float(s.as_fraction())) < 1e-9, s


def test_numerator_closure_components_follow_q_parity():
    for s in reduced_slopes(9, 20):
        count = dg.trace_components(numerator_closure(rational_tangle(s))).count
        assert (count == 1) == (s.denominator % 2 == 1), s
        count = dg.trace_components(denominator_closure(rational_tangle(s))).count
        assert (count == 1) == (s.numerator % 2 == 1), s


def test_rational_leaf_invariant():
    with pytest.raises(DomainError):
        Rational(Slope(2, 1))
    Rational(Slope(0))
    Rational(INFINITY)


# -- sums, twists, mirrors --------------------------------------------------------------


def test_sum_examples():
    t = tangle_sum(tangle(1, 3), tangle(-1, 2))
    td = compile_expr(t)
    assert len(td.crossings) == 5
    tops = {"NW", "NE"}
    for a, b in td.string_pairing:
        assert (a in tops) != (b in tops)
    u = tangle(2, 5)
    assert compile_expr(tangle_sum(tangle(0), u)).string_pairing == compile_expr(u).string_pairing


def test_bottom_twist_examples():
    t = tangle_sum(tangle(1, 3), tangle(-1, 2))
    assert bottom_twist(t, 0) is t
    assert len(compile_expr(bottom_twist(t, 4)).crossings) == 9
    back = bottom_twist(bottom_twist(t, 2), -2)
    for closure in (numerator_closure, denominator_closure):
        a, b = closure(t), closure(back)
        assert dg.trace_components(a).count == dg.trace_components(b).count
        if dg.trace_components(a).count == 1:
            assert dg.jones(dg.orient(a)) == dg.jones(dg.orient(b))
        assert dg.kauffman_bracket(a) == dg.kauffman_bracket(b)


def test_bottom_twist_changes_fraction():
    # k left-handed half twists send F to 1/(1/F - k)
    unit = bracket_fraction(rational_tangle(Slope(1)))
    sign = 1 if abs(unit - 1) < 1e-9 else -1
    for r, k in [(Slope(1, 3), 1), (Slope(2, 5), -2), (Slope(-3, 7), 3)]:
        td = compile_expr(bottom_twist(Rational(r), k))
        expected = 1 / (1 / r.as_fraction() - k)
        assert abs(sign * bracket_fraction(td) - float(expected)) < 1e-9


def test_mirror_examples():
    t = montesinos(Slope(1, 3), Slope(-1, 2), 4)
    assert mirror_tangle(mirror_tangle(t)) == t
    assert mirror_tangle(t) == montesinos(Slope(-1, 3), Slope(1, 2), -4)
    assert mirror_tangle(Mirror(t)) == t
    flipped = dg.mirror_pd(compile_expr(t).pd)
    assert compile_expr(mirror_tangle(t)).pd == flipped


def test_pairing_examples():
    assert endpoint_permutation(tangle(0)) == (("NW", "NE"), ("SW", "SE"))
    t = montesinos(Slope(1, 3), Slope(-1, 2), 4)
    assert endpoint_permutation(t) == (("NW", "SW"), ("NE", "SE"))
    assert endpoint_permutation(mirror_tangle(t)) == endpoint_permutation(t)


def test_compiled_pd_has_consecutive_arcs():
    td = compile_expr(montesinos(Slope(1, 3), Slope(-1, 2), 4))
    assert td.arcs == list(range(len(td.arcs)))
    assert set(td.open_ends) == {"NW", "NE", "SW", "SE"}


# -- parser -------------------------------------------------------------------------


def test_parser_roundtrip():
    text = "twist(sum(T(1/3),T(-1/2)),4)"
    e = parse_expr(text)
    assert e == montesinos(Slope(1, 3), Slope(-1, 2), 4)
    assert str(e) == text
    assert parse_expr("mirror( twist(sum(T(1/3), T(-1/2)), 4) )") == mirror_tangle(e)
    assert parse_expr("T(0/1)") == tangle(0)
    assert parse_expr("T(1/0)") == Rational(INFINITY)


@pytest.mark.parametrize("bad", ["T(1/", "sum(T(1/3))", "twist(T(1/3),1/2)", "foo(T(1/3))", "T(1/3) x", ""])
def test_parser_errors(bad):
    with pytest.raises(StructureError):
        parse_expr(bad)


# -- gluing --------------------------------------------------------------------------


def test_standard_eta():
    eta = standard_eta()
    assert eta(EndpointLabel.NE) is EndpointLabel.NE
    assert eta(EndpointLabel.SE) is EndpointLabel.NW
    assert eta(EndpointLabel.SW) is EndpointLabel.SW
    assert eta(EndpointLabel.NW) is EndpointLabel.SE
    assert eta.reverses_orientation


def test_gluing_map_validation():
    with pytest.raises(StructureError):
        GluingMap({"NW": "NW", "NE": "NW", "SW": "SW", "SE": "SE"})
    with pytest.raises(DomainError):  # a bijection but not a symmetry of the square
        GluingMap({"NW": "NE", "NE": "NW", "SW": "SW", "SE": "SE"})
    assert len(set(dihedral_gluings())) == 8


def test_glue_k1():
    t = montesinos(Slope(1, 3), Slope(-1, 2), 4)
    pd = glue(t, t, standard_eta())
    assert len(pd.crossings) == 18 and pd.is_closed
    assert dg.trace_components(pd).count == 1


def test_closed_loop_inside_a_side_defeats_the_pairing_test():
    # T(1/2) + T(1/2) contains a closed circle, which no endpoint pairing can see
    loop = Sum(tangle(1, 2), tangle(1, 2))
    assert dg.trace_components(compile_expr(loop).pd).count == 3
    g = GluingMap.from_matrix(((1, 0), (0, 1)))
    assert glue_predicts_knot(g, endpoint_permutation(tangle(0)), endpoint_permutation(loop))
    assert dg.trace_components(glue(tangle(0), loop, g)).count == 2


def test_glue_zero_tangles():
    # eta sends the string NW-NE to SE, NE: endpoints of different strings, so one component
    pd = glue(tangle(0), tangle(0), standard_eta())
    assert len(pd.crossings) == 0
    assert dg.trace_components(pd).count == 1
    assert dg.trace_components(glue(tangle(0), tangle(0), GluingMap.from_matrix(((1, 0), (0, 1))))).count == 2


leaves = st.builds(lambda p, q: Slope(p, q), st.integers(-5, 5), st.integers(2, 5)).filter(
    lambda s: s.numerator == 0 or s.denominator >= 2
).map(Rational)
exprs = st.recursive(
    leaves,
    lambda inner: st.one_of(
        st.builds(Sum, inner, inner),
        st.builds(lambda t, k: bottom_twist(t, k), inner, st.integers(-3, 3)),
        st.builds(Mirror, inner),
    ),
    max_leaves=3,
)


@settings(max_examples=60, deadline=None)
@given(exprs)
def test_compile_invariants(t):
    td = compile_expr(t)
    assert len(td.crossings) == crossing_count(t)
    assert set(td.open_ends) == {e.value for e in ENDPOINTS}
    assert sorted(x for p in td.string_pairing for x in p) == sorted(e.value for e in ENDPOINTS)
    assert mirror_tangle(mirror_tangle(t)) == mirror_tangle(mirror_tangle(mirror_tangle(mirror_tangle(t))))
    assert compile_expr(mirror_tangle(t)).pd == dg.mirror_pd(td.pd)


@settings(max_examples=40, deadline=None)
@given(exprs, exprs)
def test_crossing_counts_additive(a, b):
    assert crossing_count(Sum(a, b)) == crossing_count(a) + crossing_count(b)
    assert crossing_count(BottomTwist(a, -3)) == crossing_count(a) + 3


def _strings_only(t):
    return dg.trace_components(compile_expr(t).pd).count == 2


@settings(max_examples=40, deadline=None)
@given(exprs.filter(_strings_only), exprs.filter(_strings_only))
def test_glue_knot_criterion(a, b):
    p1, p2 = endpoint_permutation(a), endpoint_permutation(b)
    for g in dihedral_gluings():
        pd = glue(a, b, g)
        assert len(pd.crossings) == crossing_count(a) + crossing_count(b)
        assert (dg.trace_components(pd).count == 1) == glue_predicts_knot(g, p1, p2)
