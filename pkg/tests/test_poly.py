"""Polynomials: factorization oracle, irreducible counts, Galois orbits."""

import itertools

import pytest

from nicensus import gf, poly
from nicensus.errors import NotASubfield, NotIrreducible, ParseError, ZeroPolynomial
from nicensus.poly import Poly

F2 = gf.field_create(2)
F3 = gf.field_create(3)
F4 = gf.field_create(2, 2)


def all_polys_up_to(ctx, max_deg):
    """Every nonzero polynomial of degree <= max_deg (all leading coefficients)."""
    q = ctx.order
    for deg in range(max_deg + 1):
        for lead in range(1, q):
            for tail in itertools.product(range(q), repeat=deg):
                yield Poly.make(ctx, list(tail) + [lead])


@pytest.mark.parametrize("ctx", [F2, F3], ids=["F2", "F3"])
def test_factorize_recompose_exhaustive(ctx):
    for f in all_polys_up_to(ctx, 6):
        fac = poly.factorize(f)
        assert fac.recompose(ctx) == f
        for g, e in fac.factors:
            assert g.is_monic and e >= 1
            assert poly.is_irreducible(g)
        # factors pairwise distinct and canonically sorted
        keys = [g.canonical_key() for g, _ in fac.factors]
        assert keys == sorted(keys) and len(keys) == len(set(keys))


def test_factorize_examples():
    t = Poly.x(F2)
    assert poly.factorize(t * t).factors == ((t, 2),)
    f = Poly.make(F2, (1, 1, 1))
    assert poly.factorize(f).factors == ((f, 1),)
    fac = poly.factorize(Poly.make(F3, (2, 0, 1)))  # t^2 - 1
    assert [(str(g), e) for g, e in fac.factors] == [("1+1*t", 1), ("2+1*t", 1)]
    with pytest.raises(ZeroPolynomial):
        poly.factorize(Poly.zero(F2))


def test_char_p_squarefree_handling():
    # f = (t^2 + t + 1)^2 has zero derivative over F_2
    g = Poly.make(F2, (1, 1, 1))
    fac = poly.factorize(g * g)
    assert fac.factors == ((g, 2),)
    fac = poly.factorize(g ** 4 * Poly.x(F2))
    assert fac.multiplicity(g) == 4
    assert fac.multiplicity(Poly.x(F2)) == 1


def test_irr_count_anchors():
    assert poly.irr_count(1, 7) == 7
    assert poly.irr_count(2, 3) == 3
    assert poly.irr_count(6, 2) == 9
    assert poly.irr_count(4, 2) == 3


@pytest.mark.parametrize("ctx,q,maxm", [(F2, 2, 8), (F3, 3, 8), (F4, 4, 8)],
                         ids=["q2", "q3", "q4"])
def test_irr_enumerate_matches_count(ctx, q, maxm):
    for m in range(1, maxm + 1):
        irr = poly.irr_enumerate(m, ctx)
        assert len(irr) == poly.irr_count(m, q)
        keys = [f.canonical_key() for f in irr]
        assert keys == sorted(keys)


def test_irr_enumerate_examples():
    lin = poly.irr_enumerate(1, F3)
    assert len(lin) == 3 and all(f.degree == 1 for f in lin)
    assert [str(f) for f in poly.irr_enumerate(2, F2)] == ["1+1*t+1*t^2"]


def test_count_sandwich_for_composite_degrees():
    # (q^m - 2 q^(m/2)) / m <= count <= (q^m - 1) / m for m >= 2
    for q in (2, 3, 4, 5):
        for m in range(2, 17):
            cnt = poly.irr_count(m, q)
            assert m * cnt <= q ** m - 1
            assert (m * cnt) ** 2 >= 0
            # lower bound, squared to stay in integers when m is odd
            lhs = q ** m - m * cnt  # must be < 2 q^{m/2}  <=>  lhs^2 < 4 q^m
            assert lhs < 0 or lhs * lhs < 4 * q ** m


def test_galois_conjugate_examples():
    g = Poly.make(F2, (1, 1, 1))
    gg = poly.embed_into_extension(g, F4)
    assert poly.galois_conjugate(gg, 2, 1) == gg  # prime-field coefficients
    h = Poly.make(F4, (2, 1))
    assert poly.galois_conjugate(h, 2, 1) == Poly.make(F4, (3, 1))
    assert poly.galois_conjugate(h, 2, 0) == h
    assert poly.is_irreducible(poly.galois_conjugate(h, 2, 1))
    with pytest.raises(NotASubfield):
        poly.galois_conjugate(h, 3, 1)


def test_orbit_product_examples():
    g = Poly.make(F4, (2, 1))  # t + lam
    op = poly.galois_orbit_product(g, 2)
    assert op.poly == Poly.make(F2, (1, 1, 1))
    assert op.orbit_length == 2 and op.is_irreducible
    # trivial tower: b = 1 keeps g
    op1 = poly.galois_orbit_product(Poly.make(F2, (1, 1, 1)), 1)
    assert op1.poly == Poly.make(F2, (1, 1, 1)) and op1.is_irreducible
    # stabilized orbit gives a proper power, flagged not irreducible
    h = poly.embed_into_extension(Poly.make(F2, (1, 1)), F4)  # t + 1 over F_4
    op2 = poly.galois_orbit_product(h, 2)
    assert op2.orbit_length == 1 and not op2.is_irreducible
    assert op2.poly == Poly.make(F2, (1, 1)) ** 2
    with pytest.raises(NotIrreducible):
        poly.galois_orbit_product(Poly.make(F4, (0, 0, 1)), 2)  # t^2 reducible


@pytest.mark.parametrize("p,b,r", [
    (2, 2, 1), (2, 2, 2), (2, 2, 3), (2, 2, 4),
    (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 2, 2), (2, 4, 1), (5, 2, 1),
])
def test_orbit_products_land_in_irr_br(p, b, r):
    q = p
    ext = gf.field_create(p, b)
    base = gf.field_create(p, 1)
    full = 0
    for g in poly.irr_enumerate(r, ext):
        op = poly.galois_orbit_product(g, b, base_ctx=base)
        assert op.poly.degree == b * r
        assert op.is_irreducible == (op.orbit_length == b)
        if op.is_irreducible:
            assert poly.is_irreducible(op.poly)
            full += 1
    assert full == poly.count_regular_orbit_irr(r, b, q)


def test_regular_orbit_reports():
    rep = poly.regular_orbit_report(1, 2, 2)
    assert rep["count"] == 2
    assert rep["supports"] == "b*|Irr_br(q)|"
    rep = poly.regular_orbit_report(1, 3, 2)
    assert rep["count"] == 6 and rep["supports"] == "b*|Irr_br(q)|"
    # b == r makes the two formulas coincide
    rep = poly.regular_orbit_report(2, 2, 2)
    assert rep["supports"] == "both" and rep["count"] == 6


def test_division_and_gcd():
    f = Poly.make(F3, (1, 0, 2, 1))
    g = Poly.make(F3, (2, 1))
    q, r = divmod(f, g)
    assert q * g + r == f
    assert poly.poly_gcd(f * g, g) == g.monic()
    assert poly.poly_lcm(g, g) == g.monic()


def test_text_roundtrip():
    f = Poly.make(F4, (1, 0, 3, 1))
    assert poly.parse_poly(poly.format_poly(f), F4) == f
    assert poly.format_poly(Poly.zero(F2)) == "0"
    assert poly.parse_poly("0", F2) == Poly.zero(F2)
    assert poly.parse_poly("t^2+t+1", F2) == Poly.make(F2, (1, 1, 1))
    with pytest.raises(ParseError):
        poly.parse_poly("1+zz", F2)
    with pytest.raises(ParseError):
        poly.parse_poly("9*t", F2)
