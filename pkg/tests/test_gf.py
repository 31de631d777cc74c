"""Field arithmetic: axioms by exhaustion, Frobenius, embeddings, parsing."""

import itertools

import pytest

from nicensus import gf
from nicensus.errors import (
    DegreeMismatch,
    FieldMismatch,
    NonPrimeCharacteristic,
    NotASubfield,
    ParseError,
    ReducibleModulus,
)

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)]


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, k):
    ctx = gf.field_create(p, k)
    elems = list(ctx.elements())
    assert len(elems) == p ** k
    for a in elems:
        assert ctx.add(a, 0) == a
        assert ctx.mul(a, 1) == a
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
        for b in elems:
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
    # associativity and distributivity on every triple
    for a, b, c in itertools.product(elems, repeat=3):
        assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))


def test_element_encoding_roundtrip():
    ctx = gf.field_create(3, 2)
    for a in ctx.elements():
        assert ctx.from_digits(ctx.digits(a)) == a


def test_canonical_moduli():
    assert gf.field_create(2, 2).modulus == (1, 1, 1)
    # low-degree-first comparison picks t^3 + t^2 + 1 over F_2
    assert gf.field_create(2, 3).modulus == (1, 0, 1, 1)
    assert gf.field_create(2, 1).modulus == (0, 1)


def test_field_create_errors():
    with pytest.raises(NonPrimeCharacteristic):
        gf.field_create(4, 1)
    with pytest.raises(ReducibleModulus):
        gf.field_create(2, 2, (1, 0, 1))  # t^2 + 1 = (t+1)^2 over F_2
    with pytest.raises(DegreeMismatch):
        gf.field_create(2, 2, (1, 1, 1, 1))
    with pytest.raises(DegreeMismatch):
        gf.field_create(2, 0)


def test_explicit_modulus_accepted():
    ctx = gf.field_create(2, 2, (1, 1, 1))
    assert ctx.order == 4
    lam = 2
    assert ctx.mul(lam, lam) == ctx.add(lam, 1)


def test_frobenius_fixes_prime_field():
    ctx = gf.field_create(2, 1)
    x = gf.FElt(ctx, 1)
    assert gf.frobenius(x, 2) == x


def test_frobenius_example_f4():
    ctx = gf.field_create(2, 2)
    lam = gf.FElt(ctx, 2)
    assert gf.frobenius(lam, 2).value == ctx.add(2, 1)


@pytest.mark.parametrize("p,k,q", [(2, 2, 2), (2, 3, 2), (3, 2, 3), (2, 4, 4), (3, 4, 9)])
def test_frobenius_is_automorphism_and_fixed_field(p, k, q):
    # q^b <= 81 cases are exhaustively checkable
    ctx = gf.field_create(p, k)
    frob = lambda a: ctx.frob(a, q)
    fixed = []
    for a in ctx.elements():
        for b in ctx.elements():
            assert frob(ctx.add(a, b)) == ctx.add(frob(a), frob(b))
            assert frob(ctx.mul(a, b)) == ctx.mul(frob(a), frob(b))
        if frob(a) == a:
            fixed.append(a)
    assert len(fixed) == q
    sub = gf.field_create(p, ctx.subfield_degree(q))
    assert sorted(fixed) == sorted(gf.subfield_embedding(sub, ctx))


def test_frobenius_b_fold_iterate_is_identity():
    ctx = gf.field_create(2, 4)
    b = 4
    for a in ctx.elements():
        y = a
        for _ in range(b):
            y = ctx.frob(y, 2)
        assert y == a


def test_frobenius_not_a_subfield():
    ctx = gf.field_create(2, 3)
    with pytest.raises(NotASubfield):
        ctx.frob(1, 4)  # F_4 does not sit in F_8
    with pytest.raises(NotASubfield):
        ctx.frob(1, 3)


def test_degree_over_subfield():
    F4 = gf.field_create(2, 2)
    assert gf.degree_over_subfield(gf.FElt(F4, 1), 2) == 1
    assert gf.degree_over_subfield(gf.FElt(F4, 2), 2) == 2
    F8 = gf.field_create(2, 3)
    gen = gf.FElt(F8, 2)
    assert gf.degree_over_subfield(gen, 2) == 3
    # every element degree divides the extension degree
    F16 = gf.field_create(2, 4)
    for a in F16.elements():
        assert 4 % gf.degree_over_subfield(gf.FElt(F16, a), 2) == 0


def test_felt_operations():
    ctx = gf.field_create(3, 1)
    a, b = gf.FElt(ctx, 2), gf.FElt(ctx, 2)
    assert (a + b).value == 1
    assert (a * b).value == 1
    assert (a - b).value == 0
    assert (a / b).value == 1
    assert (-a).value == 1
    assert (a ** 4).value == ctx.pow_elt(2, 4)
    assert a.coeffs == (2,)
    other = gf.FElt(gf.field_create(2, 1), 1)
    with pytest.raises(FieldMismatch):
        a + other


def test_subfield_embedding_is_homomorphism():
    sub = gf.field_create(2, 2)
    ext = gf.field_create(2, 4)
    emb = gf.subfield_embedding(sub, ext)
    assert emb[0] == 0 and emb[1] == 1
    for a in sub.elements():
        for b in sub.elements():
            assert emb[sub.add(a, b)] == ext.add(emb[a], emb[b])
            assert emb[sub.mul(a, b)] == ext.mul(emb[a], emb[b])
    assert len(set(emb)) == sub.order


def test_descriptor_roundtrip():
    for text in ["2", "3", "2^2", "2^4", "3^2"]:
        ctx = gf.parse_field_descriptor(text)
        again = gf.parse_field_descriptor(gf.describe_field(ctx))
        assert again is ctx
    pinned = gf.parse_field_descriptor("2^2/7")
    assert pinned.modulus == (1, 1, 1)
    with pytest.raises(ParseError):
        gf.parse_field_descriptor("2^x")
    with pytest.raises(ParseError):
        gf.parse_field_descriptor("2^2/zz")
