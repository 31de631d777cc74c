"""Flag-sum censuses: anchors, identities, audits, transfer bounds."""

from fractions import Fraction

import pytest

from nicensus import census, estimate, gf, matrix
from nicensus.census import (
    NISubsetSpec,
    census_exact,
    corollary_sum_check,
    gaussian_binomial,
    get_spec,
    omega,
)
from nicensus.errors import (
    BudgetExceeded,
    IndexOutOfRange,
    NIViolation,
    NonPositiveConstants,
)
from nicensus.matrix import Mat

F2 = gf.field_create(2)
F3 = gf.field_create(3)
F4 = gf.field_create(2, 2)


def test_omega_values():
    assert omega(0, 5) == 1
    assert omega(1, 2) == Fraction(1, 2)
    assert omega(2, 2) == Fraction(3, 8)
    invertibles = sum(1 for M in matrix.all_matrices(2, F2) if matrix.is_invertible(M))
    assert omega(2, 2) == Fraction(invertibles, 16)
    for j in range(1, 5):
        assert omega(j, 3) == Fraction(matrix.gl_order(j, 3), 3 ** (j * j))


def count_subspaces(ctx, d, i):
    """Independent oracle: distinct row spaces of rank-i spanning sets."""
    q = ctx.order
    seen = set()
    for idx in range(q ** (d * i)):
        rows = []
        rem = idx
        for _ in range(i):
            row = []
            for _ in range(d):
                row.append(rem % q)
                rem //= q
            rows.append(row)
        # row_space_basis expects a square matrix; pad with zero rows
        padded = rows + [[0] * d for _ in range(d - i)]
        basis = matrix.row_space_basis(Mat.from_rows(ctx, padded))
        if len(basis) == i:
            seen.add(basis)
    return len(seen)


def test_gaussian_binomial_against_enumeration():
    assert gaussian_binomial(2, 0, 2) == 1
    assert gaussian_binomial(2, 1, 2) == 3 == count_subspaces(F2, 2, 1)
    assert gaussian_binomial(3, 1, 2) == 7 == count_subspaces(F2, 3, 1)
    assert gaussian_binomial(3, 2, 2) == 7 == count_subspaces(F2, 3, 2)
    assert gaussian_binomial(2, 1, 3) == 4 == count_subspaces(F3, 2, 1)
    assert gaussian_binomial(4, 2, 2) == 35 == count_subspaces(F2, 4, 2)
    with pytest.raises(IndexOutOfRange):
        gaussian_binomial(2, 3, 2)


def test_census_all_spec_anchor():
    fc = census_exact(get_spec("all"), 2, F2)
    assert fc.lhs == fc.rhs == Fraction(8, 3) == 1 / omega(2, 2)
    assert [p.n_of_i for p in fc.per_i] == [4, 6, 6]  # nilpotents, rank-1 non-nil, GL
    assert fc.per_i[1].n_of_i == gaussian_binomial(2, 1, 2) * 2 * fc.per_i[1].n_i


def test_census_primary_cyclic_anchor():
    fc = census_exact(get_spec("primary-cyclic-some-f-not-t"), 2, F2)
    assert fc.n_total == 11
    assert fc.lhs == Fraction(11, 6)
    assert Fraction(fc.per_i[2].n_i, fc.per_i[2].gl_i) == Fraction(5, 6)
    assert Fraction(fc.per_i[1].n_i, fc.per_i[1].gl_i) == 1
    assert fc.per_i[0].n_i == 0


def test_census_nilpotent_complement_matches_truncated_sum():
    fc = census_exact(get_spec("nilpotent-complement"), 2, F3)
    cs = corollary_sum_check(2, 3)
    assert fc.lhs == cs.rhs_truncated


def test_zeroth_term_for_nilpotent_containing_specs():
    # d = 1: the term at i = 0 is q^-1 / omega(1, q)
    for ctx in (F2, F3):
        q = ctx.order
        fc = census_exact(get_spec("all"), 1, ctx)
        zeroth = (Fraction(1, q) / omega(1, q)) * Fraction(fc.per_i[0].n_i, 1)
        assert zeroth == Fraction(1, q) / omega(1, q)
        assert fc.per_i[0].n_i == 1


def test_census_closed_forms_match_enumeration():
    for name in ("all", "nilpotent-complement"):
        spec = get_spec(name)
        fc = census_exact(spec, 2, F3)
        for p in fc.per_i:
            if p.i >= 1:
                assert Fraction(p.n_i, p.gl_i) == spec.closed_form_ni(p.i, 3)


def test_census_pc_large_degree_closed_form_on_m24():
    spec = get_spec("pc-large-degree(2)")
    fc = census_exact(spec, 2, F4)
    for p in fc.per_i:
        if p.i >= 1:
            assert Fraction(p.n_i, p.gl_i) == spec.closed_form_ni(p.i, 4)
    assert fc.proportion_in_m == Fraction(112, 256)


def test_census_rejects_non_ni_spec_with_witness():
    bad = NISubsetSpec("rank-d-minus-1", lambda X: matrix.rank(X) == X.n - 1)
    with pytest.raises(NIViolation) as info:
        census_exact(bad, 2, F2)
    assert info.value.witness is not None


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        census_exact(get_spec("all"), 2, F3, budget=10)


def test_flag_independence():
    spec = get_spec("primary-cyclic-some-f-not-t")
    fc = census_exact(spec, 2, F3)
    for trial in range(3):
        g = estimate.sample_gl(2, F3, seed=5, index=trial)
        alt = census.n_i_under_conjugated_flag(spec, 2, F3, g)
        assert list(alt) == [p.n_i for p in fc.per_i]


def test_corollary_sums_exact():
    for q in (2, 3, 4, 5, 7):
        for d in range(0, 9):
            cs = corollary_sum_check(d, q)
            assert cs.holds
    cs = corollary_sum_check(1, 2)
    assert cs.lhs_full == 2 == cs.rhs_full


def test_transfer_bounds():
    assert census.transfer_bound_exp(1, Fraction(1, 2), 3, 2) == 1 - Fraction(3, 2) * 3 * Fraction(1, 8)
    lb = census.transfer_bound_linear(1, Fraction(1, 100), 4, 2)
    assert lb.tight == (1 - Fraction(3, 400)) * Fraction(15, 16)
    assert lb.tight > lb.relaxed
    with pytest.raises(NonPositiveConstants):
        census.transfer_bound_exp(0, 1, 2, 2)
    with pytest.raises(NonPositiveConstants):
        census.transfer_bound_linear(1, 0, 2, 2)


def test_transfer_bound_on_census_data():
    # a = 1 with tiny k: the bound degrades to roughly 1 - q^-d, true for N = M
    tiny = Fraction(1, 10 ** 9)
    for d, ctx in [(2, F2), (2, F3)]:
        fc = census_exact(get_spec("all"), d, ctx)
        bound = census.transfer_bound_linear(1, tiny, d, ctx.order)
        assert fc.proportion_in_m >= bound.tight
    # fitted k for the primary cyclic family
    a = Fraction(5, 6)
    for d in (2, 3):
        fc = census_exact(get_spec("primary-cyclic-some-f-not-t"), d, F2)
        k = census.fit_linear_k(fc.per_i, a) or Fraction(1, 1000)
        bound = census.transfer_bound_linear(a, k, d, 2)
        assert fc.proportion_in_m >= bound.tight >= bound.relaxed


def test_power_sum_bound():
    lhs, rhs = census.power_sum_bound_check(2, 2)
    assert (lhs, rhs) == (8, 12)
    for d in range(1, 13):
        for q in (2, 3, 4, 5):
            lhs, rhs = census.power_sum_bound_check(d, q)
            assert lhs < rhs


def test_ni_verify_builtin_specs():
    for name in ("all", "invertible", "separable", "unipotent", "has-eigenvalue(1)"):
        for ctx in (F2, F3):
            rep = census.ni_verify(get_spec(name), 2, ctx)
            assert rep.ok and rep.exhaustive


def test_ni_verify_finds_violations():
    bad = NISubsetSpec("rank-d-minus-1", lambda X: matrix.rank(X) == X.n - 1)
    rep = census.ni_verify(bad, 2, F2)
    kinds = {v[0] for v in rep.violations}
    assert "nilpotent-part-dependence" in kinds
    trace_dependent = NISubsetSpec(
        "first-entry", lambda X: X.rows[0][0] == 1)  # not conjugation closed
    rep = census.ni_verify(trace_dependent, 2, F2)
    assert any(v[0] == "conjugation-dependence" for v in rep.violations)


def test_get_spec_errors_and_listing():
    with pytest.raises(KeyError):
        get_spec("no-such-spec")
    with pytest.raises(KeyError):
        get_spec("has-eigenvalue")  # parameter required
    assert "all" in census.list_specs()


def test_contains_nilpotents_flag_checked():
    wrong = NISubsetSpec("all-but-flagged", lambda X: True,
                         contains_nilpotents=False)
    with pytest.raises(NIViolation):
        census_exact(wrong, 2, F2)
