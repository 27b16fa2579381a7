from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from plugins.module_utils.errors import NumericError
from plugins.module_utils.fox import abelianization, delete_row, fox_matrix
from plugins.module_utils.knots import OraclePresentation, catalog, fibered_presentation, unknot_presentation
from plugins.module_utils.vna import (
    DeltaReport,
    NumericParams,
    TwistedMatrix,
    block_diagonal,
    delta_at,
    determinant_ladder,
    diagonal_blocks,
    extrapolate_to_zero,
    factored_det,
    fk_det,
    graded_parts,
    monomial_factorization,
    monomial_territory,
    monomiality_bound,
    norm_bound,
    power_ladder,
    twist,
    vn_trace,
    vn_trace_product,
)
from plugins.module_utils.words import IDENTITY, CyclicOracle, GroupRingElement, TrivialOracle, reduce_word

A = ((0, 1),)
B = ((1, 1),)


def element(terms: dict) -> GroupRingElement:
    return GroupRingElement(terms)


def ring_elements():
    letters = st.tuples(st.integers(0, 1), st.integers(-2, 2))
    words = st.lists(letters, max_size=3).map(reduce_word)
    return st.dictionaries(words, st.integers(-3, 3), max_size=3).map(GroupRingElement)


def square_matrices(size: int):
    rows = st.lists(st.lists(ring_elements(), min_size=size, max_size=size), min_size=size, max_size=size)
    return rows.map(lambda entries: TwistedMatrix.from_entries(entries, TrivialOracle(2)))


def knot_matrix(target: OraclePresentation, t: float):
    """Twisted deleted Fox matrix with the abelianization it was twisted by."""
    presentation = target.presentation
    alpha = abelianization(presentation)
    deleted = delete_row(fox_matrix(presentation), alpha.first_nonzero())
    return twist(deleted, t, alpha, target.oracle), alpha


@pytest.fixture()
def free_matrix() -> TwistedMatrix:
    oracle = TrivialOracle(2)
    return TwistedMatrix.from_entries(
        [
            [element({IDENTITY: 2.0, A: 1.0}), element({B: 1.0})],
            [element({IDENTITY: 0.5}), element({((0, -1),): 1.0})],
        ],
        oracle,
    )


def test_numeric_params_defaults():
    params = NumericParams()
    assert params.epsilons == (0.1, 0.01, 0.001)
    assert params.terms == 12
    assert params.threads == 1
    assert params.max_support == 25_000
    assert params.method == "auto"


NUMERIC_PARAMS_ERROR_TEST_CASES = (
    {"epsilons": ()},
    {"epsilons": (0.1, 0.0)},
    {"terms": 0},
    {"prune": -1.0},
    {"safety": 1.0},
    {"threads": 0},
    {"max_support": 0},
    {"method": "exact"},
)


@pytest.mark.parametrize("kwargs", NUMERIC_PARAMS_ERROR_TEST_CASES)
def test_numeric_params_errors(kwargs):
    with pytest.raises(NumericError):
        NumericParams(**kwargs)


def test_twisted_matrix_validation():
    oracle = TrivialOracle(1)
    with pytest.raises(NumericError):
        TwistedMatrix.scalar(1, 1.0, oracle, t=0.0)
    with pytest.raises(NumericError):
        TwistedMatrix(((GroupRingElement.one(), GroupRingElement.one()),), 1.0, oracle)


def test_twist():
    oracle = CyclicOracle((1, 1))
    alpha = abelianization(unknot_presentation().presentation)
    matrix = ((element({((0, 2),): 1.0, ((0, 1), (1, -1)): -3.0}),),)

    result = twist(matrix, 2.0, alpha, oracle)
    assert result.entries[0][0] == element({((0, 2),): 4.0, IDENTITY: -3.0})

    with pytest.raises(NumericError):
        twist(matrix, -1.0, alpha, oracle)


def test_vn_trace_product_matches_composition(free_matrix):
    other = free_matrix.adjoint().shift(1.0)
    assert math.isclose(vn_trace_product(free_matrix, other), vn_trace(free_matrix.compose(other)))
    assert math.isclose(vn_trace_product(other, free_matrix), vn_trace(other.compose(free_matrix)))


def test_adjoint_gram_trace(free_matrix):
    # tr(M*∘M) is the squared ℓ2 norm of the coefficients
    gram = free_matrix.adjoint().compose(free_matrix)
    assert math.isclose(vn_trace(gram), 4.0 + 1.0 + 1.0 + 0.25 + 1.0)


def test_norm_bound(free_matrix):
    assert norm_bound(TwistedMatrix.scalar(1, -3.0, TrivialOracle(1))) == 3.0
    # row sums 4 and 1.5, column sums 3.5 and 2
    assert math.isclose(norm_bound(free_matrix), math.sqrt(4.0 * 3.5))
    assert norm_bound(TwistedMatrix((), 1.0, TrivialOracle(1))) == 0.0


def test_pruned(free_matrix):
    pruned, mass = free_matrix.pruned(1e-12)
    assert mass == 0.0
    assert pruned == free_matrix

    pruned, mass = TwistedMatrix.from_entries(
        [[element({IDENTITY: 1.0, A: 1e-14, B: -2e-14})]], TrivialOracle(2)
    ).pruned(1e-12)
    assert math.isclose(mass, 3e-14)
    assert pruned.entries[0][0] == GroupRingElement.one()
    assert free_matrix.shift(1e-14).pruned(0.0)[1] == 0.0


def test_block_diagonal(free_matrix):
    result = block_diagonal(free_matrix, TwistedMatrix.scalar(1, 2.0, free_matrix.oracle))
    assert result.size == 3
    assert result.entries[2][2] == GroupRingElement.one(2.0)
    assert result.entries[0][2].is_zero()


@pytest.mark.parametrize("value", [0.5, 1.0, 2.0, -3.0])
def test_fk_det_scalar(value):
    # FK determinant of (a² + ε)^½ for a scalar a
    result = fk_det(TwistedMatrix.scalar(1, value, TrivialOracle(1)), 1e-3, 8)
    assert math.isclose(result.estimate, math.sqrt(value**2 + 1e-3), rel_tol=1e-9)
    assert result.converged
    assert result.terms == 8
    assert len(result.partial_estimates) == 8
    assert math.isclose(result.lower_bound, result.estimate, rel_tol=1e-9)
    assert result.method == "series"


def test_fk_det_block_diagonal_is_multiplicative():
    oracle = TrivialOracle(1)
    first = TwistedMatrix.scalar(1, 2.0, oracle)
    second = TwistedMatrix.scalar(1, 3.0, oracle)
    combined = fk_det(block_diagonal(first, second), 1e-3, 40).estimate
    separate = fk_det(first, 1e-3, 8).estimate * fk_det(second, 1e-3, 8).estimate
    assert math.isclose(combined, separate, rel_tol=1e-9)


def test_fk_det_free_group_blocks_are_multiplicative(free_matrix):
    oracle = free_matrix.oracle
    small = TwistedMatrix.from_entries([[element({IDENTITY: 1.0, B: 0.5})]], oracle)
    combined = block_diagonal(free_matrix, small)
    assert diagonal_blocks(combined) == [(0, 1), (2,)]

    result = fk_det(combined, 0.1, 6)
    first, second = fk_det(free_matrix, 0.1, 6), fk_det(small, 0.1, 6)
    assert math.isclose(result.estimate, first.estimate * second.estimate, rel_tol=1e-12)
    assert math.isclose(result.lower_bound, first.lower_bound * second.lower_bound, rel_tol=1e-12)
    assert result.norm_bound_used == max(first.norm_bound_used, second.norm_bound_used)
    assert result.converged == (first.converged and second.converged)


def test_diagonal_blocks_follow_the_nonzero_pattern():
    oracle = TrivialOracle(2)
    zero = GroupRingElement.zero()
    matrix = TwistedMatrix(
        (
            (zero, zero, element({A: 1.0})),
            (zero, element({B: 2.0}), zero),
            (element({IDENTITY: 1.0}), zero, zero),
        ),
        1.0,
        oracle,
    )
    assert diagonal_blocks(matrix) == [(0, 2), (1,)]
    assert matrix.submatrix((0, 2)).entries == ((zero, element({A: 1.0})), (element({IDENTITY: 1.0}), zero))


SCALAR_LADDER_TEST_CASES = tuple((value, size) for value in (0.5, 2.0, -3.0) for size in (1, 2, 3))


@pytest.mark.parametrize(("value", "size"), SCALAR_LADDER_TEST_CASES)
def test_determinant_ladder_scalar_matrices(value, size):
    params = NumericParams(terms=8)
    report = determinant_ladder(TwistedMatrix.scalar(size, value, TrivialOracle(1)), params)

    for epsilon, rung in zip(params.epsilons, report.rungs):
        assert math.isclose(rung.estimate, (value**2 + epsilon) ** (size / 2), rel_tol=1e-9)
        assert rung.converged
    assert math.isclose(report.extrapolated, abs(value) ** size, rel_tol=1e-4)


def test_fk_det_support_budget(free_matrix):
    full = fk_det(free_matrix, 0.1, 8)
    result = fk_det(free_matrix, 0.1, 8, max_support=1)

    assert result.terms == 2
    assert result.terms_requested == 8
    assert result.truncated
    assert not result.converged
    assert result.partial_estimates == full.partial_estimates[:2]
    assert result.to_dict()["terms_requested"] == 8


def test_power_ladder_respects_the_budget(free_matrix):
    x = free_matrix.adjoint().compose(free_matrix)
    powers, _ = power_ladder(x, 10, 0.0, 200)

    assert len(powers) < 11
    assert all(power.support <= 200 for power in powers[1:-1])
    assert [p.entries for p in power_ladder(x, 10, 0.0, 200)[0]] == [p.entries for p in powers]


def test_fk_det_small_epsilon_is_not_converged(free_matrix):
    # the tail bound grows like 1/ε
    result = fk_det(free_matrix, 1e-3, 4)
    assert not result.converged
    assert result.lower_bound < result.estimate


def test_fk_det_empty_matrix():
    result = fk_det(TwistedMatrix((), 1.0, TrivialOracle(1)), 1e-3, 4)
    assert result.estimate == 1.0
    assert result.converged


def test_fk_det_partials_do_not_increase(free_matrix):
    result = fk_det(free_matrix, 0.1, 6, prune=0.0)
    for previous, current in zip(result.partial_estimates, result.partial_estimates[1:]):
        assert current <= previous + 1e-12
    assert all(trace >= -1e-12 for trace in result.traces)


def test_fk_det_threads_match(free_matrix):
    single = fk_det(free_matrix, 0.1, 6)
    threaded = fk_det(free_matrix, 0.1, 6, threads=3)
    assert single.traces == threaded.traces
    assert single.estimate == threaded.estimate


FK_DET_ERROR_TEST_CASES = (
    {"epsilon": 0.0, "terms": 4},
    {"epsilon": 0.1, "terms": 0},
    {"epsilon": 0.1, "terms": 4, "prune": -1.0},
)


@pytest.mark.parametrize("kwargs", FK_DET_ERROR_TEST_CASES)
def test_fk_det_errors(free_matrix, kwargs):
    with pytest.raises(NumericError):
        fk_det(free_matrix, **kwargs)


def test_extrapolate_to_zero():
    assert extrapolate_to_zero((0.5,), (3.0,)) == 3.0
    assert math.isclose(extrapolate_to_zero((0.1, 0.01), (1.2, 1.02)), 1.0)
    assert math.isclose(extrapolate_to_zero((0.1, 0.01, 0.001), (1.11, 1.0101, 1.001001)), 1.0, abs_tol=1e-12)


def test_determinant_ladder_uses_finest_epsilon():
    matrix = TwistedMatrix.scalar(1, 1.0, TrivialOracle(1))
    report = determinant_ladder(matrix, NumericParams(epsilons=(1e-3, 1e-1), terms=8), normalization=2.0)
    assert isinstance(report, DeltaReport)
    assert math.isclose(report.estimate, math.sqrt(1.001) / 2.0, rel_tol=1e-9)
    assert report.values[1] > report.values[0]
    assert report.to_dict()["normalization"] == 2.0
    assert len(report.to_dict()["rungs"]) == 2


@pytest.mark.parametrize("t", [0.25, 0.5, 1.0, 2.0, 4.0])
def test_delta_at_unknot(t):
    report = delta_at(unknot_presentation(), t, NumericParams(terms=8))
    assert report.normalization == 1.0
    assert math.isclose(report.estimate, math.sqrt(1.001), rel_tol=1e-9)
    assert abs(report.extrapolated - 1.0) < 1e-6
    assert report.converged
    assert report.method == "series"


def test_monomiality_bound(figure_eight_monodromy):
    assert math.isclose(monomiality_bound(figure_eight_monodromy), 3.0)


TERRITORY_TEST_CASES = (
    (0.2, "low"),
    (1.0, "unknown"),
    (2.0, "unknown"),
    (4.0, "high"),
)


@pytest.mark.parametrize(("t", "region"), TERRITORY_TEST_CASES)
def test_monomial_territory(figure_eight_monodromy, t, region):
    territory = monomial_territory(figure_eight_monodromy, t)
    assert territory.region == region
    assert territory.bound == 3.0


def test_monomial_territory_rejects_nonpositive(figure_eight_monodromy):
    with pytest.raises(NumericError):
        monomial_territory(figure_eight_monodromy, 0.0)


@pytest.mark.slow
def test_delta_at_figure_eight_is_an_upper_bound(figure_eight_monodromy):
    target = fibered_presentation(1, figure_eight_monodromy)
    report = delta_at(target, 1.0, NumericParams(epsilons=(0.1,), terms=8))
    rung = report.rungs[0]

    assert report.estimate >= catalog("4_1").exp_vol_over_6pi - 1e-6
    for previous, current in zip(rung.partial_estimates, rung.partial_estimates[1:]):
        assert current <= previous + 1e-9


@pytest.fixture()
def figure_eight(figure_eight_monodromy) -> OraclePresentation:
    return fibered_presentation(1, figure_eight_monodromy)


@pytest.fixture()
def trefoil(trefoil_monodromy) -> OraclePresentation:
    return fibered_presentation(1, trefoil_monodromy)


def test_graded_parts_of_a_fibered_knot(figure_eight):
    matrix, alpha = knot_matrix(figure_eight, 4.0)
    parts = graded_parts(matrix, alpha)

    assert set(parts) == {0, 1}
    z = ((0, 1),)
    assert parts[1].entries[0][0] == element({z: 4.0})
    assert parts[1].entries[0][1].is_zero()


FACTORIZATION_TEST_CASES = (
    (4.0, "high", -1),
    (10.0, "high", -1),
    (0.25, "low", 1),
    (0.1, "low", 1),
)


@pytest.mark.parametrize(("t", "route", "degree"), FACTORIZATION_TEST_CASES)
def test_monomial_factorization_remainder_has_vanishing_traces(figure_eight, t, route, degree):
    matrix, alpha = knot_matrix(figure_eight, t)
    factorization = monomial_factorization(matrix, alpha)

    assert factorization.route == route
    assert factorization.remainder_bound < 1
    power = factorization.remainder
    for n in range(1, 5):
        assert vn_trace(power) == 0.0
        assert all(alpha(w) == n * degree for row in power.entries for entry in row for w in entry.terms)
        power = power.compose(factorization.remainder)


@pytest.mark.parametrize("t", [1.0, 2.0, 0.5])
def test_monomial_factorization_outside_the_territory(figure_eight, t):
    matrix, alpha = knot_matrix(figure_eight, t)
    assert monomial_factorization(matrix, alpha) is None
    assert factored_det(matrix, alpha, 8) is None


def test_monomial_factorization_needs_a_dominating_part():
    matrix, alpha = knot_matrix(unknot_presentation(), 4.0)
    assert monomial_factorization(matrix, alpha) is None


MONOMIAL_DELTA_TEST_CASES = (
    ("figure_eight", 4.0, 16.0),
    ("figure_eight", 0.25, 1.0),
    ("trefoil", 3.0, 9.0),
    ("trefoil", 0.25, 1.0),
)


@pytest.mark.parametrize(("knot", "t", "expected"), MONOMIAL_DELTA_TEST_CASES)
def test_delta_at_monomial_territory_is_exact(request, knot, t, expected):
    report = delta_at(request.getfixturevalue(knot), t, NumericParams(terms=6))

    assert report.method == "factored"
    assert report.epsilon == 0.0
    assert report.converged
    assert math.isclose(report.estimate, expected, rel_tol=1e-12)
    assert report.lower_bound == report.estimate == report.extrapolated
    assert report.to_dict()["method"] == "factored"


@pytest.mark.parametrize("t", [4.0, 5.0, 10.0])
def test_delta_at_figure_eight_reciprocity(figure_eight, t):
    # genus 1: the values at t and 1/t differ by t²
    high = delta_at(figure_eight, t).estimate
    low = delta_at(figure_eight, 1 / t).estimate
    assert math.isclose(high / t**2, low, rel_tol=1e-12)


@pytest.mark.parametrize(("t", "exact"), [(4.0, 16.0), (0.25, 1.0)])
def test_series_bounds_the_exact_value_from_above(figure_eight, t, exact):
    report = delta_at(figure_eight, t, NumericParams(epsilons=(0.1,), terms=6, method="series"))

    assert report.method == "series"
    assert report.epsilon == 0.1
    assert report.estimate >= exact * (1 - 1e-3)
    partials = report.rungs[0].partial_estimates
    for previous, current in zip(partials, partials[1:]):
        assert current <= previous + 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2).flatmap(square_matrices))
def test_gram_trace_is_positive(matrix):
    gram = matrix.adjoint().compose(matrix)
    squares = math.fsum(c * c for row in matrix.entries for entry in row for c in entry.terms.values())
    assert vn_trace(gram) >= 0
    assert math.isclose(vn_trace(gram), squares, abs_tol=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2).flatmap(lambda size: st.tuples(square_matrices(size), square_matrices(size))))
def test_trace_is_tracial(pair):
    x, y = pair
    assert math.isclose(vn_trace(x.compose(y)), vn_trace(y.compose(x)), abs_tol=1e-9)
    assert math.isclose(vn_trace_product(x, y), vn_trace_product(y, x), abs_tol=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2).flatmap(square_matrices), st.sampled_from([0.5, 2.0, -3.0]))
def test_fk_det_scales_with_the_matrix(matrix, factor):
    # (λM)*(λM) + λ²ε = λ²(M*M + ε), so the series operator is unchanged
    scaled = fk_det(matrix.scale(factor), 0.1 * factor**2, 4, prune=0.0).estimate
    plain = fk_det(matrix, 0.1, 4, prune=0.0).estimate
    assert math.isclose(scaled, abs(factor) ** matrix.size * plain, rel_tol=1e-9)
