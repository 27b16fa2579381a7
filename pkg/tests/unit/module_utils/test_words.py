from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from plugins.module_utils.errors import (
    AlphabetError,
    DeficiencyError,
    InvalidAutomorphismError,
    ParseError,
)
from plugins.module_utils.words import (
    IDENTITY,
    Automorphism,
    CyclicOracle,
    FreeByCyclicOracle,
    GroupPresentation,
    GroupRingElement,
    TrivialOracle,
    adjoint,
    compose,
    format_word,
    identity_matrix,
    is_identity,
    matrix_adjoint,
    matrix_isclose,
    nielsen_moves,
    normal_form,
    parse_word,
    reduce_word,
    ring_mul,
    shift_word,
    word_inverse,
    word_length,
    word_mul,
)


def words(alphabet: int = 3, max_size: int = 6):
    letters = st.tuples(st.integers(0, alphabet - 1), st.integers(-3, 3))
    return st.lists(letters, max_size=max_size).map(reduce_word)


def ring_elements(alphabet: int = 2):
    return st.dictionaries(words(alphabet, 3), st.integers(-3, 3), max_size=3).map(GroupRingElement)


REDUCE_TEST_CASES = (
    ([], IDENTITY),
    ([(0, 1), (0, -1)], IDENTITY),
    ([(0, 1), (1, 2), (1, -2), (0, -1)], IDENTITY),
    ([(0, 2), (0, 1)], ((0, 3),)),
    ([(0, 1), (1, 0), (0, 1)], ((0, 2),)),
    ([(1, 1), (0, 1), (0, -1), (2, -1)], ((1, 1), (2, -1))),
)


@pytest.mark.parametrize(("raw", "expected"), REDUCE_TEST_CASES)
def test_reduce_word(raw, expected):
    assert reduce_word(raw) == expected


SIGNED_LETTERS = ((0, 1), (0, -1), (1, 1), (1, -1))


@pytest.mark.slow
def test_reduce_word_is_confluent():
    # every way of cancelling first gives the same reduced word
    for length in range(9):
        for raw in itertools.product(SIGNED_LETTERS, repeat=length):
            reduced = reduce_word(raw)
            for cut in range(1, length):
                assert reduce_word(reduce_word(raw[:cut]) + raw[cut:]) == reduced
                assert reduce_word(raw[:cut] + reduce_word(raw[cut:])) == reduced


@given(words())
def test_word_times_inverse_is_identity(w):
    assert word_mul(w, word_inverse(w)) == IDENTITY
    assert word_mul(word_inverse(w), w) == IDENTITY


@given(words(), words(), words())
def test_word_mul_is_associative(u, v, w):
    assert word_mul(word_mul(u, v), w) == word_mul(u, word_mul(v, w))


@given(words(), words())
def test_word_mul_matches_reduction(u, v):
    assert word_mul(u, v) == reduce_word(u + v)


def test_word_length_and_shift():
    w = ((0, 2), (1, -3))
    assert word_length(w) == 5
    assert shift_word(w, 1) == ((1, 2), (2, -3))


PARSE_TEST_CASES = (
    ("a b^-1 a^3", ((0, 1), (1, -1), (0, 3))),
    ("a^(2) b", ((0, 2), (1, 1))),
    ("a a^-1", IDENTITY),
    ("1", IDENTITY),
    ("e", IDENTITY),
    ("", IDENTITY),
)


@pytest.mark.parametrize(("text", "expected"), PARSE_TEST_CASES)
def test_parse_word(text, expected):
    assert parse_word(text, "ab") == expected


def test_parse_word_unknown_generator():
    with pytest.raises(ParseError) as excinfo:
        parse_word("a c", "ab")
    assert excinfo.value.position == 2


def test_parse_word_unexpected_character():
    with pytest.raises(ParseError) as excinfo:
        parse_word("a * b", "ab")
    assert excinfo.value.position == 2


def test_format_word():
    assert format_word(((0, 1), (1, -1), (0, 3))) == "a b^-1 a^3"
    assert format_word(IDENTITY) == "1"
    assert format_word(((0, 1), (1, 1)), ("z", "a")) == "z a"


def test_group_ring_arithmetic():
    a = GroupRingElement.of(((0, 1),))
    b = GroupRingElement.of(((1, 1),), 2.0)
    product = (a + b) * GroupRingElement.of(((0, -1),))

    assert product.coefficient(IDENTITY) == 1.0
    assert product.coefficient(((1, 1), (0, -1))) == 2.0
    assert product.norm1() == 3.0
    assert (a - a).is_zero()
    assert GroupRingElement({IDENTITY: 0.0}).is_zero()


def test_group_ring_format():
    x = GroupRingElement({IDENTITY: 1.0, ((0, -1),): -2.5})
    assert x.format() == "1*1 + -2.5*a^-1"
    assert GroupRingElement.zero().format() == "0"


@settings(max_examples=50)
@given(ring_elements(), ring_elements())
def test_adjoint_reverses_products(x, y):
    assert adjoint(ring_mul(x, y)).isclose(ring_mul(adjoint(y), adjoint(x)))


@settings(max_examples=50)
@given(ring_elements(), ring_elements(), ring_elements())
def test_ring_mul_is_associative(x, y, z):
    assert ring_mul(ring_mul(x, y), z).isclose(ring_mul(x, ring_mul(y, z)))


def test_compose_with_identity():
    a = GroupRingElement.of(((0, 1),))
    b = GroupRingElement.of(((1, -1),), 3.0)
    matrix = ((a, b), (b, a))

    assert matrix_isclose(compose(matrix, identity_matrix(2)), matrix)
    assert matrix_isclose(compose(identity_matrix(2), matrix), matrix)


def test_compose_order():
    # (X∘Y)_ij = Σ_k Y_kj·X_ik
    a = ((GroupRingElement.of(((0, 1),)),),)
    b = ((GroupRingElement.of(((1, 1),)),),)
    assert compose(a, b)[0][0] == GroupRingElement.of(((1, 1), (0, 1)))


def test_matrix_adjoint_transposes():
    a = GroupRingElement.of(((0, 1),))
    zero = GroupRingElement.zero()
    matrix = ((zero, a), (zero, zero))
    result = matrix_adjoint(matrix)
    assert result[1][0] == GroupRingElement.of(((0, -1),))
    assert result[0][1].is_zero()


def test_presentation_deficiency():
    presentation = GroupPresentation(2, (((0, 1), (1, -1)),))
    assert presentation.deficiency == 1
    presentation.check_deficiency_one()
    assert presentation.format() == "< a b | a b^-1 >"

    with pytest.raises(DeficiencyError):
        GroupPresentation(2, ()).check_deficiency_one()


def test_presentation_unknown_generator():
    with pytest.raises(AlphabetError):
        GroupPresentation(1, (((1, 1),),))


def test_automorphism_figure_eight(figure_eight_monodromy):
    phi = figure_eight_monodromy
    assert phi.rank == 2
    assert phi.abelianized() == [[1, 1], [1, 2]]
    assert phi.trace() == 3
    assert phi.apply(((0, 1),)) == ((0, 1), (1, 1))
    assert phi.apply_inverse(phi.apply(((1, 1),))) == ((1, 1),)
    assert phi.format() == "a -> a b, b -> b a b"


@given(words(alphabet=2, max_size=4), st.integers(-3, 3))
def test_automorphism_power_roundtrip(w, n):
    phi = Automorphism.from_text(["a b", "b a b"], ["a^2 b^-1", "b a^-1"])
    assert phi.power(phi.power(w, n), -n) == w


def test_automorphism_compose_with_inverse(figure_eight_monodromy):
    phi = figure_eight_monodromy
    assert phi.compose(phi.inverse()) == Automorphism.identity(2)
    assert phi.inverse().compose(phi) == Automorphism.identity(2)


INVALID_AUTOMORPHISM_TEST_CASES = (
    (["a b", "b"], ["a", "b"]),
    (["a", "b"], ["a"]),
    (["a", "b"], ["a", "a"]),
)


@pytest.mark.parametrize(("images", "inverse_images"), INVALID_AUTOMORPHISM_TEST_CASES)
def test_invalid_automorphism(images, inverse_images):
    with pytest.raises(InvalidAutomorphismError):
        Automorphism.from_text(images, inverse_images)


def test_nielsen_moves():
    moves = nielsen_moves(2)
    # 2 inversions, 4 transvections, 1 swap
    assert len(moves) == 7
    for move in moves:
        assert move.compose(move.inverse()) == Automorphism.identity(2)


def test_trivial_oracle():
    oracle = TrivialOracle(2)
    assert oracle.normal_form(((0, 1), (0, -1), (1, 2))) == ((1, 2),)
    assert is_identity(((1, 1), (1, -1)), oracle)
    with pytest.raises(AlphabetError):
        oracle.normal_form(((2, 1),))


def test_cyclic_oracle():
    oracle = CyclicOracle((1, 1))
    assert oracle.normal_form(((0, 1), (1, -1))) == IDENTITY
    assert oracle.normal_form(((0, 2), (1, 1))) == ((0, 3),)
    assert oracle.multiply(((0, 2),), ((0, -2),)) == IDENTITY
    assert oracle.inverse(((0, 3),)) == ((0, -3),)
    with pytest.raises(AlphabetError):
        oracle.normal_form(((2, 1),))


def test_free_by_cyclic_conjugation(figure_eight_monodromy):
    oracle = FreeByCyclicOracle(figure_eight_monodromy)
    # z a z^-1 = φ(a) = a b
    assert normal_form(((0, 1), (1, 1), (0, -1)), oracle) == ((1, 1), (2, 1))
    # z^-1 a z = φ^-1(a) = a^2 b^-1
    assert normal_form(((0, -1), (1, 1), (0, 1)), oracle) == ((1, 2), (2, -1))
    pushed = figure_eight_monodromy.power(((0, 1),), -2)
    assert normal_form(((1, 1), (0, 2)), oracle) == ((0, 2),) + shift_word(pushed, 1)


def test_free_by_cyclic_relators_are_trivial(figure_eight_monodromy):
    oracle = FreeByCyclicOracle(figure_eight_monodromy)
    for i, image in enumerate(figure_eight_monodromy.images):
        relator = ((0, 1), (i + 1, 1), (0, -1)) + word_inverse(shift_word(image, 1))
        assert oracle.is_identity(relator)
    assert not oracle.is_identity(((0, 1),))


@settings(max_examples=50)
@given(
    words(alphabet=3, max_size=4).filter(lambda w: all(abs(e) <= 2 for g, e in w if g == 0)),
    words(alphabet=3, max_size=4).filter(lambda w: all(abs(e) <= 2 for g, e in w if g == 0)),
)
def test_free_by_cyclic_multiply_matches_normal_form(u, v):
    oracle = FreeByCyclicOracle(Automorphism.from_text(["a b", "b a b"], ["a^2 b^-1", "b a^-1"]))
    nu, nv = oracle.normal_form(u), oracle.normal_form(v)
    assert oracle.multiply(nu, nv) == oracle.normal_form(u + v)
    assert oracle.multiply(nu, oracle.inverse(nu)) == IDENTITY
