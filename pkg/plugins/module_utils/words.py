# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Free-group words, real group-ring elements and word-problem oracles.

A word is a tuple of ``(generator, exponent)`` runs. Every function in this
module returns freely reduced words: adjacent runs never share a generator and
no exponent is zero. The empty tuple is the identity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, Tuple

from .errors import AlphabetError, DeficiencyError, InvalidAutomorphismError, NumericError, ParseError

Letter = Tuple[int, int]
Word = Tuple[Letter, ...]
WordProduct = Callable[[Word, Word], Word]

IDENTITY: Word = ()

DEFAULT_NAMES = "abcdefghijklmnopqrstuvwxy"


def reduce_word(raw: Iterable[Letter]) -> Word:
    """
    Freely reduce a sequence of ``(generator, exponent)`` letters.

    :param raw: Letters in reading order, exponents may be zero or repeat a generator
    """
    stack: list[Letter] = []
    for generator, exponent in raw:
        if exponent == 0:
            continue
        if stack and stack[-1][0] == generator:
            merged = stack[-1][1] + exponent
            if merged:
                stack[-1] = (generator, merged)
            else:
                stack.pop()
        else:
            stack.append((generator, exponent))
    return tuple(stack)


def word_mul(u: Word, v: Word) -> Word:
    """Product of two reduced words, cancelling only at the junction."""
    i = len(u) - 1
    j = 0
    while i >= 0 and j < len(v) and u[i][0] == v[j][0]:
        merged = u[i][1] + v[j][1]
        if merged:
            return u[:i] + ((u[i][0], merged),) + v[j + 1 :]
        i -= 1
        j += 1
    return u[: i + 1] + v[j:]


def word_inverse(w: Word) -> Word:
    return tuple((generator, -exponent) for generator, exponent in reversed(w))


def word_length(w: Word) -> int:
    return sum(abs(exponent) for _, exponent in w)


def exponent_sum(w: Word, weights: Sequence[int]) -> int:
    """Image of the word in Z under the homomorphism sending generator i to ``weights[i]``."""
    return sum(weights[generator] * exponent for generator, exponent in w)


def shift_word(w: Word, offset: int) -> Word:
    return tuple((generator + offset, exponent) for generator, exponent in w)


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?\s*")


def parse_word(text: str, names: Sequence[str]) -> Word:
    """
    Parse a word written as whitespace separated tokens ``a``, ``b^-1``, ``a^3``.

    The tokens ``1`` and ``e`` (when ``e`` is not a generator name) denote the identity.
    """
    index = {name: i for i, name in enumerate(names)}
    letters: list[Letter] = []
    stripped = text.strip()
    if stripped in ("", "1") or (stripped == "e" and "e" not in index):
        return IDENTITY

    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise ParseError(f"unexpected character {text[position]!r} in word", position=position)
        name, exponent = match.group(1), match.group(2)
        if name not in index:
            raise ParseError(f"unknown generator {name!r}", position=match.start(1))
        letters.append((index[name], int(exponent) if exponent is not None else 1))
        position = match.end()
    return reduce_word(letters)


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    if not w:
        return "1"
    names = names or DEFAULT_NAMES
    tokens = []
    for generator, exponent in w:
        name = names[generator] if generator < len(names) else f"g{generator}"
        tokens.append(name if exponent == 1 else f"{name}^{exponent}")
    return " ".join(tokens)


class GroupRingElement:
    """
    Finite formal sum of words with real coefficients.

    Instances are treated as immutable values; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    terms: dict[Word, float]

    def __init__(self, terms: Mapping[Word, float] | None = None):
        self.terms = {w: float(c) for w, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> GroupRingElement:
        return cls()

    @classmethod
    def one(cls, coefficient: float = 1.0) -> GroupRingElement:
        return cls({IDENTITY: coefficient})

    @classmethod
    def of(cls, w: Word, coefficient: float = 1.0) -> GroupRingElement:
        return cls({w: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w: Word) -> float:
        return self.terms.get(w, 0.0)

    def norm1(self) -> float:
        return math.fsum(abs(c) for c in self.terms.values())

    def scale(self, factor: float) -> GroupRingElement:
        return GroupRingElement({w: c * factor for w, c in self.terms.items()})

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0.0) + c
        return GroupRingElement(terms)

    def __neg__(self) -> GroupRingElement:
        return self.scale(-1.0)

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        return self + (-other)

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        return ring_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def isclose(self, other: GroupRingElement, tolerance: float = 1e-12) -> bool:
        return (self - other).norm1() <= tolerance

    def map_words(self, fn: Callable[[Word], Word]) -> GroupRingElement:
        terms: dict[Word, float] = {}
        for w, c in self.terms.items():
            image = fn(w)
            terms[image] = terms.get(image, 0.0) + c
        return GroupRingElement(terms)

    def __repr__(self) -> str:
        return f"GroupRingElement({self.format()})"

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            coefficient = int(c) if float(c).is_integer() else c
            parts.append(f"{coefficient}*{format_word(w, names)}")
        return " + ".join(parts)


def ring_mul(x: GroupRingElement, y: GroupRingElement, mul: WordProduct = word_mul) -> GroupRingElement:
    """
    Convolution product in the group ring.

    :param mul: Product of group elements, free reduction by default; oracles pass their own
    """
    terms: dict[Word, float] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = mul(u, v)
            terms[w] = terms.get(w, 0.0) + a * b
    return GroupRingElement(terms)


def adjoint(x: GroupRingElement, inverse: Callable[[Word], Word] = word_inverse) -> GroupRingElement:
    """Involution c·w ↦ c·w⁻¹ (real coefficients)."""
    return GroupRingElement({inverse(w): c for w, c in x.terms.items()})


# Group-ring matrices are tuples of rows. Products compose right multiplication
# operators: (X∘Y)_ij = Σ_k Y_kj·X_ik, so that R_X ∘ R_Y = R_{X∘Y}.
RingMatrix = Tuple[Tuple[GroupRingElement, ...], ...]


def identity_matrix(size: int) -> RingMatrix:
    return tuple(
        tuple(GroupRingElement.one() if i == j else GroupRingElement.zero() for j in range(size)) for i in range(size)
    )


def compose(x: RingMatrix, y: RingMatrix, mul: WordProduct = word_mul) -> RingMatrix:
    if not x or len(x[0]) != len(y):
        raise NumericError("matrix dimensions do not match")
    columns = len(y[0]) if y else 0
    rows = []
    for x_row in x:
        row = []
        for j in range(columns):
            entry = GroupRingElement.zero()
            for k, x_entry in enumerate(x_row):
                if x_entry.is_zero() or y[k][j].is_zero():
                    continue
                entry = entry + ring_mul(y[k][j], x_entry, mul)
            row.append(entry)
        rows.append(tuple(row))
    return tuple(rows)


def matrix_adjoint(x: RingMatrix, inverse: Callable[[Word], Word] = word_inverse) -> RingMatrix:
    size = len(x)
    columns = len(x[0]) if x else 0
    return tuple(tuple(adjoint(x[j][i], inverse) for j in range(size)) for i in range(columns))


def matrix_map(fn: Callable[[GroupRingElement], GroupRingElement], x: RingMatrix) -> RingMatrix:
    return tuple(tuple(fn(entry) for entry in row) for row in x)


def matrix_isclose(x: RingMatrix, y: RingMatrix, tolerance: float = 1e-12) -> bool:
    if len(x) != len(y):
        return False
    return all(
        len(x_row) == len(y_row) and all(a.isclose(b, tolerance) for a, b in zip(x_row, y_row))
        for x_row, y_row in zip(x, y)
    )


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(DEFAULT_NAMES[: self.generator_count]))
        if len(self.names) != self.generator_count:
            raise ParseError(f"expected {self.generator_count} generator names, got {len(self.names)}")
        object.__setattr__(self, "relators", tuple(reduce_word(r) for r in self.relators))
        for relator in self.relators:
            for generator, _ in relator:
                if not 0 <= generator < self.generator_count:
                    raise AlphabetError(f"relator uses unknown generator index {generator}")

    @property
    def deficiency(self) -> int:
        return self.generator_count - len(self.relators)

    def check_deficiency_one(self) -> None:
        if self.deficiency != 1:
            raise DeficiencyError(
                f"presentation has {self.generator_count} generators and {len(self.relators)} relators",
                details={"generators": self.generator_count, "relators": len(self.relators)},
            )

    def format(self) -> str:
        relators = ", ".join(format_word(r, self.names) for r in self.relators)
        return f"< {' '.join(self.names)} | {relators} >"


@lru_cache(maxsize=1 << 16)
def _substitute(images: tuple[Word, ...], w: Word) -> Word:
    letters: list[Letter] = []
    for generator, exponent in w:
        image = images[generator] if exponent > 0 else word_inverse(images[generator])
        for _ in range(abs(exponent)):
            letters.extend(image)
    return reduce_word(letters)


@lru_cache(maxsize=1 << 16)
def _power(images: tuple[Word, ...], inverse_images: tuple[Word, ...], w: Word, n: int) -> Word:
    if n == 0:
        return w
    if n > 0:
        return _substitute(images, _power(images, inverse_images, w, n - 1))
    return _substitute(inverse_images, _power(images, inverse_images, w, n + 1))


@dataclass(frozen=True)
class Automorphism:
    """
    Automorphism of the free group of the given rank, stored with its inverse.

    Construction checks that ``φ(φ⁻¹(a_i))`` and ``φ⁻¹(φ(a_i))`` reduce to ``a_i``.
    """

    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(reduce_word(w) for w in self.images))
        object.__setattr__(self, "inverse_images", tuple(reduce_word(w) for w in self.inverse_images))
        rank = len(self.images)
        if len(self.inverse_images) != rank:
            raise InvalidAutomorphismError(
                f"automorphism has {rank} images but {len(self.inverse_images)} inverse images"
            )
        for w in self.images + self.inverse_images:
            for generator, _ in w:
                if not 0 <= generator < rank:
                    raise InvalidAutomorphismError(f"image uses generator {generator} outside rank {rank}")
        for i in range(rank):
            generator = ((i, 1),)
            if _substitute(self.images, self.inverse_images[i]) != generator:
                raise InvalidAutomorphismError(f"φ(φ⁻¹(a_{i + 1})) does not reduce to a_{i + 1}")
            if _substitute(self.inverse_images, self.images[i]) != generator:
                raise InvalidAutomorphismError(f"φ⁻¹(φ(a_{i + 1})) does not reduce to a_{i + 1}")

    @classmethod
    def identity(cls, rank: int) -> Automorphism:
        generators = tuple(((i, 1),) for i in range(rank))
        return cls(generators, generators)

    @classmethod
    def from_text(
        cls, images: Sequence[str], inverse_images: Sequence[str], names: Sequence[str] | None = None
    ) -> Automorphism:
        names = names or DEFAULT_NAMES[: len(images)]
        return cls(
            tuple(parse_word(text, names) for text in images),
            tuple(parse_word(text, names) for text in inverse_images),
        )

    @property
    def rank(self) -> int:
        return len(self.images)

    def apply(self, w: Word) -> Word:
        return _substitute(self.images, w)

    def apply_inverse(self, w: Word) -> Word:
        return _substitute(self.inverse_images, w)

    def power(self, w: Word, n: int) -> Word:
        """``φⁿ(w)``; negative ``n`` uses the inverse."""
        return _power(self.images, self.inverse_images, w, n)

    def inverse(self) -> Automorphism:
        return Automorphism(self.inverse_images, self.images)

    def compose(self, other: Automorphism) -> Automorphism:
        """``self ∘ other``, that is ``a ↦ self(other(a))``."""
        return Automorphism(
            tuple(self.apply(w) for w in other.images),
            tuple(other.apply_inverse(w) for w in self.inverse_images),
        )

    def abelianized(self) -> list[list[int]]:
        """Integer matrix whose column j is the exponent vector of ``φ(a_j)``."""
        matrix = [[0] * self.rank for _ in range(self.rank)]
        for j, image in enumerate(self.images):
            for generator, exponent in image:
                matrix[generator][j] += exponent
        return matrix

    def trace(self) -> int:
        matrix = self.abelianized()
        return sum(matrix[i][i] for i in range(self.rank))

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or DEFAULT_NAMES
        return ", ".join(f"{names[i]} -> {format_word(w, names)}" for i, w in enumerate(self.images))


def nielsen_moves(rank: int) -> list[Automorphism]:
    """Elementary Nielsen automorphisms: inversions, transvections a_i ↦ a_i a_j^±1, and swaps."""
    generators = [((i, 1),) for i in range(rank)]
    moves = []
    for i in range(rank):
        images = list(generators)
        images[i] = ((i, -1),)
        moves.append(Automorphism(tuple(images), tuple(images)))
    for i in range(rank):
        for j in range(rank):
            if i == j:
                continue
            for sign in (1, -1):
                images = list(generators)
                inverse_images = list(generators)
                images[i] = ((i, 1), (j, sign))
                inverse_images[i] = ((i, 1), (j, -sign))
                moves.append(Automorphism(tuple(images), tuple(inverse_images)))
    for i in range(rank):
        for j in range(i + 1, rank):
            images = list(generators)
            images[i], images[j] = images[j], images[i]
            moves.append(Automorphism(tuple(images), tuple(images)))
    return moves


class NormalFormOracle:
    """
    Word-problem strategy for a quotient of the free group.

    ``normal_form`` returns a canonical representative; two words have the same
    normal form exactly when they represent the same group element.
    """

    kind: str = "abstract"

    alphabet_size: int

    def normal_form(self, w: Word) -> Word:
        raise NotImplementedError

    def multiply(self, u: Word, v: Word) -> Word:
        """Product of two words already in normal form."""
        return self.normal_form(u + v)

    def inverse(self, u: Word) -> Word:
        """Inverse of a word already in normal form."""
        return self.normal_form(word_inverse(u))

    def is_identity(self, w: Word) -> bool:
        return not self.normal_form(w)

    def check_alphabet(self, w: Word) -> None:
        for generator, _ in w:
            if not 0 <= generator < self.alphabet_size:
                raise AlphabetError(
                    f"letter {generator} is outside the {self.kind} oracle alphabet of size {self.alphabet_size}",
                    details={"letter": generator, "alphabet_size": self.alphabet_size},
                )


class TrivialOracle(NormalFormOracle):
    """Free group: a word is the identity when it freely reduces to the empty word."""

    kind = "trivial"

    def __init__(self, alphabet_size: int):
        self.alphabet_size = alphabet_size

    def normal_form(self, w: Word) -> Word:
        self.check_alphabet(w)
        return reduce_word(w)

    def multiply(self, u: Word, v: Word) -> Word:
        return word_mul(u, v)

    def inverse(self, u: Word) -> Word:
        return word_inverse(u)


class CyclicOracle(NormalFormOracle):
    """
    Infinite cyclic group: every generator maps to a power of a single generator.

    The normal form of a word is ``((0, n),)`` where ``n`` is its weighted exponent sum.
    """

    kind = "cyclic"

    def __init__(self, weights: Sequence[int] = (1,)):
        self.weights = tuple(weights)
        self.alphabet_size = len(self.weights)

    def normal_form(self, w: Word) -> Word:
        self.check_alphabet(w)
        total = exponent_sum(w, self.weights)
        return ((0, total),) if total else IDENTITY

    def multiply(self, u: Word, v: Word) -> Word:
        total = (u[0][1] if u else 0) + (v[0][1] if v else 0)
        return ((0, total),) if total else IDENTITY

    def inverse(self, u: Word) -> Word:
        return ((0, -u[0][1]),) if u else IDENTITY


@dataclass(frozen=True)
class FiberElement:
    """Element ``z^k·u`` of a free-by-cyclic group, ``u`` a word in the fiber letters."""

    z_exponent: int
    fiber: Word = field(default=IDENTITY)


class FreeByCyclicOracle(NormalFormOracle):
    """
    Semidirect product ``F_n ⋊ Z`` with relations ``z a_i z⁻¹ = φ(a_i)``.

    Letter 0 is ``z`` and letter ``i + 1`` is the fiber generator ``a_i``. Normal forms
    are ``z^k`` followed by a reduced fiber word, obtained by pushing every ``z`` to
    the left with ``z⁻¹ a z = φ⁻¹(a)`` and ``z a z⁻¹ = φ(a)``.
    """

    kind = "free_by_cyclic"

    def __init__(self, monodromy: Automorphism):
        self.monodromy = monodromy
        self.alphabet_size = monodromy.rank + 1

    def split(self, w: Word) -> FiberElement:
        self.check_alphabet(w)
        k = 0
        fiber: Word = IDENTITY
        for generator, exponent in w:
            if generator == 0:
                fiber = self.monodromy.power(fiber, -exponent)
                k += exponent
            else:
                fiber = word_mul(fiber, ((generator - 1, exponent),))
        return FiberElement(k, fiber)

    @staticmethod
    def join(element: FiberElement) -> Word:
        head: Word = ((0, element.z_exponent),) if element.z_exponent else IDENTITY
        return head + shift_word(element.fiber, 1)

    def normal_form(self, w: Word) -> Word:
        return self.join(self.split(w))

    def _parts(self, w: Word) -> tuple[int, Word]:
        if w and w[0][0] == 0:
            return w[0][1], shift_word(w[1:], -1)
        return 0, shift_word(w, -1)

    def multiply(self, u: Word, v: Word) -> Word:
        k, fiber_u = self._parts(u)
        m, fiber_v = self._parts(v)
        fiber = word_mul(self.monodromy.power(fiber_u, -m), fiber_v)
        return self.join(FiberElement(k + m, fiber))

    def inverse(self, u: Word) -> Word:
        k, fiber = self._parts(u)
        return self.join(FiberElement(-k, self.monodromy.power(word_inverse(fiber), k)))


def normal_form(w: Word, oracle: NormalFormOracle) -> Word:
    return oracle.normal_form(w)


def is_identity(w: Word, oracle: NormalFormOracle) -> bool:
    return oracle.is_identity(w)
