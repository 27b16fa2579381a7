# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Fox calculus on free groups: derivatives, Fox matrices, abelianization and
jacobians of free-group automorphisms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import AlphabetError, InvalidAutomorphismError, NotAKnotGroupError
from .words import (
    IDENTITY,
    Automorphism,
    GroupPresentation,
    GroupRingElement,
    RingMatrix,
    Word,
    compose,
    exponent_sum,
    identity_matrix,
    matrix_isclose,
    word_mul,
)

HAS_SYMPY = True

try:
    import sympy
    from sympy.matrices.normalforms import smith_normal_form
except ImportError:
    HAS_SYMPY = False

logger = logging.getLogger(__name__)


def fox_derivative(w: Word, i: int, generator_count: int | None = None) -> GroupRingElement:
    """
    Fox derivative ``∂w/∂g_i`` of a reduced word.

    Uses ``∂(g_j)/∂g_i = δ_ij``, ``∂(g_j⁻¹)/∂g_i = -δ_ij g_j⁻¹`` and the product rule
    ``∂(uv)/∂g_i = ∂u/∂g_i + u·∂v/∂g_i``.
    """
    if i < 0 or (generator_count is not None and i >= generator_count):
        raise AlphabetError(f"generator index {i} is out of range", details={"index": i})

    terms: dict[Word, float] = {}
    prefix: Word = IDENTITY
    for generator, exponent in w:
        if generator == i:
            if exponent > 0:
                for k in range(exponent):
                    term = word_mul(prefix, ((generator, k),)) if k else prefix
                    terms[term] = terms.get(term, 0.0) + 1.0
            else:
                for k in range(1, -exponent + 1):
                    term = word_mul(prefix, ((generator, -k),))
                    terms[term] = terms.get(term, 0.0) - 1.0
        prefix = word_mul(prefix, ((generator, exponent),))
    return GroupRingElement(terms)


def fox_derivative_element(x: GroupRingElement, i: int) -> GroupRingElement:
    """Linear extension of :func:`fox_derivative` to group-ring elements."""
    result = GroupRingElement.zero()
    for w, c in x.terms.items():
        result = result + fox_derivative(w, i).scale(c)
    return result


@dataclass(frozen=True)
class FoxMatrix:
    """Matrix of ``∂r_j/∂g_i``: one row per generator, one column per relator."""

    entries: RingMatrix
    presentation: GroupPresentation

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def columns(self) -> int:
        return len(self.presentation.relators)


def fox_matrix(presentation: GroupPresentation) -> FoxMatrix:
    presentation.check_deficiency_one()
    entries = tuple(
        tuple(fox_derivative(relator, i) for relator in presentation.relators)
        for i in range(presentation.generator_count)
    )
    return FoxMatrix(entries, presentation)


def delete_row(matrix: FoxMatrix, i: int) -> RingMatrix:
    if not 0 <= i < matrix.rows:
        raise AlphabetError(f"row {i} is out of range for a Fox matrix with {matrix.rows} rows")
    return matrix.entries[:i] + matrix.entries[i + 1 :]


@dataclass(frozen=True)
class AbelianizationMap:
    """Surjection onto Z given by the image of each generator."""

    exponents: tuple[int, ...]

    def __call__(self, w: Word) -> int:
        return exponent_sum(w, self.exponents)

    def first_nonzero(self) -> int:
        for i, exponent in enumerate(self.exponents):
            if exponent:
                return i
        raise NotAKnotGroupError("abelianization is zero on every generator")


def _relator_matrix(presentation: GroupPresentation) -> list[list[int]]:
    rows = []
    for relator in presentation.relators:
        row = [0] * presentation.generator_count
        for generator, exponent in relator:
            row[generator] += exponent
        rows.append(row)
    return rows


def abelianization(presentation: GroupPresentation) -> AbelianizationMap:
    """
    Compute the abelianization onto Z of a presentation whose first homology is Z.

    The sign is chosen so the first generator with nonzero image maps to a positive integer.
    """
    k = presentation.generator_count
    rows = _relator_matrix(presentation)
    rows = [row for row in rows if any(row)]

    if not rows:
        if k != 1:
            raise NotAKnotGroupError(f"first homology is Z^{k}", details={"rank": k})
        return AbelianizationMap((1,))

    relations = sympy.Matrix(rows)
    if relations.rank() != k - 1:
        raise NotAKnotGroupError(
            "first homology is not infinite cyclic",
            details={"rank": k - relations.rank()},
        )
    normal = smith_normal_form(relations, domain=sympy.ZZ)
    invariants = [abs(int(normal[i, i])) for i in range(min(normal.shape)) if normal[i, i] != 0]
    torsion = [d for d in invariants if d != 1]
    if torsion:
        raise NotAKnotGroupError("first homology has torsion", details={"torsion": torsion})

    (kernel,) = relations.nullspace()
    denominators = [sympy.fraction(sympy.nsimplify(v))[1] for v in kernel]
    scale = sympy.ilcm(*denominators) if len(denominators) > 1 else denominators[0]
    vector = [int(v * scale) for v in kernel]
    divisor = 0
    for v in vector:
        divisor = gcd(divisor, v)
    vector = [v // divisor for v in vector]
    for v in vector:
        if v:
            if v < 0:
                vector = [-x for x in vector]
            break

    alpha = AbelianizationMap(tuple(vector))
    for relator in presentation.relators:
        if alpha(relator) != 0:
            raise NotAKnotGroupError("abelianization does not kill every relator")
    logger.debug("abelianization of %s is %s", presentation.format(), alpha.exponents)
    return alpha


@dataclass(frozen=True)
class MonodromyJacobian:
    """
    Fox jacobian ``W_ij = ∂φ(a_j)/∂a_i`` of an automorphism and its two-sided inverse.

    ``W`` and ``Winv`` are inverse under composition of right multiplication operators.
    """

    automorphism: Automorphism
    W: RingMatrix
    Winv: RingMatrix


def _jacobian_entries(images: Sequence[Word], rank: int) -> RingMatrix:
    return tuple(tuple(fox_derivative(images[j], i) for j in range(rank)) for i in range(rank))


def jacobian(phi: Automorphism) -> MonodromyJacobian:
    """
    Jacobian of ``φ`` with its inverse ``φ(W(φ⁻¹))`` from the chain rule.

    :raises InvalidAutomorphismError: when the product of both matrices is not the identity
    """
    rank = phi.rank
    w_matrix = _jacobian_entries(phi.images, rank)
    inverse_jacobian = _jacobian_entries(phi.inverse_images, rank)
    winv_matrix = tuple(tuple(entry.map_words(phi.apply) for entry in row) for row in inverse_jacobian)

    identity = identity_matrix(rank)
    if not matrix_isclose(compose(w_matrix, winv_matrix), identity) or not matrix_isclose(
        compose(winv_matrix, w_matrix), identity
    ):
        raise InvalidAutomorphismError(
            "Fox jacobian is not invertible with the chain-rule inverse",
            details={"automorphism": phi.format()},
        )
    return MonodromyJacobian(phi, w_matrix, winv_matrix)


def characteristic_polynomial(phi: Automorphism) -> sympy.Poly:
    """Characteristic polynomial of the action of ``φ`` on the abelianized free group."""
    t = sympy.Symbol("t")
    return sympy.Poly(sympy.Matrix(phi.abelianized()).charpoly(t).as_expr(), t)


def laurent_image(x: GroupRingElement, alpha: AbelianizationMap, t: sympy.Symbol):
    return sympy.Add(*(sympy.Integer(round(c)) * t ** alpha(w) for w, c in x.terms.items()))


def classical_alexander(presentation: GroupPresentation) -> sympy.Poly:
    """
    Alexander polynomial from the Fox matrix, normalized with lowest degree 0 and
    a positive leading coefficient.

    The deleted row is the first generator ``g_i`` with nonzero image, and the
    determinant is multiplied by ``(t - 1) / (t^|α(g_i)| - 1)``.
    """
    presentation.check_deficiency_one()
    alpha = abelianization(presentation)
    t = sympy.Symbol("t")
    row = alpha.first_nonzero()
    deleted = delete_row(fox_matrix(presentation), row)

    if deleted:
        determinant = sympy.Matrix([[laurent_image(entry, alpha, t) for entry in r] for r in deleted]).det(
            method="berkowitz"
        )
    else:
        determinant = sympy.Integer(1)

    expression = sympy.cancel(sympy.together(determinant * (t - 1) / (t ** abs(alpha.exponents[row]) - 1)))
    numerator, denominator = sympy.fraction(expression)
    numerator = sympy.Poly(sympy.expand(numerator), t)
    denominator = sympy.Poly(sympy.expand(denominator), t)
    if len(denominator.terms()) != 1:
        raise NotAKnotGroupError(
            "Fox determinant is not divisible by the row correction",
            details={"determinant": str(determinant)},
        )
    if numerator.is_zero:
        return numerator

    unit = denominator.LC()
    lowest = min(monom[0] for monom in numerator.monoms())
    polynomial = sympy.Poly(sympy.expand(numerator.as_expr() / (unit * t**lowest)), t, domain=sympy.ZZ)
    if polynomial.LC() < 0:
        polynomial = -polynomial
    return polynomial
