# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Von Neumann trace, twisting by the abelianization, operator norm bounds and
Fuglede-Kadison determinant approximation.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Literal

from .errors import NumericError
from .fox import AbelianizationMap, abelianization, delete_row, fox_matrix, jacobian
from .knots import OraclePresentation
from .words import (
    IDENTITY,
    Automorphism,
    FreeByCyclicOracle,
    GroupRingElement,
    NormalFormOracle,
    RingMatrix,
    TrivialOracle,
    compose,
    identity_matrix,
    matrix_adjoint,
    matrix_isclose,
    matrix_map,
    shift_word,
)

HAS_NUMPY = True

try:
    import numpy as np
except ImportError:
    HAS_NUMPY = False

logger = logging.getLogger(__name__)

METHODS = ("auto", "series")


@dataclass(frozen=True)
class NumericParams:
    """Parameters of the determinant series shared by the CLI and the Ansible modules."""

    epsilons: tuple[float, ...] = (1e-1, 1e-2, 1e-3)
    terms: int = 12
    prune: float = 1e-12
    safety: float = 1.01
    tolerance: float = 1e-6
    threads: int = 1
    max_support: int = 25_000
    method: Literal["auto", "series"] = "auto"

    def __post_init__(self):
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        if not self.epsilons or any(e <= 0 for e in self.epsilons):
            raise NumericError(f"epsilon ladder must be nonempty and positive, got {self.epsilons}")
        if self.terms < 1:
            raise NumericError(f"number of series terms must be at least 1, got {self.terms}")
        if self.prune < 0:
            raise NumericError(f"pruning threshold must be nonnegative, got {self.prune}")
        if self.safety <= 1:
            raise NumericError(f"safety factor must exceed 1, got {self.safety}")
        if self.threads < 1:
            raise NumericError(f"thread count must be at least 1, got {self.threads}")
        if self.max_support < 1:
            raise NumericError(f"support budget must be at least 1, got {self.max_support}")
        if self.method not in METHODS:
            raise NumericError(f"method must be one of {', '.join(METHODS)}, got {self.method}")


def _normalize_entry(x: GroupRingElement, oracle: NormalFormOracle) -> GroupRingElement:
    return x.map_words(oracle.normal_form)


@dataclass(frozen=True)
class TwistedMatrix:
    """
    Square matrix over the group ring of an oracle's group, entries in normal form.

    Products compose right multiplication operators, see :func:`words.compose`.
    """

    entries: RingMatrix
    t: float
    oracle: NormalFormOracle = field(compare=False)

    def __post_init__(self):
        if not self.t > 0:
            raise NumericError(f"twist parameter must be positive, got {self.t}")
        for row in self.entries:
            if len(row) != len(self.entries):
                raise NumericError("twisted matrix must be square")

    @classmethod
    def from_entries(cls, entries: Iterable[Iterable[GroupRingElement]], oracle: NormalFormOracle, t: float = 1.0):
        """Wrap a matrix whose entries are already twisted, reducing every word to normal form."""
        return cls(matrix_map(lambda x: _normalize_entry(x, oracle), tuple(tuple(r) for r in entries)), t, oracle)

    @classmethod
    def scalar(cls, size: int, value: float, oracle: NormalFormOracle, t: float = 1.0) -> TwistedMatrix:
        entries = tuple(
            tuple(GroupRingElement.one(value) if i == j else GroupRingElement.zero() for j in range(size))
            for i in range(size)
        )
        return cls(entries, t, oracle)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def support(self) -> int:
        """Number of stored group ring terms over all entries."""
        return sum(len(entry.terms) for row in self.entries for entry in row)

    def compose(self, other: TwistedMatrix) -> TwistedMatrix:
        if self.size == 0:
            return self
        return TwistedMatrix(compose(self.entries, other.entries, self.oracle.multiply), self.t, self.oracle)

    def adjoint(self) -> TwistedMatrix:
        return TwistedMatrix(matrix_adjoint(self.entries, self.oracle.inverse), self.t, self.oracle)

    def scale(self, factor: float) -> TwistedMatrix:
        return TwistedMatrix(matrix_map(lambda x: x.scale(factor), self.entries), self.t, self.oracle)

    def shift(self, value: float) -> TwistedMatrix:
        """``self + value·Id``"""
        entries = tuple(
            tuple(entry + GroupRingElement.one(value) if i == j else entry for j, entry in enumerate(row))
            for i, row in enumerate(self.entries)
        )
        return TwistedMatrix(entries, self.t, self.oracle)

    def submatrix(self, indices: Iterable[int]) -> TwistedMatrix:
        indices = tuple(indices)
        entries = tuple(tuple(self.entries[i][j] for j in indices) for i in indices)
        return TwistedMatrix(entries, self.t, self.oracle)

    def pruned(self, threshold: float) -> tuple[TwistedMatrix, float]:
        """Drop coefficients below ``threshold`` in absolute value, returning the dropped ℓ1 mass."""
        if threshold <= 0:
            return self, 0.0
        dropped: list[float] = []
        rows = []
        for row in self.entries:
            new_row = []
            for entry in row:
                kept = {}
                for w, c in entry.terms.items():
                    if abs(c) < threshold:
                        dropped.append(abs(c))
                    else:
                        kept[w] = c
                new_row.append(GroupRingElement(kept))
            rows.append(tuple(new_row))
        return TwistedMatrix(tuple(rows), self.t, self.oracle), math.fsum(dropped)


def block_diagonal(first: TwistedMatrix, second: TwistedMatrix) -> TwistedMatrix:
    zero = GroupRingElement.zero()
    rows = [row + (zero,) * second.size for row in first.entries]
    rows += [(zero,) * first.size + row for row in second.entries]
    return TwistedMatrix(tuple(rows), first.t, first.oracle)


def diagonal_blocks(matrix: TwistedMatrix) -> list[tuple[int, ...]]:
    """
    Index sets of the connected components of the nonzero pattern. The matrix is block
    diagonal up to a simultaneous permutation of rows and columns along these sets.
    """
    parent = list(range(matrix.size))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, row in enumerate(matrix.entries):
        for j, entry in enumerate(row):
            if not entry.is_zero():
                parent[find(i)] = find(j)

    blocks: dict[int, list[int]] = {}
    for i in range(matrix.size):
        blocks.setdefault(find(i), []).append(i)
    return [tuple(block) for block in blocks.values()]


def twist(matrix: RingMatrix, t: float, alpha: AbelianizationMap, oracle: NormalFormOracle) -> TwistedMatrix:
    """
    Apply ``ψ_t``: every term ``c·w`` becomes ``c·t^α(w)·w``, with ``w`` reduced by the oracle.
    """
    if not t > 0:
        raise NumericError(f"twist parameter must be positive, got {t}")

    def twisted(x: GroupRingElement) -> GroupRingElement:
        terms: dict = {}
        for w, c in x.terms.items():
            image = oracle.normal_form(w)
            terms[image] = terms.get(image, 0.0) + c * t ** alpha(w)
        return GroupRingElement(terms)

    return TwistedMatrix(matrix_map(twisted, matrix), t, oracle)


def vn_trace(matrix: TwistedMatrix) -> float:
    """Sum of the identity coefficients of the diagonal entries."""
    return math.fsum(row[i].coefficient(IDENTITY) for i, row in enumerate(matrix.entries))


def vn_trace_product(x: TwistedMatrix, y: TwistedMatrix) -> float:
    """``tr(X∘Y)`` read off from pairs ``(u, u⁻¹)`` without forming the product."""
    inverse = x.oracle.inverse
    values = []
    for i in range(x.size):
        for k in range(x.size):
            x_entry = x.entries[i][k]
            if x_entry.is_zero():
                continue
            for w, c in y.entries[k][i].terms.items():
                match = x_entry.terms.get(inverse(w))
                if match is not None:
                    values.append(c * match)
    return math.fsum(values)


def norm_bound(matrix: TwistedMatrix) -> float:
    """
    Schur test bound ``sqrt(max row ℓ1 sum · max column ℓ1 sum)`` on the operator norm.
    Every ``R_w`` has norm at most ``|w|_1``, so the bound never underestimates.
    """
    if matrix.size == 0:
        return 0.0
    norms = np.array([[entry.norm1() for entry in row] for row in matrix.entries])
    return float(np.sqrt(norms.sum(axis=1).max() * norms.sum(axis=0).max()))


@dataclass(frozen=True)
class DetApproxResult:
    """
    One determinant run. ``estimate`` is an upper bound of the regularized determinant and
    ``lower_bound`` bounds it from below once the series tail is accounted for. ``terms``
    is the number of trace terms summed, which is below ``terms_requested`` when the
    support budget stopped the power ladder.
    """

    estimate: float
    partial_estimates: tuple[float, ...]
    epsilon: float
    terms: int
    pruned_mass_bound: float
    norm_bound_used: float
    converged: bool
    traces: tuple[float, ...] = ()
    terms_requested: int | None = None
    lower_bound: float | None = None
    method: Literal["series", "factored"] = "series"

    def __post_init__(self):
        if self.terms_requested is None:
            object.__setattr__(self, "terms_requested", self.terms)
        if self.lower_bound is None:
            object.__setattr__(self, "lower_bound", self.estimate)

    @property
    def truncated(self) -> bool:
        return self.terms < self.terms_requested

    def to_dict(self) -> dict[str, Any]:
        return {
            "estimate": self.estimate,
            "lower_bound": self.lower_bound,
            "partial_estimates": list(self.partial_estimates),
            "epsilon": self.epsilon,
            "terms": self.terms,
            "terms_requested": self.terms_requested,
            "pruned_mass_bound": self.pruned_mass_bound,
            "norm_bound_used": self.norm_bound_used,
            "converged": self.converged,
            "method": self.method,
        }


def power_ladder(
    x: TwistedMatrix, count: int, prune: float, max_support: int
) -> tuple[list[TwistedMatrix], float]:
    """
    ``[Id, X, X², …]`` up to ``X^count``, stopping early once a power holds more than
    ``max_support`` terms or the next one is predicted to. The prediction extrapolates the
    ratio of the last two supports, so the cut is the same on every run.
    """
    powers = [TwistedMatrix.scalar(x.size, 1.0, x.oracle, x.t), x]
    supports = [x.size, x.support]
    pruned_mass = 0.0
    while len(powers) <= count:
        current, previous = supports[-1], max(supports[-2], 1)
        if current > max_support or current * current / previous > max_support:
            logger.info(
                "power ladder stopped at X^%d: support %d, budget %d", len(powers) - 1, current, max_support
            )
            break
        power, mass = powers[-1].compose(x).pruned(prune)
        pruned_mass += mass
        powers.append(power)
        supports.append(power.support)
    return powers, pruned_mass


def _tail_bound(last_trace: float, terms: int, contraction: float) -> float:
    """
    Bound on ``Σ_{n>N} tr(Xⁿ)/n`` for a positive ``X`` with ``‖X‖ ≤ q``:
    ``tr(Xⁿ) ≤ q^(n-N)·tr(X^N)`` gives ``tr(X^N)·q / ((N+1)(1-q))``.
    """
    if contraction >= 1:
        return math.inf
    return max(last_trace, 0.0) * contraction / ((terms + 1) * (1 - contraction))


def _combine_blocks(results: list[DetApproxResult], epsilon: float, terms: int) -> DetApproxResult:
    length = max(len(result.partial_estimates) for result in results)
    partial = [1.0] * length
    for result in results:
        padded = result.partial_estimates + (result.partial_estimates[-1],) * (length - len(result.partial_estimates))
        partial = [a * b for a, b in zip(partial, padded)]
    return DetApproxResult(
        estimate=math.prod(result.estimate for result in results),
        partial_estimates=tuple(partial),
        epsilon=epsilon,
        terms=min(result.terms for result in results),
        pruned_mass_bound=math.fsum(result.pruned_mass_bound for result in results),
        norm_bound_used=max(result.norm_bound_used for result in results),
        converged=all(result.converged for result in results),
        terms_requested=terms,
        lower_bound=math.prod(result.lower_bound for result in results),
    )


def fk_det(
    matrix: TwistedMatrix,
    epsilon: float,
    terms: int,
    prune: float = 1e-12,
    *,
    safety: float = 1.01,
    tolerance: float = 1e-6,
    threads: int = 1,
    max_support: int = 25_000,
) -> DetApproxResult:
    """
    Approximate the Fuglede-Kadison determinant of ``matrix`` at regularization ``ε``.

    With ``H = M*∘M + ε·Id``, ``c = safety·norm_bound(H)`` and ``X = Id - H/c`` the value is
    ``exp(½(m·ln c - Σ_{n≤N} tr(Xⁿ)/n))``. ``X`` is positive with norm at most
    ``q = 1 - ε/c``, so each partial value is an upper bound, the sequence does not
    increase and the tail bound yields ``lower_bound``. A result is converged when the
    whole requested series was summed and the tail costs at most ``tolerance``.

    Matrices that split into diagonal blocks are handled block by block, each block with
    its own norm bound.

    :param prune: Coefficients below this value are dropped after every product
    :param threads: Worker threads for the independent trace terms
    :param max_support: Budget on the number of terms stored in one power of ``X``
    """
    if not epsilon > 0:
        raise NumericError(f"regularization epsilon must be positive, got {epsilon}")
    if terms < 1:
        raise NumericError(f"number of series terms must be at least 1, got {terms}")
    if prune < 0:
        raise NumericError(f"pruning threshold must be nonnegative, got {prune}")

    size = matrix.size
    if size == 0:
        return DetApproxResult(1.0, (1.0,) * terms, epsilon, terms, 0.0, 0.0, True, (0.0,) * terms)

    blocks = diagonal_blocks(matrix)
    if len(blocks) > 1:
        logger.debug("fk_det splits into blocks of sizes %s", [len(block) for block in blocks])
        results = [
            fk_det(
                matrix.submatrix(block),
                epsilon,
                terms,
                prune,
                safety=safety,
                tolerance=tolerance,
                threads=threads,
                max_support=max_support,
            )
            for block in blocks
        ]
        return _combine_blocks(results, epsilon, terms)

    gram = matrix.adjoint().compose(matrix).shift(epsilon)
    bound = norm_bound(gram)
    radius = safety * bound
    x, pruned_mass = gram.scale(-1.0 / radius).shift(1.0).pruned(prune)

    powers, ladder_mass = power_ladder(x, (terms + 1) // 2, prune, max_support)
    pruned_mass += ladder_mass
    terms_used = min(terms, 2 * (len(powers) - 1))
    if terms_used < terms:
        logger.info("fk_det summed %d of %d requested terms within the support budget", terms_used, terms)

    def trace_term(n: int) -> float:
        half = (n + 1) // 2
        return vn_trace_product(powers[half], powers[n - half])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            traces = list(executor.map(trace_term, range(1, terms_used + 1)))
    else:
        traces = [trace_term(n) for n in range(1, terms_used + 1)]

    log_det = size * math.log(radius)
    partial = []
    for n, trace in enumerate(traces, start=1):
        log_det -= trace / n
        partial.append(math.exp(log_det / 2))
        logger.debug("term %d: trace %.6g, partial estimate %.10g", n, trace, partial[-1])

    tail = _tail_bound(traces[-1], terms_used, 1 - epsilon / radius)
    converged = terms_used == terms and tail / 2 <= tolerance
    result = DetApproxResult(
        estimate=partial[-1],
        partial_estimates=tuple(partial),
        epsilon=epsilon,
        terms=terms_used,
        pruned_mass_bound=pruned_mass,
        norm_bound_used=radius,
        converged=converged,
        traces=tuple(traces),
        terms_requested=terms,
        lower_bound=partial[-1] * math.exp(-tail / 2),
    )
    logger.info(
        "fk_det size=%d epsilon=%g terms=%d/%d estimate=%.10g lower=%.10g pruned=%.3g",
        size,
        epsilon,
        terms_used,
        terms,
        result.estimate,
        result.lower_bound,
        pruned_mass,
    )
    return result


def graded_parts(matrix: TwistedMatrix, alpha: AbelianizationMap) -> dict[int, TwistedMatrix]:
    """Split a twisted matrix into its homogeneous parts by the abelianization degree of each word."""
    parts: dict[int, list[list[dict]]] = {}
    for i, row in enumerate(matrix.entries):
        for j, entry in enumerate(row):
            for w, c in entry.terms.items():
                if c == 0:
                    continue
                degree = alpha(w)
                if degree not in parts:
                    parts[degree] = [[{} for _ in range(matrix.size)] for _ in range(matrix.size)]
                parts[degree][i][j][w] = c
    return {
        degree: TwistedMatrix(
            tuple(tuple(GroupRingElement(terms) for terms in row) for row in rows), matrix.t, matrix.oracle
        )
        for degree, rows in parts.items()
    }


def _diagonal_monomial_inverse(part: TwistedMatrix) -> tuple[TwistedMatrix, float] | None:
    """Inverse of a diagonal matrix with one term per diagonal entry, and its FK determinant."""
    zero = GroupRingElement.zero()
    rows = []
    determinant = 1.0
    for i, row in enumerate(part.entries):
        if any(not entry.is_zero() for j, entry in enumerate(row) if j != i):
            return None
        if len(row[i].terms) != 1:
            return None
        ((w, c),) = row[i].terms.items()
        determinant *= abs(c)
        inverse = GroupRingElement.of(part.oracle.inverse(w), 1.0 / c)
        rows.append(tuple(inverse if j == i else zero for j in range(part.size)))
    return TwistedMatrix(tuple(rows), part.t, part.oracle), determinant


def _fiber_jacobian_inverse(part: TwistedMatrix) -> TwistedMatrix | None:
    """
    Inverse of the degree-zero part when it is minus the shifted Fox jacobian of the
    monodromy, taken from the chain-rule inverse.
    """
    oracle = part.oracle
    if not isinstance(oracle, FreeByCyclicOracle) or oracle.monodromy.rank != part.size:
        return None
    if any(c != round(c) for row in part.entries for entry in row for c in entry.terms.values()):
        return None
    winv = jacobian(oracle.monodromy).Winv
    candidate = TwistedMatrix.from_entries(
        matrix_map(lambda x: x.map_words(lambda w: shift_word(w, 1)).scale(-1.0), winv), oracle, part.t
    )
    identity = identity_matrix(part.size)
    if not (
        matrix_isclose(part.compose(candidate).entries, identity)
        and matrix_isclose(candidate.compose(part).entries, identity)
    ):
        return None
    return candidate


@dataclass(frozen=True)
class MonomialFactorization:
    """
    ``M = P∘(Id + B)`` where ``P`` is an invertible part of known determinant and every
    word of ``B`` has the same nonzero degree, so ``tr(Bⁿ) = 0`` for all ``n ≥ 1``.
    """

    route: Literal["high", "low"]
    prefactor: float
    remainder: TwistedMatrix
    remainder_bound: float


def monomial_factorization(matrix: TwistedMatrix, alpha: AbelianizationMap) -> MonomialFactorization | None:
    """
    Factor a matrix of degrees 0 and 1 through its dominating part.

    ``high``: the degree-one part ``D`` is diagonal with one term per entry and
    ``B = D⁻¹∘M₀`` has degree -1. ``low``: the degree-zero part is the integral Fox
    jacobian of a fibered monodromy, whose determinant is 1, and ``B = M₀⁻¹∘D`` has
    degree 1. A route applies only when ``norm_bound(B) < 1``.
    """
    parts = graded_parts(matrix, alpha)
    if not parts or not set(parts) <= {0, 1} or 1 not in parts:
        return None
    empty = TwistedMatrix.scalar(matrix.size, 0.0, matrix.oracle, matrix.t)
    top, bottom = parts[1], parts.get(0, empty)

    inverse = _diagonal_monomial_inverse(top)
    if inverse is not None:
        top_inverse, determinant = inverse
        remainder = top_inverse.compose(bottom)
        bound = norm_bound(remainder)
        if bound < 1:
            return MonomialFactorization("high", determinant, remainder, bound)

    if 0 in parts:
        bottom_inverse = _fiber_jacobian_inverse(bottom)
        if bottom_inverse is not None:
            remainder = bottom_inverse.compose(top)
            bound = norm_bound(remainder)
            if bound < 1:
                return MonomialFactorization("low", 1.0, remainder, bound)
    return None


def factored_det(matrix: TwistedMatrix, alpha: AbelianizationMap, terms: int) -> DetApproxResult | None:
    """
    Exact FK determinant in monomial territory, or ``None`` when no factorization applies.
    ``log det(Id + B) = Σ (-1)^(n+1) tr(Bⁿ)/n`` converges for ``‖B‖ < 1`` and every term vanishes.
    """
    factorization = monomial_factorization(matrix, alpha)
    if factorization is None:
        return None
    estimate = factorization.prefactor
    logger.info(
        "factored determinant route=%s t=%g bound=%.6g estimate=%.10g",
        factorization.route,
        matrix.t,
        factorization.remainder_bound,
        estimate,
    )
    return DetApproxResult(
        estimate=estimate,
        partial_estimates=(estimate,) * terms,
        epsilon=0.0,
        terms=terms,
        pruned_mass_bound=0.0,
        norm_bound_used=factorization.remainder_bound,
        converged=True,
        traces=(0.0,) * terms,
        method="factored",
    )


def extrapolate_to_zero(epsilons: tuple[float, ...], values: tuple[float, ...]) -> float:
    """Value at ε = 0 of the polynomial through the ladder points."""
    if len(values) == 1:
        return values[0]
    coefficients = np.polynomial.polynomial.polyfit(np.array(epsilons), np.array(values), len(values) - 1)
    return float(coefficients[0])


@dataclass(frozen=True)
class DeltaReport:
    """
    One determinant run per rung of the ε ladder, divided by ``normalization``.

    ``extrapolated`` is the polynomial extrapolation of the rungs to ε = 0; it is never
    reported as ``estimate``, which is the value at the smallest ε. A factored run has
    a single exact rung at ε = 0.
    """

    t: float
    normalization: float
    rungs: tuple[DetApproxResult, ...]
    extrapolated: float

    @property
    def finest(self) -> DetApproxResult:
        return min(self.rungs, key=lambda rung: rung.epsilon)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(rung.estimate / self.normalization for rung in self.rungs)

    @property
    def estimate(self) -> float:
        return self.finest.estimate / self.normalization

    @property
    def lower_bound(self) -> float:
        return self.finest.lower_bound / self.normalization

    @property
    def epsilon(self) -> float:
        return self.finest.epsilon

    @property
    def terms(self) -> int:
        return self.finest.terms

    @property
    def method(self) -> str:
        return self.finest.method

    @property
    def converged(self) -> bool:
        return all(rung.converged for rung in self.rungs)

    @property
    def pruned_mass_bound(self) -> float:
        return max(rung.pruned_mass_bound for rung in self.rungs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "t": self.t,
            "estimate": self.estimate,
            "lower_bound": self.lower_bound,
            "extrapolated": self.extrapolated,
            "normalization": self.normalization,
            "method": self.method,
            "converged": self.converged,
            "rungs": [rung.to_dict() for rung in self.rungs],
        }


def determinant_ladder(matrix: TwistedMatrix, params: NumericParams, normalization: float = 1.0) -> DeltaReport:
    rungs = tuple(
        fk_det(
            matrix,
            epsilon,
            params.terms,
            params.prune,
            safety=params.safety,
            tolerance=params.tolerance,
            threads=params.threads,
            max_support=params.max_support,
        )
        for epsilon in params.epsilons
    )
    values = tuple(rung.estimate / normalization for rung in rungs)
    return DeltaReport(matrix.t, normalization, rungs, extrapolate_to_zero(params.epsilons, values))


def delta_at(target: OraclePresentation, t: float, params: NumericParams | None = None) -> DeltaReport:
    """
    Twisted deleted Fox matrix determinant divided by ``max(1, t)^(|α(g)| - 1)``, where ``g``
    is the deleted generator. The result is one representative of its class up to ``t^m``.

    With ``method="auto"`` a matrix in monomial territory is evaluated exactly by
    :func:`factored_det`; everything else goes through the ε ladder.
    """
    params = params or NumericParams()
    presentation = target.presentation
    presentation.check_deficiency_one()
    alpha = abelianization(presentation)
    row = alpha.first_nonzero()
    deleted = delete_row(fox_matrix(presentation), row)
    matrix = twist(deleted, t, alpha, target.oracle)
    normalization = max(1.0, t) ** (abs(alpha.exponents[row]) - 1)

    factored = factored_det(matrix, alpha, params.terms) if params.method == "auto" else None
    if factored is not None:
        value = factored.estimate / normalization
        report = DeltaReport(t, normalization, (factored,), value)
    else:
        report = determinant_ladder(matrix, params, normalization)
    logger.info(
        "delta_at t=%g method=%s estimate=%.10g extrapolated=%.10g",
        t,
        report.method,
        report.estimate,
        report.extrapolated,
    )
    return report


def monomiality_bound(phi: Automorphism, t: float = 1.0) -> float:
    """
    Certified upper bound on ``min(‖A‖, ‖A⁻¹‖)`` for the Fox jacobian ``A`` of the monodromy.
    Fiber words have zero abelianization, so the twist leaves both operators unchanged.
    """
    jac = jacobian(phi)
    oracle = TrivialOracle(phi.rank)
    forward = TwistedMatrix.from_entries(jac.W, oracle, t)
    backward = TwistedMatrix.from_entries(jac.Winv, oracle, t)
    return min(norm_bound(forward), norm_bound(backward))


@dataclass(frozen=True)
class MonomialTerritory:
    t: float
    bound: float
    region: Literal["low", "high", "unknown"]


def monomial_territory(phi: Automorphism, t: float) -> MonomialTerritory:
    """``low`` when ``t < 1/N``, ``high`` when ``t > N``, with ``N`` from :func:`monomiality_bound`."""
    if not t > 0:
        raise NumericError(f"twist parameter must be positive, got {t}")
    bound = monomiality_bound(phi, t)
    if t * bound < 1:
        region = "low"
    elif t > bound:
        region = "high"
    else:
        region = "unknown"
    return MonomialTerritory(t, bound, region)
