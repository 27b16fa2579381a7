# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Symbolic expressions for the L²-Alexander invariant of composite knots.

Expressions are built from catalog leaves with the connected sum, cabling and
mirror rules. Torus-type leaves are exact functions ``t^m·max(1, t)^n``; hyperbolic
leaves are known at ``t = 1`` and, when a monomiality bound is cataloged, away
from ``[1/N, N]``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import (
    InconsistentSummaryError,
    ParseError,
    UndefinedLambdaError,
    UnsupportedLeafError,
)
from .knots import (
    BraidKnot,
    CableKnot,
    CatalogKnot,
    FiberedKnot,
    KnotSpec,
    MirrorKnot,
    ReverseKnot,
    SumKnot,
    catalog,
    catalog_names,
    is_trivial_braid,
    parse_braid,
)

SCHEMA = "l2alex/1"

# User supplied constants are printed to four significant figures.
SUMMARY_TOLERANCE = 1e-3
CONSISTENCY_TOLERANCE = 1e-9

SAMPLE_POINTS = (1 / 16, 1 / 8, 1 / 4, 1 / 2, 1.0, 2.0, 4.0, 8.0, 16.0)


class InvariantExpr:
    def format(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class TorusBase(InvariantExpr):
    """``max(1, t)^(2g)``"""

    genus: int

    def format(self) -> str:
        if self.genus == 0:
            return "1"
        return f"max(1,t)^{2 * self.genus}"


@dataclass(frozen=True)
class HyperbolicBase(InvariantExpr):
    name: str

    def format(self) -> str:
        return f"Delta[{self.name}]"


@dataclass(frozen=True)
class MonomialShift(InvariantExpr):
    """``t^degree``"""

    degree: int

    def format(self) -> str:
        return f"t^{self.degree}"


@dataclass(frozen=True)
class Product(InvariantExpr):
    factors: tuple[InvariantExpr, ...]

    def format(self) -> str:
        return " * ".join(f.format() for f in self.factors) or "1"


@dataclass(frozen=True)
class CableMap(InvariantExpr):
    """``f(t^p)·max(1, t)^((|p|-1)(|q|-1))``"""

    p: int
    q: int
    inner: InvariantExpr

    def __post_init__(self):
        if self.p == 0 or math.gcd(self.p, self.q) != 1:
            raise ParseError(f"cable parameters ({self.p}, {self.q}) need p != 0 and gcd(p, q) = 1")

    @property
    def extra_exponent(self) -> int:
        return (abs(self.p) - 1) * (abs(self.q) - 1)

    def format(self) -> str:
        return f"Cable[{self.p},{self.q}]({self.inner.format()})"


@dataclass(frozen=True)
class Recip(InvariantExpr):
    """``f(1/t)``"""

    inner: InvariantExpr

    def format(self) -> str:
        return f"Recip({self.inner.format()})"


def product(*factors: InvariantExpr) -> Product:
    flat: list[InvariantExpr] = []
    for factor in factors:
        if isinstance(factor, Product):
            flat.extend(factor.factors)
        else:
            flat.append(factor)
    return Product(tuple(flat))


def _catalog_braids() -> dict[tuple[int, ...], str]:
    braids = {}
    for name in catalog_names():
        entry = catalog(name)
        if entry.braid:
            braids[parse_braid(entry.braid).word] = name
    return braids


def _leaf(name: str) -> InvariantExpr:
    entry = catalog(name)
    if entry.volume == 0:
        return TorusBase(entry.genus)
    return HyperbolicBase(entry.name)


def expr_of(knot: KnotSpec) -> InvariantExpr:
    """
    Structural translation: sums become products, cables cable maps, mirror and
    reversion become ``t ↦ 1/t``.

    :raises UnsupportedLeafError: for braid or fibered leaves that are not cataloged
    """
    if isinstance(knot, CatalogKnot):
        return _leaf(knot.name)
    if isinstance(knot, BraidKnot):
        if is_trivial_braid(knot):
            return TorusBase(0)
        name = _catalog_braids().get(knot.word)
        if name is None:
            raise UnsupportedLeafError(f"braid {knot.format()!r} is not a cataloged knot")
        return _leaf(name)
    if isinstance(knot, FiberedKnot):
        for name in catalog_names():
            entry = catalog(name)
            if entry.monodromy is not None and entry.monodromy == knot.monodromy:
                return _leaf(name)
        raise UnsupportedLeafError("fibered leaf with an uncataloged monodromy has no symbolic expression")
    if isinstance(knot, SumKnot):
        return product(expr_of(knot.left), expr_of(knot.right))
    if isinstance(knot, CableKnot):
        return CableMap(knot.p, knot.q, expr_of(knot.companion))
    if isinstance(knot, (MirrorKnot, ReverseKnot)):
        return Recip(expr_of(knot.knot))
    raise UnsupportedLeafError(f"unsupported knot node {type(knot).__name__}")


def tail_degrees(expr: InvariantExpr) -> tuple[int, int]:
    """Degrees ``(d0, d∞)`` with ``f(t) ~ C·t^d0`` as ``t → 0`` and ``f(t) ~ C'·t^d∞`` as ``t → ∞``."""
    if isinstance(expr, TorusBase):
        return 0, 2 * expr.genus
    if isinstance(expr, MonomialShift):
        return expr.degree, expr.degree
    if isinstance(expr, HyperbolicBase):
        return 0, 2 * catalog(expr.name).genus
    if isinstance(expr, Product):
        tails = [tail_degrees(f) for f in expr.factors]
        return sum(d0 for d0, _ in tails), sum(d for _, d in tails)
    if isinstance(expr, CableMap):
        low, high = tail_degrees(expr.inner)
        if expr.p > 0:
            return expr.p * low, expr.p * high + expr.extra_exponent
        return expr.p * high, expr.p * low + expr.extra_exponent
    if isinstance(expr, Recip):
        low, high = tail_degrees(expr.inner)
        return -high, -low
    raise UnsupportedLeafError(f"unsupported expression node {type(expr).__name__}")


def genus_of(expr: InvariantExpr) -> int:
    if isinstance(expr, TorusBase):
        return expr.genus
    if isinstance(expr, MonomialShift):
        return 0
    if isinstance(expr, HyperbolicBase):
        return catalog(expr.name).genus
    if isinstance(expr, Product):
        return sum(genus_of(f) for f in expr.factors)
    if isinstance(expr, CableMap):
        return abs(expr.p) * genus_of(expr.inner) + expr.extra_exponent // 2
    if isinstance(expr, Recip):
        return genus_of(expr.inner)
    raise UnsupportedLeafError(f"unsupported expression node {type(expr).__name__}")


def volume_of(expr: InvariantExpr) -> float:
    if isinstance(expr, (TorusBase, MonomialShift)):
        return 0.0
    if isinstance(expr, HyperbolicBase):
        return catalog(expr.name).volume
    if isinstance(expr, Product):
        return math.fsum(volume_of(f) for f in expr.factors)
    if isinstance(expr, (CableMap, Recip)):
        return volume_of(expr.inner)
    raise UnsupportedLeafError(f"unsupported expression node {type(expr).__name__}")


def value_at_1(expr: InvariantExpr) -> float:
    return math.exp(volume_of(expr) / (6 * math.pi))


def monomial_tails(expr: InvariantExpr) -> bool | None:
    """True when every leaf is fibered, None when some leaf has unknown tail behavior."""
    if isinstance(expr, (TorusBase, MonomialShift)):
        return True
    if isinstance(expr, HyperbolicBase):
        return True if catalog(expr.name).fibered else None
    if isinstance(expr, Product):
        tails = [monomial_tails(f) for f in expr.factors]
        return None if None in tails else True
    if isinstance(expr, (CableMap, Recip)):
        return monomial_tails(expr.inner)
    raise UnsupportedLeafError(f"unsupported expression node {type(expr).__name__}")


_LIMIT_TERM_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^\((-?\d+(?:/\d+)?)\)|\^(-?\d+))?$")


@dataclass(frozen=True)
class MonomialityLimit:
    """
    Formal maximum of powers ``λ_base^r`` of named constants, each known to exceed 1.

    The empty maximum is 1.
    """

    terms: frozenset = frozenset()

    @classmethod
    def one(cls) -> MonomialityLimit:
        return cls()

    @classmethod
    def base(cls, name: str) -> MonomialityLimit:
        return cls(frozenset({(name, Fraction(1))}))

    def is_one(self) -> bool:
        return not self.terms

    def root(self, p: int) -> MonomialityLimit:
        return MonomialityLimit(frozenset((name, r / abs(p)) for name, r in self.terms))

    def max(self, other: MonomialityLimit) -> MonomialityLimit:
        exponents: dict[str, Fraction] = {}
        for name, r in list(self.terms) + list(other.terms):
            exponents[name] = max(r, exponents.get(name, r))
        return MonomialityLimit(frozenset(exponents.items()))

    def format(self) -> str:
        if not self.terms:
            return "1"
        parts = []
        for name, r in sorted(self.terms):
            if r == 1:
                parts.append(name)
            elif r.denominator == 1:
                parts.append(f"{name}^{r.numerator}")
            else:
                parts.append(f"{name}^({r})")
        return parts[0] if len(parts) == 1 else f"max({', '.join(parts)})"

    def __str__(self) -> str:
        return self.format()

    @classmethod
    def parse(cls, text: str) -> MonomialityLimit:
        stripped = re.sub(r"\s+", "", str(text))
        if stripped in ("", "1"):
            return cls.one()
        if stripped.startswith("max(") and stripped.endswith(")"):
            items = stripped[4:-1].split(",")
        else:
            items = [stripped]
        result = cls.one()
        for item in items:
            match = _LIMIT_TERM_RE.match(item)
            if match is None:
                raise ParseError(f"malformed monomiality limit {text!r}")
            exponent = match.group(2) or match.group(3) or "1"
            value = Fraction(exponent)
            if value <= 0:
                raise ParseError(f"monomiality limit exponent must be positive in {text!r}")
            result = result.max(cls(frozenset({(match.group(1), value)})))
        return result


def lambda_of(expr: InvariantExpr) -> MonomialityLimit:
    """
    :raises UndefinedLambdaError: when a leaf is not fibered
    """
    if isinstance(expr, (TorusBase, MonomialShift)):
        return MonomialityLimit.one()
    if isinstance(expr, HyperbolicBase):
        entry = catalog(expr.name)
        if not entry.fibered or entry.lambda_symbol is None:
            raise UndefinedLambdaError(
                f"monomiality limit of {expr.name} is not defined, the knot is not fibered",
                details={"knot": expr.name},
            )
        return MonomialityLimit.base(entry.lambda_symbol)
    if isinstance(expr, Product):
        result = MonomialityLimit.one()
        for factor in expr.factors:
            result = result.max(lambda_of(factor))
        return result
    if isinstance(expr, CableMap):
        return lambda_of(expr.inner).root(expr.p)
    if isinstance(expr, Recip):
        return lambda_of(expr.inner)
    raise UnsupportedLeafError(f"unsupported expression node {type(expr).__name__}")


def evaluate(expr: InvariantExpr, t: float) -> float | None:
    """
    Value of the expression's representative at ``t``, or None where it is not determined.
    """
    if not t > 0:
        raise ParseError(f"evaluation point must be positive, got {t}")
    if isinstance(expr, TorusBase):
        return max(1.0, t) ** (2 * expr.genus)
    if isinstance(expr, MonomialShift):
        return t**expr.degree
    if isinstance(expr, HyperbolicBase):
        entry = catalog(expr.name)
        if t == 1:
            return entry.exp_vol_over_6pi
        if entry.monomial_bound is not None:
            if t * entry.monomial_bound < 1:
                return 1.0
            if t > entry.monomial_bound:
                return t ** (2 * entry.genus)
        return None
    if isinstance(expr, Product):
        value = 1.0
        for factor in expr.factors:
            factor_value = evaluate(factor, t)
            if factor_value is None:
                return None
            value *= factor_value
        return value
    if isinstance(expr, CableMap):
        inner = evaluate(expr.inner, t**expr.p)
        if inner is None:
            return None
        return inner * max(1.0, t) ** expr.extra_exponent
    if isinstance(expr, Recip):
        return evaluate(expr.inner, 1 / t)
    raise UnsupportedLeafError(f"unsupported expression node {type(expr).__name__}")


def piecewise_monomial(expr: InvariantExpr) -> tuple[int, int] | None:
    """Exponents ``(m, n)`` with ``f(t) = t^m·max(1, t)^n``, or None for hyperbolic leaves."""
    if isinstance(expr, TorusBase):
        return 0, 2 * expr.genus
    if isinstance(expr, MonomialShift):
        return expr.degree, 0
    if isinstance(expr, HyperbolicBase):
        return None
    if isinstance(expr, Product):
        m = n = 0
        for factor in expr.factors:
            pair = piecewise_monomial(factor)
            if pair is None:
                return None
            m += pair[0]
            n += pair[1]
        return m, n
    if isinstance(expr, CableMap):
        pair = piecewise_monomial(expr.inner)
        if pair is None:
            return None
        m, n = pair
        if expr.p > 0:
            return expr.p * m, expr.p * n + expr.extra_exponent
        return expr.p * m - abs(expr.p) * n, abs(expr.p) * n + expr.extra_exponent
    if isinstance(expr, Recip):
        pair = piecewise_monomial(expr.inner)
        if pair is None:
            return None
        m, n = pair
        return -m - n, n
    raise UnsupportedLeafError(f"unsupported expression node {type(expr).__name__}")


def canonical(expr: InvariantExpr) -> InvariantExpr:
    """Remove double reciprocals and flatten, order and merge product factors."""
    if isinstance(expr, Recip):
        inner = canonical(expr.inner)
        if isinstance(inner, Recip):
            return inner.inner
        return Recip(inner)
    if isinstance(expr, CableMap):
        return CableMap(expr.p, expr.q, canonical(expr.inner))
    if isinstance(expr, Product):
        factors = [canonical(f) for f in expr.factors]
        flat = product(*factors).factors
        if len(flat) == 1:
            return flat[0]
        return Product(tuple(sorted(flat, key=repr)))
    return expr


@dataclass(frozen=True)
class Equivalence:
    """Outcome of comparing two expressions up to a monomial factor ``t^shift``."""

    equivalent: bool
    exact: bool
    reason: str
    shift: int | None = None
    samples: tuple[tuple[float, float, float], ...] = ()

    def __bool__(self) -> bool:
        return self.equivalent


def equivalent(first: InvariantExpr, second: InvariantExpr) -> Equivalence:
    """
    Decide ``first ≐ second``. Piecewise-monomial expressions are compared exactly;
    with hyperbolic leaves, differing genus, volume or monomiality limit separate the
    two exactly, otherwise the ratio is sampled where both values are determined.
    """
    first_pair = piecewise_monomial(first)
    second_pair = piecewise_monomial(second)
    if first_pair is not None and second_pair is not None:
        if first_pair[1] != second_pair[1]:
            return Equivalence(False, True, f"degree spans {first_pair[1]} and {second_pair[1]} differ")
        return Equivalence(True, True, "equal piecewise monomials", shift=first_pair[0] - second_pair[0])

    if canonical(first) == canonical(second):
        return Equivalence(True, True, "structurally equal", shift=0)

    if genus_of(first) != genus_of(second):
        return Equivalence(False, True, f"genus {genus_of(first)} differs from {genus_of(second)}")
    if not math.isclose(volume_of(first), volume_of(second), rel_tol=CONSISTENCY_TOLERANCE, abs_tol=1e-12):
        return Equivalence(False, True, f"volume {volume_of(first)} differs from {volume_of(second)}")

    try:
        first_lambda, second_lambda = lambda_of(first), lambda_of(second)
    except UndefinedLambdaError:
        first_lambda = second_lambda = None
    if first_lambda is not None and first_lambda != second_lambda:
        return Equivalence(
            False,
            True,
            f"monomiality limits {first_lambda} and {second_lambda} differ, all bases exceed 1",
        )

    shift = tail_degrees(first)[0] - tail_degrees(second)[0]
    samples = []
    for t in SAMPLE_POINTS:
        first_value, second_value = evaluate(first, t), evaluate(second, t)
        if first_value is None or second_value is None:
            continue
        ratio = first_value / (second_value * t**shift)
        samples.append((t, first_value, second_value))
        if not math.isclose(ratio, 1.0, rel_tol=CONSISTENCY_TOLERANCE):
            return Equivalence(False, False, f"ratio {ratio} at t={t} is not 1", shift=shift, samples=tuple(samples))
    return Equivalence(
        True,
        False,
        f"genus, volume and monomiality limit agree; {len(samples)} sampled ratios are constant",
        shift=shift,
        samples=tuple(samples),
    )


@dataclass(frozen=True)
class InvariantSummary:
    genus: int
    volume: float
    value_at_1: float
    monomiality_limit: MonomialityLimit | None = None
    monomial_tails: bool | None = None
    leading_C: float | None = None

    def validate(self, tolerance: float = CONSISTENCY_TOLERANCE) -> InvariantSummary:
        """
        :raises InconsistentSummaryError: when the fields contradict each other
        """
        if isinstance(self.genus, bool) or not isinstance(self.genus, int) or self.genus < 0:
            raise InconsistentSummaryError(f"genus must be a nonnegative integer, got {self.genus!r}")
        if self.volume < 0:
            raise InconsistentSummaryError(f"volume must be nonnegative, got {self.volume}")
        expected = math.exp(self.volume / (6 * math.pi))
        if abs(self.value_at_1 - expected) > tolerance:
            raise InconsistentSummaryError(
                f"value at 1 is {self.value_at_1}, exp(volume/6pi) is {expected}",
                details={"value_at_1": self.value_at_1, "expected": expected},
            )
        if self.monomial_tails and self.monomiality_limit is not None:
            if self.monomiality_limit.is_one() != (self.volume <= tolerance):
                raise InconsistentSummaryError(
                    f"monomiality limit {self.monomiality_limit} contradicts volume {self.volume}",
                )
        if self.leading_C is not None and self.leading_C <= 0:
            raise InconsistentSummaryError(f"leading coefficient must be positive, got {self.leading_C}")
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "genus": self.genus,
            "volume": self.volume,
            "value_at_1": self.value_at_1,
            "lambda": str(self.monomiality_limit) if self.monomiality_limit is not None else None,
            "monomial_tails": self.monomial_tails,
            "leading_C": self.leading_C,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], tolerance: float = SUMMARY_TOLERANCE) -> InvariantSummary:
        if not isinstance(data, dict):
            raise ParseError(f"summary must be an object, got {type(data).__name__}")
        schema = data.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise ParseError(f"unsupported summary schema {schema!r}")
        for key in ("genus", "volume"):
            if key not in data:
                raise ParseError(f"summary is missing {key!r}")
        try:
            volume = float(data["volume"])
            value = data.get("value_at_1")
            summary = cls(
                genus=data["genus"],
                volume=volume,
                value_at_1=float(value) if value is not None else math.exp(volume / (6 * math.pi)),
                monomiality_limit=MonomialityLimit.parse(data["lambda"]) if data.get("lambda") is not None else None,
                monomial_tails=data.get("monomial_tails"),
                leading_C=float(data["leading_C"]) if data.get("leading_C") is not None else None,
            )
        except (TypeError, ValueError) as exception:
            raise ParseError(f"malformed summary: {exception}") from exception
        return summary.validate(tolerance)


def summarize(expr: InvariantExpr, leading_C: float | None = None) -> InvariantSummary:
    try:
        limit = lambda_of(expr)
    except UndefinedLambdaError:
        limit = None
    summary = InvariantSummary(
        genus=genus_of(expr),
        volume=volume_of(expr),
        value_at_1=value_at_1(expr),
        monomiality_limit=limit,
        monomial_tails=monomial_tails(expr),
        leading_C=leading_C,
    )
    return summary.validate()


def volume_entropy_bound(summary: InvariantSummary) -> float | None:
    """
    Lower bound ``vol / (3π·2g)`` on ``ln λ`` for a fibered knot, obtained from the
    multiplicative convexity of the invariant. None when it does not apply.
    """
    if summary.genus == 0 or not summary.monomial_tails:
        return None
    return summary.volume / (3 * math.pi * 2 * summary.genus)
