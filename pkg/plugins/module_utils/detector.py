# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Knot detection from invariant summaries.

The ladder relies on these hyperbolic census facts as premises:

* the figure-eight knot is the only hyperbolic fibered knot of genus one;
* among genus one knots, 5_2 is the only one with ``exp(vol/6π) ≈ 1.162`` and a
  leading coefficient in ``[1, 1.162)``, using the Whitehead link volume bound 3.66,
  the census manifolds m015, m016, m017 of volume below three regular ideal
  tetrahedra, and the homology obstructions Z + Z/5 and Z + Z/7;
* a cable ``C_{p,1}(4_1)`` is the only knot with volume ``vol(4_1)``, genus ``p`` and
  monomiality limit ``λ_F^(1/p)``.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

from .errors import InconsistentSummaryError, ParseError
from .invariants import (
    SUMMARY_TOLERANCE,
    InvariantSummary,
    MonomialityLimit,
    equivalent,
    expr_of,
    genus_of,
    lambda_of,
    summarize,
    volume_entropy_bound,
    volume_of,
)
from .knots import build_family, catalog

HAS_SYMPY = True

try:
    import sympy
except ImportError:
    HAS_SYMPY = False

logger = logging.getLogger(__name__)

ZERO_TOLERANCE = 1e-9

VERDICT_DETECTED = "detected"
VERDICT_ITERATED_TORUS = "iterated_torus"
VERDICT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class DetectionResult:
    """
    Verdict of the detector. ``names`` is closed under mirror image; reversion does not
    change the invariant and is not listed.
    """

    verdict: Literal["detected", "iterated_torus", "unknown"]
    names: tuple[str, ...] = ()
    genus: int | None = None
    reason: str = ""
    clause: str = ""
    failures: dict[str, str] = field(default_factory=dict)

    def format(self) -> str:
        if self.verdict == VERDICT_DETECTED:
            return self.names[0]
        if self.verdict == VERDICT_ITERATED_TORUS:
            return f"iterated torus knot of genus {self.genus}"
        return f"unknown: {self.reason}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "names": list(self.names),
            "genus": self.genus,
            "clause": self.clause,
            "reason": self.reason,
            "failures": dict(self.failures),
        }


def _up_to_mirror(name: str, amphichiral: bool) -> tuple[str, ...]:
    return (name,) if amphichiral else (name, f"mirror({name})")


def _detected(name: str, clause: str, amphichiral: bool = False, genus: int | None = None) -> DetectionResult:
    return DetectionResult(VERDICT_DETECTED, _up_to_mirror(name, amphichiral), genus=genus, clause=clause)


@dataclass(frozen=True)
class IteratedTorusCheck:
    result: bool
    certificate: str
    volume: float
    value_at_1: float

    def __bool__(self) -> bool:
        return self.result


def is_iterated_torus(summary: InvariantSummary) -> IteratedTorusCheck:
    """
    A knot is an iterated torus knot exactly when its volume is 0, exactly when its
    invariant is 1 at ``t = 1``.

    :raises InconsistentSummaryError: when the two clauses disagree
    """
    volume_zero = abs(summary.volume) <= ZERO_TOLERANCE
    value_one = abs(summary.value_at_1 - 1) <= ZERO_TOLERANCE
    if volume_zero != value_one:
        raise InconsistentSummaryError(
            f"volume {summary.volume} and value at 1 {summary.value_at_1} disagree on iterated torus type",
        )
    certificate = "vol(K) = 0 and value at t=1 is 1" if volume_zero else "vol(K) > 0 and value at t=1 exceeds 1"
    return IteratedTorusCheck(volume_zero, certificate, summary.volume, summary.value_at_1)


def _close(value: float, reference: float) -> bool:
    return abs(value - reference) <= SUMMARY_TOLERANCE


def _family_prime(limit: MonomialityLimit | None) -> int | None:
    """The prime p when the limit is exactly ``λ_F^(1/p)``."""
    if limit is None or len(limit.terms) != 1:
        return None
    ((name, exponent),) = tuple(limit.terms)
    if name != catalog("4_1").lambda_symbol or exponent.numerator != 1:
        return None
    p = exponent.denominator
    return p if sympy.isprime(p) and exponent == Fraction(1, p) else None


def detect(summary: InvariantSummary) -> DetectionResult:
    """
    Decision ladder: unknot, iterated torus knots and the trefoil, the figure-eight
    knot, 5_2 given its leading coefficient, the cables ``C_{p,1}(4_1)``; anything else
    is unknown with the failing clauses named.
    """
    summary.validate(SUMMARY_TOLERANCE)
    figure_eight = catalog("4_1")
    five_two = catalog("5_2")

    if summary.genus == 0:
        if not is_iterated_torus(summary):
            raise InconsistentSummaryError(
                f"genus 0 forces the unknot, but the volume is {summary.volume} and the value at 1 is "
                f"{summary.value_at_1}"
            )
        return _detected("unknot", "a", amphichiral=True, genus=0)

    if is_iterated_torus(summary):
        if summary.genus == 1:
            return _detected("3_1", "b", genus=1)
        return DetectionResult(VERDICT_ITERATED_TORUS, genus=summary.genus, clause="b")

    failures: dict[str, str] = {}

    if summary.genus != 1:
        failures["c"] = f"genus is {summary.genus}, not 1"
    elif summary.monomial_tails is not True:
        failures["c"] = "tails are not known to be monomial"
    elif not _close(summary.value_at_1, figure_eight.exp_vol_over_6pi):
        failures["c"] = f"value at 1 is {summary.value_at_1:.4f}, not {figure_eight.exp_vol_over_6pi:.4f}"
    else:
        return _detected("4_1", "c", amphichiral=True, genus=1)

    if summary.leading_C is None:
        failures["d"] = "leading coefficient C is not supplied"
    elif not 1 <= summary.leading_C < five_two.exp_vol_over_6pi:
        failures["d"] = f"leading coefficient {summary.leading_C} is outside [1, {five_two.exp_vol_over_6pi:.3f})"
    elif summary.genus != 1:
        failures["d"] = f"genus is {summary.genus}, not 1"
    elif not _close(summary.value_at_1, five_two.exp_vol_over_6pi):
        failures["d"] = f"value at 1 is {summary.value_at_1:.4f}, not {five_two.exp_vol_over_6pi:.4f}"
    else:
        return _detected("5_2", "d", genus=1)

    p = _family_prime(summary.monomiality_limit)
    if not _close(summary.volume, figure_eight.volume):
        failures["e"] = f"volume is {summary.volume:.4f}, not vol(4_1)"
    elif p is None:
        failures["e"] = f"monomiality limit {summary.monomiality_limit} is not lambda_F^(1/p) for a prime p"
    elif summary.genus != p:
        failures["e"] = f"genus {summary.genus} differs from p = {p}"
    else:
        return _detected(f"C_{{{p},1}}(4_1)", "e", genus=p)

    reason = failures["c"] if summary.genus == 1 else failures["e"]
    if summary.monomial_tails is None:
        reason = (
            f"{reason}; tails are not known to be monomial and whether a non-fibered knot can have "
            "a finite monomiality limit is open"
        )
    logger.debug("no detection clause matched: %s", failures)
    return DetectionResult(VERDICT_UNKNOWN, genus=summary.genus, reason=reason, clause="f", failures=failures)


def detection_diagnostics(summary: InvariantSummary) -> dict[str, Any]:
    """Side facts reported next to a verdict. ``entropy_lower_bound`` bounds ``ln λ`` from below."""
    return {"entropy_lower_bound": volume_entropy_bound(summary)}


@dataclass(frozen=True)
class FamilyAuditRow:
    n: int
    p: int
    genus_J: int
    genus_K: int
    volume_J: float
    volume_K: float
    lambda_J: str
    lambda_K: str
    detected_K: str
    clauses: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.clauses.items() if not ok]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "p": self.p,
            "genus_J": self.genus_J,
            "genus_K": self.genus_K,
            "volume_J": self.volume_J,
            "volume_K": self.volume_K,
            "lambda_J": self.lambda_J,
            "lambda_K": self.lambda_K,
            "detected_K": self.detected_K,
            "clauses": dict(self.clauses),
            "passed": self.passed,
        }


def audit_row(n: int) -> FamilyAuditRow:
    family = build_family(n)
    j_expr, k_expr = expr_of(family.J), expr_of(family.K)
    genus_j, genus_k = genus_of(j_expr), genus_of(k_expr)
    volume_j, volume_k = volume_of(j_expr), volume_of(k_expr)
    detection = detect(summarize(k_expr))
    expected = f"C_{{{family.p},1}}(4_1)"
    clauses = {
        "genus": genus_j == genus_k == family.p,
        "volume": math.isclose(volume_j, volume_k, rel_tol=1e-12),
        "inequivalent": not equivalent(j_expr, k_expr),
        "detected": detection.verdict == VERDICT_DETECTED and detection.names[0] == expected,
    }
    return FamilyAuditRow(
        n=n,
        p=family.p,
        genus_J=genus_j,
        genus_K=genus_k,
        volume_J=volume_j,
        volume_K=volume_k,
        lambda_J=str(lambda_of(j_expr)),
        lambda_K=str(lambda_of(k_expr)),
        detected_K=detection.format(),
        clauses=clauses,
    )


@dataclass(frozen=True)
class FamilyAuditReport:
    rows: tuple[FamilyAuditRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_dict(self) -> dict[str, Any]:
        return {"passed": self.passed, "rows": [row.to_dict() for row in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def format_table(self) -> str:
        header = ("n", "p", "g(J)", "g(K)", "vol(J)", "vol(K)", "lambda(J)", "lambda(K)", "detect(K)", "result")
        lines = [header]
        for row in self.rows:
            lines.append(
                (
                    str(row.n),
                    str(row.p),
                    str(row.genus_J),
                    str(row.genus_K),
                    f"{row.volume_J:.6f}",
                    f"{row.volume_K:.6f}",
                    row.lambda_J,
                    row.lambda_K,
                    row.detected_K,
                    "pass" if row.passed else "fail: " + ",".join(row.failures),
                )
            )
        widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
        return "\n".join("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() for line in lines)


def family_audit(n_max: int, threads: int = 1) -> FamilyAuditReport:
    """
    Compare ``J_n`` and ``K_n`` for ``n <= n_max``: equal genus, equal volume, distinct
    invariants and detection of ``K_n``. Rows keep their order whatever the thread count.
    """
    if n_max < 0:
        raise ParseError(f"family index must be nonnegative, got {n_max}")
    indices = range(n_max + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = tuple(executor.map(audit_row, indices))
    else:
        rows = tuple(audit_row(n) for n in indices)
    for row in rows:
        if not row.passed:
            logger.warning("family audit n=%d failed clauses %s", row.n, row.failures)
    return FamilyAuditReport(rows)
