# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import annotations

from typing import Any


class L2AlexException(Exception):
    """There was an error while computing a knot invariant."""

    code: str = "l2alex_error"
    exit_code: int = 1

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        return f"{self.message} ({self.code})"


class ParseError(L2AlexException):
    """The input text could not be parsed."""

    code = "parse_error"
    exit_code = 2

    def __init__(self, message: str, position: int | None = None, details: dict[str, Any] | None = None):
        details = dict(details or {})
        if position is not None:
            details["position"] = position
            message = f"{message} at position {position}"
        super().__init__(message, details)
        self.position = position


class DeficiencyError(L2AlexException):
    """The presentation does not have deficiency one."""

    code = "wrong_deficiency"
    exit_code = 2


class NotAKnotGroupError(L2AlexException):
    """The presented group is not a knot group (H1 is not infinite cyclic, or several components)."""

    code = "not_a_knot_group"
    exit_code = 2


class InvalidAutomorphismError(L2AlexException):
    """The given maps are not mutually inverse automorphisms of the free group."""

    code = "invalid_automorphism"
    exit_code = 2


class UnknownKnotError(L2AlexException):
    """The catalog does not know the knot."""

    code = "unknown_knot"
    exit_code = 2


class InconsistentSummaryError(L2AlexException):
    """The invariant summary contradicts itself."""

    code = "inconsistent_summary"
    exit_code = 2


class AlphabetError(L2AlexException):
    """A word uses a letter the normal form oracle does not know."""

    code = "alphabet_error"
    exit_code = 3


class UnsupportedOracleError(L2AlexException):
    """No word-problem oracle is available for the knot group."""

    code = "unsupported_oracle"
    exit_code = 3


class UnsupportedLeafError(L2AlexException):
    """The knot tree contains a leaf the invariant algebra cannot express."""

    code = "unsupported_leaf"
    exit_code = 3


class UndefinedLambdaError(L2AlexException):
    """The monomiality limit is not defined for a non-fibered leaf."""

    code = "undefined_lambda"
    exit_code = 3


class NumericError(L2AlexException):
    """A numeric parameter or result is out of range."""

    code = "numeric_error"
    exit_code = 4
