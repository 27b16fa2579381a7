from __future__ import annotations

from typing import Any

from ansible.errors import AnsibleFilterError
from ansible.module_utils.common.text.converters import to_native

from ..module_utils.detector import detect
from ..module_utils.invariants import InvariantSummary, equivalent, expr_of, summarize
from ..module_utils.knots import knot_from_dict


# pylint: disable=unused-argument
def knot_summary(knot: dict, leading_c: float | None = None, *args, **kwargs) -> dict[str, Any]:
    """
    Return the invariant summary of a knot specification tree.
    """
    try:
        return summarize(expr_of(knot_from_dict(knot)), leading_c).to_dict()
    except Exception as exc:
        raise AnsibleFilterError(f"knot_summary - {to_native(exc)}", orig_exc=exc) from exc


# pylint: disable=unused-argument
def knot_detect(summary: dict, *args, **kwargs) -> str:
    """
    Return the knot detected by an invariant summary.
    """
    try:
        return detect(InvariantSummary.from_dict(summary)).format()
    except Exception as exc:
        raise AnsibleFilterError(f"knot_detect - {to_native(exc)}", orig_exc=exc) from exc


# pylint: disable=unused-argument
def knot_equivalent(first: dict, second: dict, *args, **kwargs) -> bool:
    """
    Return whether two knots have the same invariant up to a monomial factor.
    """
    try:
        return bool(equivalent(expr_of(knot_from_dict(first)), expr_of(knot_from_dict(second))))
    except Exception as exc:
        raise AnsibleFilterError(f"knot_equivalent - {to_native(exc)}", orig_exc=exc) from exc


class FilterModule:
    """
    Knot invariant filters.
    """

    def filters(self):
        return {
            "knot_summary": knot_summary,
            "knot_detect": knot_detect,
            "knot_equivalent": knot_equivalent,
        }
