#!/usr/bin/python

# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


from __future__ import annotations

DOCUMENTATION = """
---
module: invariant

short_description: Compute the L2-Alexander invariant of a knot.

description:
    - Compute the L2-Alexander invariant of a knot at a list of positive real numbers.
    - Knots with a word-problem oracle (the unknot, fibered catalog entries and explicit
      fibered knots) are computed numerically with a Fuglede-Kadison determinant approximation.
    - Connected sums, cables, mirrors and reverses are evaluated through the invariant algebra.

author:
    - l2alex contributors

options:
    knot:
        description:
            - Knot specification tree, for example C({"type": "catalog", "name": "4_1"}).
            - Mutually exclusive with O(name) and O(braid).
        type: dict
    name:
        description:
            - Catalog name of the knot, for example C(4_1), C(5_2) or C(T(2,5)).
        type: str
    braid:
        description:
            - Braid word whose closure is the knot, for example C(s1^3).
        type: str
    t:
        description:
            - Positive real numbers at which the invariant is evaluated.
        default: [1.0]
        type: list
        elements: float
    summary:
        description:
            - Also return the invariant summary of the knot.
        default: false
        type: bool
extends_documentation_fragment:
- topology.l2alex.l2alex

"""

EXAMPLES = """
- name: Compute the invariant of the figure-eight knot
  topology.l2alex.invariant:
    name: "4_1"
    t: [0.5, 1.0, 2.0]
    eps: [0.1, 0.01]
  register: output

- name: Evaluate a connected sum symbolically
  topology.l2alex.invariant:
    knot:
      type: sum
      left: {type: catalog, name: "3_1"}
      right: {type: catalog, name: "4_1"}
    t: [1.0, 3.0]
    summary: true
  register: output

- name: Print the rows
  debug:
    var: output.l2alex_invariant.rows
"""

RETURN = """
l2alex_invariant:
    description: The invariant of the knot
    returned: always
    type: complex
    contains:
        knot:
            description: Knot specification tree that was evaluated
            returned: always
            type: dict
            sample: {"type": "catalog", "name": "4_1"}
        mode:
            description: How the rows were computed, C(numeric) or C(symbolic)
            returned: always
            type: str
            sample: numeric
        rows:
            description: |
              One entry per sample. Numeric rows carry C(estimate), C(lower_bound), C(extrapolated),
              C(epsilon), C(terms), C(method), C(pruned_mass_bound) and C(converged).
              C(method=factored) rows are exact and carry C(epsilon=0). C(converged) is false when
              the support budget cut the series short or its tail bound exceeds the tolerance.
              Symbolic rows carry C(value), C(expression), C(genus), C(volume) and C(lambda).
            returned: always
            type: list
            elements: dict
            sample: [{"t": 1.0, "estimate": 1.11, "extrapolated": 1.114, "converged": true}]
        summary:
            description: Invariant summary of the knot
            returned: when O(summary=true)
            type: dict
            sample: {"schema": "l2alex/1", "genus": 1, "volume": 2.0299, "lambda": "lambda_F"}
"""

from ansible.module_utils.basic import AnsibleModule

from ..module_utils.cli import invariant_rows
from ..module_utils.errors import L2AlexException
from ..module_utils.invariants import expr_of, summarize
from ..module_utils.knots import CatalogKnot, KnotSpec, knot_from_dict, parse_braid
from ..module_utils.l2alex import AnsibleL2Alex


class AnsibleL2AlexInvariant(AnsibleL2Alex):
    represent = "l2alex_invariant"

    l2alex_invariant: dict | None = None

    def _prepare_result(self):
        return self.l2alex_invariant

    def _knot(self) -> KnotSpec:
        if self.module.params.get("knot") is not None:
            return knot_from_dict(self.module.params.get("knot"))
        if self.module.params.get("braid") is not None:
            return parse_braid(self.module.params.get("braid"))
        return CatalogKnot(self.module.params.get("name"))

    def compute(self):
        params = self.numeric_params()
        try:
            knot = self._knot()
            mode, rows = invariant_rows(knot, self.module.params.get("t"), params, params.threads)
            self.l2alex_invariant = {"knot": knot.to_dict(), "mode": mode, "rows": rows}
            if self.module.params.get("summary"):
                self.l2alex_invariant["summary"] = summarize(expr_of(knot)).to_dict()

        except L2AlexException as exception:
            self.fail_json_l2alex(exception)

    @classmethod
    def define_module(cls):
        return AnsibleModule(
            argument_spec=dict(
                knot={"type": "dict"},
                name={"type": "str"},
                braid={"type": "str"},
                t={"type": "list", "elements": "float", "default": [1.0]},
                summary={"type": "bool", "default": False},
                **super().base_module_arguments(),
            ),
            required_one_of=[["knot", "name", "braid"]],
            mutually_exclusive=[["knot", "name", "braid"]],
            supports_check_mode=True,
        )


def main():
    module = AnsibleL2AlexInvariant.define_module()
    l2alex = AnsibleL2AlexInvariant(module)

    l2alex.compute()
    module.exit_json(**l2alex.get_result())


if __name__ == "__main__":
    main()
