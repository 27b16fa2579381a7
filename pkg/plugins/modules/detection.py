#!/usr/bin/python

# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


from __future__ import annotations

DOCUMENTATION = """
---
module: detection

short_description: Decide which knot an invariant summary detects.

description:
    - Run the detection ladder on an invariant summary and report the detected knot,
      an iterated torus knot of the given genus, or an unknown verdict with the failing clauses.
    - The summary is either given directly or computed from a knot specification tree.

author:
    - l2alex contributors

options:
    summary:
        description:
            - Invariant summary with the keys C(genus), C(volume) and optionally C(value_at_1),
              C(lambda), C(monomial_tails) and C(leading_C).
            - Mutually exclusive with O(knot).
        type: dict
    knot:
        description:
            - Knot specification tree whose summary is computed first.
        type: dict
    leading_c:
        description:
            - Leading coefficient of the invariant, used to recognize the knot C(5_2).
            - Only used together with O(knot).
        type: float

"""

EXAMPLES = """
- name: Detect the figure-eight knot from its summary
  topology.l2alex.detection:
    summary:
      genus: 1
      volume: 2.029883212819307
      lambda: lambda_F
      monomial_tails: true
  register: output

- name: Detect a cable of the figure-eight knot
  topology.l2alex.detection:
    knot:
      type: cable
      p: 3
      q: 1
      companion: {type: catalog, name: "4_1"}
  register: output

- name: Print the verdict
  debug:
    var: output.l2alex_detection.verdict
"""

RETURN = """
l2alex_detection:
    description: The verdict of the detector
    returned: always
    type: complex
    contains:
        verdict:
            description: One of C(detected), C(iterated_torus) or C(unknown)
            returned: always
            type: str
            sample: detected
        names:
            description: Detected knot names, closed under mirror image
            returned: always
            type: list
            elements: str
            sample: ["C_{3,1}(4_1)", "mirror(C_{3,1}(4_1))"]
        genus:
            description: Genus of the knot
            returned: always
            type: int
            sample: 3
        clause:
            description: Ladder clause that produced the verdict
            returned: always
            type: str
            sample: e
        reason:
            description: Why no knot was detected, empty otherwise
            returned: always
            type: str
            sample: ""
        failures:
            description: Failing clauses with their reasons
            returned: always
            type: dict
            sample: {}
        summary:
            description: The summary the detector ran on
            returned: always
            type: dict
            sample: {"schema": "l2alex/1", "genus": 3, "volume": 2.0299, "lambda": "lambda_F^(1/3)"}
        diagnostics:
            description:
                - Side facts about the summary.
                - C(entropy_lower_bound) is the lower bound vol / (6 pi g) on the log of the monodromy
                  dilatation of a fibered knot with monomial tails, null otherwise.
            returned: always
            type: dict
            sample: {"entropy_lower_bound": 0.1077}
"""

from ansible.module_utils.basic import AnsibleModule

from ..module_utils.detector import detect, detection_diagnostics
from ..module_utils.errors import L2AlexException
from ..module_utils.invariants import InvariantSummary, expr_of, summarize
from ..module_utils.knots import knot_from_dict
from ..module_utils.l2alex import AnsibleL2Alex


class AnsibleL2AlexDetection(AnsibleL2Alex):
    represent = "l2alex_detection"

    l2alex_detection: dict | None = None

    def _prepare_result(self):
        return self.l2alex_detection

    def run_detection(self):
        self.fail_on_invalid_params(required_one_of=[["summary", "knot"]])
        try:
            if self.module.params.get("summary") is not None:
                summary = InvariantSummary.from_dict(self.module.params.get("summary"))
            else:
                knot = knot_from_dict(self.module.params.get("knot"))
                summary = summarize(expr_of(knot), self.module.params.get("leading_c"))

            result = detect(summary)
            self.l2alex_detection = {
                **result.to_dict(),
                "summary": summary.to_dict(),
                "diagnostics": detection_diagnostics(summary),
            }

        except L2AlexException as exception:
            self.fail_json_l2alex(exception)

    @classmethod
    def define_module(cls):
        return AnsibleModule(
            argument_spec=dict(
                summary={"type": "dict"},
                knot={"type": "dict"},
                leading_c={"type": "float"},
            ),
            mutually_exclusive=[["summary", "knot"]],
            supports_check_mode=True,
        )


def main():
    module = AnsibleL2AlexDetection.define_module()
    l2alex = AnsibleL2AlexDetection(module)

    l2alex.run_detection()
    module.exit_json(**l2alex.get_result())


if __name__ == "__main__":
    main()
