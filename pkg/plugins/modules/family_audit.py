#!/usr/bin/python

# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


from __future__ import annotations

DOCUMENTATION = """
---
module: family_audit

short_description: Audit the knot pairs J_n and K_n with equal genus and volume.

description:
    - For each index up to O(n_max), build C(J_n), the connected sum of C(4_1) with p-1 copies
      of C(3_1), and C(K_n), the cable C(C_{p,1}(4_1)), where p is the n-th prime counted from zero.
    - Check that both knots have genus p and the volume of C(4_1), that their invariants
      differ and that C(K_n) is detected.
    - The module fails when a row fails.

author:
    - l2alex contributors

options:
    n_max:
        description:
            - Largest family index to audit.
        required: true
        type: int
    threads:
        description:
            - Number of worker threads.
            - You can also set this option by using the C(L2ALEX_THREADS) environment variable.
        default: 1
        type: int

"""

EXAMPLES = """
- name: Audit the first six family members
  topology.l2alex.family_audit:
    n_max: 5
  register: output

- name: Print the table
  debug:
    var: output.l2alex_family_audit.rows
"""

RETURN = """
l2alex_family_audit:
    description: The family audit report
    returned: always
    type: complex
    contains:
        passed:
            description: Whether every row passed
            returned: always
            type: bool
            sample: true
        rows:
            description: One row per family index
            returned: always
            type: list
            elements: dict
            contains:
                n:
                    description: Family index
                    returned: always
                    type: int
                    sample: 0
                p:
                    description: The n-th prime
                    returned: always
                    type: int
                    sample: 2
                genus_J:
                    description: Genus of J_n
                    returned: always
                    type: int
                    sample: 2
                genus_K:
                    description: Genus of K_n
                    returned: always
                    type: int
                    sample: 2
                lambda_J:
                    description: Monomiality limit of J_n
                    returned: always
                    type: str
                    sample: lambda_F
                lambda_K:
                    description: Monomiality limit of K_n
                    returned: always
                    type: str
                    sample: lambda_F^(1/2)
                detected_K:
                    description: Verdict of the detector on K_n
                    returned: always
                    type: str
                    sample: C_{2,1}(4_1)
                clauses:
                    description: Result of each check
                    returned: always
                    type: dict
                    sample: {"genus": true, "volume": true, "inequivalent": true, "detected": true}
"""

from ansible.module_utils.basic import AnsibleModule, env_fallback

from ..module_utils.detector import FamilyAuditReport, family_audit
from ..module_utils.errors import L2AlexException
from ..module_utils.l2alex import AnsibleL2Alex


class AnsibleL2AlexFamilyAudit(AnsibleL2Alex):
    represent = "l2alex_family_audit"

    l2alex_family_audit: FamilyAuditReport | None = None

    def _prepare_result(self):
        return self.l2alex_family_audit.to_dict()

    def run_audit(self):
        try:
            self.l2alex_family_audit = family_audit(
                self.module.params.get("n_max"),
                threads=self.module.params.get("threads"),
            )
        except L2AlexException as exception:
            self.fail_json_l2alex(exception)

    @classmethod
    def define_module(cls):
        return AnsibleModule(
            argument_spec=dict(
                n_max={"type": "int", "required": True},
                threads={
                    "type": "int",
                    "fallback": (env_fallback, ["L2ALEX_THREADS"]),
                    "default": 1,
                },
            ),
            supports_check_mode=True,
        )


def main():
    module = AnsibleL2AlexFamilyAudit.define_module()
    l2alex = AnsibleL2AlexFamilyAudit(module)

    l2alex.run_audit()
    result = l2alex.get_result()

    if not result["l2alex_family_audit"]["passed"]:
        module.fail_json(msg="family audit failed", **result)
    module.exit_json(**result)


if __name__ == "__main__":
    main()
