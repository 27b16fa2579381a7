#!/usr/bin/python

# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


from __future__ import annotations

DOCUMENTATION = """
---
module: catalog_info

short_description: Gather infos about the knots in the catalog.


description:
    - Gather infos about the knots the catalog knows, including torus knots C(T(p,q)).

author:
    - l2alex contributors

options:
    name:
        description:
            - The name of the knot you want to get.
            - The module will fail if the provided name is unknown.
        type: str

"""

EXAMPLES = """
- name: Gather catalog infos
  topology.l2alex.catalog_info:
  register: output

- name: Gather infos about a torus knot
  topology.l2alex.catalog_info:
    name: T(2,5)
  register: output

- name: Print the gathered infos
  debug:
    var: output.l2alex_catalog_info
"""

RETURN = """
l2alex_catalog_info:
    description: The catalog entries as list
    returned: always
    type: complex
    contains:
        name:
            description: Canonical name of the knot
            returned: always
            type: str
            sample: 4_1
        genus:
            description: Seifert genus
            returned: always
            type: int
            sample: 1
        volume:
            description: Hyperbolic volume of the complement, 0 for non-hyperbolic knots
            returned: always
            type: float
            sample: 2.029883212819307
        fibered:
            description: Whether the knot is fibered
            returned: always
            type: bool
            sample: true
        exp_vol_over_6pi:
            description: Value of the invariant at 1
            returned: always
            type: float
            sample: 1.1137
        braid:
            description: Braid word whose closure is the knot
            returned: always
            type: str
            sample: s1 s2^-1 s1 s2^-1
        alexander:
            description: Alexander polynomial coefficients, lowest degree first
            returned: always
            type: list
            elements: int
            sample: [1, -3, 1]
        notes:
            description: Free form notes
            returned: always
            type: str
            sample: ""
        monodromy:
            description: Monodromy of the fibration on the free fiber group
            returned: when the knot is fibered and the monodromy is known
            type: dict
            sample: {"images": ["a b", "b a b"], "inverse_images": ["a^2 b^-1", "b a^-1"]}
"""

from ansible.module_utils.basic import AnsibleModule

from ..module_utils.errors import L2AlexException
from ..module_utils.knots import CatalogEntry, catalog, catalog_names
from ..module_utils.l2alex import AnsibleL2Alex


class AnsibleL2AlexCatalogInfo(AnsibleL2Alex):
    represent = "l2alex_catalog_info"

    l2alex_catalog_info: list[CatalogEntry] | None = None

    def _prepare_result(self):
        return [entry.to_dict() for entry in self.l2alex_catalog_info if entry is not None]

    def get_entries(self):
        try:
            if self.module.params.get("name") is not None:
                self.l2alex_catalog_info = [catalog(self.module.params.get("name"))]
            else:
                self.l2alex_catalog_info = [catalog(name) for name in catalog_names()]

        except L2AlexException as exception:
            self.fail_json_l2alex(exception)

    @classmethod
    def define_module(cls):
        return AnsibleModule(
            argument_spec=dict(
                name={"type": "str"},
            ),
            supports_check_mode=True,
        )


def main():
    module = AnsibleL2AlexCatalogInfo.define_module()
    l2alex = AnsibleL2AlexCatalogInfo(module)

    l2alex.get_entries()
    result = l2alex.get_result()

    ansible_info = {"l2alex_catalog_info": result["l2alex_catalog_info"]}
    module.exit_json(**ansible_info)


if __name__ == "__main__":
    main()
