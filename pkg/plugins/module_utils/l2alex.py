# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


from __future__ import annotations

import traceback
from typing import Any, NoReturn

from ansible.module_utils.basic import (
    AnsibleModule as AnsibleModuleBase,
    env_fallback,
    missing_required_lib,
)
from ansible.module_utils.common.text.converters import to_native
from ansible.module_utils.common.validation import (
    check_missing_parameters,
    check_required_one_of,
)

from .errors import L2AlexException
from .fox import HAS_SYMPY
from .vna import HAS_NUMPY, NumericParams


# Provide typing definitions to the AnsibleModule class
class AnsibleModule(AnsibleModuleBase):
    params: dict


def l2alex_check_required_lib() -> str | None:
    """Name of the first missing numeric library, if any."""
    if not HAS_SYMPY:
        return "sympy"
    if not HAS_NUMPY:
        return "numpy"
    return None


class AnsibleL2Alex:
    represent: str

    module: AnsibleModule

    def __init__(self, module: AnsibleModule):
        if not self.represent:
            raise NotImplementedError(f"represent property is not defined for {self.__class__.__name__}")

        self.module = module
        self.result = {"changed": False, self.represent: None}

        missing = l2alex_check_required_lib()
        if missing is not None:
            module.fail_json(msg=missing_required_lib(missing))

    def fail_json_l2alex(
        self,
        exception: L2AlexException,
        msg: str | None = None,
        params: Any = None,
        **kwargs,
    ) -> NoReturn:
        last_traceback = traceback.format_exc()

        failure = {
            "message": exception.message,
            "code": exception.code,
            "details": exception.details,
        }

        if params is not None:
            failure["params"] = params

        exception_message = to_native(exception)
        if msg is not None:
            msg = f"{exception_message}: {msg}"
        else:
            msg = exception_message

        self.module.fail_json(msg=msg, exception=last_traceback, failure=failure, **kwargs)

    def fail_on_invalid_params(
        self,
        *,
        required: list[str] | None = None,
        required_one_of: list[list[str]] | None = None,
    ) -> None:
        """
        Run additional validation that cannot be done in the argument spec validation.

        :param required: Check that terms exists in the module params.
        :param required_one_of: Check each list of terms to ensure at least one exists in the module parameters.
        """
        try:
            if required:
                check_missing_parameters(self.module.params, required)

            if required_one_of:
                params_without_nones = {k: v for k, v in self.module.params.items() if v is not None}
                check_required_one_of(required_one_of, params_without_nones)

        except TypeError as e:
            self.module.fail_json(msg=to_native(e))

    def numeric_params(self) -> NumericParams:
        """Numeric engine parameters from the module params."""
        try:
            return NumericParams(
                epsilons=tuple(self.module.params["eps"]),
                terms=self.module.params["terms"],
                prune=self.module.params["prune"],
                threads=self.module.params["threads"],
                max_support=self.module.params["max_support"],
                method=self.module.params["method"],
            )
        except L2AlexException as exception:
            self.fail_json_l2alex(exception)

    @classmethod
    def base_module_arguments(cls):
        return {
            "eps": {
                "type": "list",
                "elements": "float",
                "default": list(NumericParams.epsilons),
            },
            "terms": {
                "type": "int",
                "default": NumericParams.terms,
            },
            "prune": {
                "type": "float",
                "default": NumericParams.prune,
            },
            "max_support": {
                "type": "int",
                "default": NumericParams.max_support,
            },
            "method": {
                "type": "str",
                "choices": ["auto", "series"],
                "default": NumericParams.method,
            },
            "threads": {
                "type": "int",
                "fallback": (env_fallback, ["L2ALEX_THREADS"]),
                "default": 1,
            },
        }

    def _prepare_result(self) -> dict[str, Any]:
        """Prepare the result for every module"""
        return {}

    def get_result(self) -> dict[str, Any]:
        if getattr(self, self.represent) is not None:
            self.result[self.represent] = self._prepare_result()
        return self.result
