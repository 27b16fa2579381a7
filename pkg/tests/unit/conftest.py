from __future__ import annotations

from unittest.mock import MagicMock

import pytest

from plugins.module_utils.knots import fiber_names
from plugins.module_utils.words import Automorphism


@pytest.fixture()
def module():
    obj = MagicMock()
    obj.params = {
        "eps": [0.1, 0.01],
        "terms": 8,
        "prune": 1e-12,
        "threads": 1,
        "max_support": 25_000,
        "method": "auto",
    }
    return obj


@pytest.fixture()
def figure_eight_monodromy() -> Automorphism:
    return Automorphism.from_text(["a b", "b a b"], ["a^2 b^-1", "b a^-1"], fiber_names(1))


@pytest.fixture()
def trefoil_monodromy() -> Automorphism:
    return Automorphism.from_text(["a b", "a^-1"], ["b^-1", "b a"], fiber_names(1))
