#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#


from collections.abc import Iterator

from _pytest.config import Config
from provide.testkit import (
    reset_foundation_setup_for_testing,
)
import pytest

from harmvol.homology import CurveModel, build_curve


def pytest_configure(config: Config) -> None:
    """Register custom marks."""
    config.addinivalue_line("markers", "slow: genus-3 cohomology and oracle grids")
    config.addinivalue_line("markers", "property: hypothesis property suites")


@pytest.fixture(autouse=True)
def reset_foundation_for_tests() -> Iterator[None]:
    """Reset Foundation state between tests for proper isolation."""
    yield
    reset_foundation_setup_for_testing()


@pytest.fixture(autouse=True)
def isolate_hvol_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep HVOL_* settings from the developer's shell out of the tests."""
    for name in ("HVOL_LOG_LEVEL", "HVOL_THREADS", "HVOL_DEGREE", "HVOL_OUTPUT_FORMAT"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(params=["even", "odd"])
def genus2_curve(request: pytest.FixtureRequest) -> CurveModel:
    """C_6 (even) and C_5 (odd)."""
    return build_curve(2, request.param)


@pytest.fixture
def c6() -> CurveModel:
    return build_curve(2, "even")


@pytest.fixture
def c5() -> CurveModel:
    return build_curve(2, "odd")


# 🌀🧮🔚
