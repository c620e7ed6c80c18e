from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from suztool.simple import build_su3, build_sz
from suztool.suzuki import SuzukiGroup, parse_suzuki_spec

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


def group(spec: str) -> SuzukiGroup:
    return SuzukiGroup(parse_suzuki_spec(spec))


@pytest.fixture(scope="session")
def a31() -> SuzukiGroup:
    return group("A(m=3,l=1)")


@pytest.fixture(scope="session")
def a32() -> SuzukiGroup:
    return group("A(m=3,l=2)")


@pytest.fixture(scope="session")
def b20() -> SuzukiGroup:
    return group("B(m=2,l=0,eps=auto)")


@pytest.fixture(scope="session")
def b21() -> SuzukiGroup:
    return group("B(m=2,l=1,eps=auto)")


@pytest.fixture(scope="session")
def c3() -> SuzukiGroup:
    return group("C(m=3,eps=auto)")


@pytest.fixture(scope="session")
def a62() -> SuzukiGroup:
    return group("A(m=6,l=2)")


@pytest.fixture(scope="session")
def sz8():
    return build_sz(8)


@pytest.fixture(scope="session")
def su34():
    return build_su3(4)
