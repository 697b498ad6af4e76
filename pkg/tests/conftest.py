import pytest

from chartower.catalog import build_entry
from chartower.group import Perm, generate_group, sylow_subgroup


@pytest.fixture(scope="session")
def f21():
    return build_entry("F21")


@pytest.fixture(scope="session")
def ext27():
    return build_entry("3^(1+2)")


@pytest.fixture(scope="session")
def c21():
    n = 21
    return generate_group(n, [Perm([(i + 1) % n for i in range(n)])])


@pytest.fixture(scope="session")
def c7xc9():
    return build_entry("C7:C9")


@pytest.fixture(scope="session")
def f21_c7(f21):
    return sylow_subgroup(f21.whole, 7)
