import pytest

from fpcert import low_index, presentation


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Touch both table kernels once so compilation (when numba is active)
    happens before any timed test starts its clock."""
    f2 = presentation("a b")
    low_index(f2, 2)
    low_index(f2, 2, normal_only=True)
