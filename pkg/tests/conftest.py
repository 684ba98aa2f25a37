import pytest

from lotdp import Instance, Supplier


@pytest.fixture
def golden():
    """Two identical suppliers, window [2, 3], demand 5: the optimum splits the
    demand into two batches of 5/2."""
    return Instance(
        suppliers=(Supplier(0, 1, 2, 3), Supplier(0, 1, 2, 3)),
        P=5,
        lam=1,
        c_hold=2,
    )


@pytest.fixture
def overshoot():
    """One supplier whose minimum batch exceeds the demand."""
    return Instance(suppliers=(Supplier(1, 1, 10, 20),), P=5, lam=1, c_hold=1)
