import numpy as np
import pytest

from weakhopf import examples as ex


@pytest.fixture(scope="session")
def cz2():
    return ex.group_weak_hopf(ex.cyclic_group(2))


@pytest.fixture(scope="session")
def cz3():
    return ex.group_weak_hopf(ex.cyclic_group(3))


@pytest.fixture(scope="session")
def cs3():
    return ex.group_weak_hopf(ex.symmetric_group_3())


@pytest.fixture(scope="session")
def wz2z2():
    """C[Z2] x_Ad Z2, the dim-4 workhorse."""
    return ex.group_weak_hopf(ex.cyclic_group(2), [0, 1])


@pytest.fixture(scope="session")
def wz2_klein():
    """H = Z2 inside G = Z2 x Z2, dim 8."""
    return ex.group_weak_hopf(ex.klein_four(), [0, 1])


@pytest.fixture(scope="session")
def wz3s3():
    """H = Z3 inside G = S3, dim 18."""
    return ex.group_weak_hopf(ex.symmetric_group_3(), [0, 1, 2])


@pytest.fixture(scope="session")
def pauli():
    """The cocycle-twisted Klein instance with its M_2 action."""
    W, MA = ex.m2_pauli_action()
    return W, MA


@pytest.fixture(scope="session")
def m2_action():
    W, MA = ex.m2_inner_z2_action()
    return W, MA


@pytest.fixture(scope="session")
def collapsed_action():
    W, MA = ex.m2_collapsed_action()
    return W, MA


@pytest.fixture(scope="session")
def group_instances(cz2, cz3, cs3, wz2z2, wz2_klein, wz3s3):
    return {"CZ2": cz2, "CZ3": cz3, "CS3": cs3, "Z2xZ2": wz2z2,
            "Z2xKlein": wz2_klein, "Z3xS3": wz3s3}


@pytest.fixture(scope="session")
def all_instances(group_instances, pauli):
    out = dict(group_instances)
    out["Pauli"] = pauli[0]
    return out


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
