import numpy as np
import pytest

import skewfiss as sf


@pytest.fixture(scope="session")
def cyc13():
    return sf.cyclotomic_scheme(13, 4)


@pytest.fixture(scope="session")
def thin_z5():
    """Directed 5-cycle powers, labelled by the difference itself."""
    rel = [[(x - y) % 5 for y in range(5)] for x in range(5)]
    return sf.AssociationScheme(np.array(rel))


@pytest.fixture(scope="session")
def wreath_3_7():
    return sf.wreath(sf.cyclotomic_scheme(3, 2), sf.cyclotomic_scheme(7, 2))


@pytest.fixture(scope="session")
def wreath_7_3():
    return sf.wreath(sf.cyclotomic_scheme(7, 2), sf.cyclotomic_scheme(3, 2))


@pytest.fixture(scope="session")
def j52():
    return sf.johnson2_scheme(5)
