import pytest

from nhosc import BasisSpec, TransformParams, isospectral_report


@pytest.fixture(scope="session")
def table1_params():
    # W=4, L=3 configuration: A=1, R=0, B=sqrt(W^2+L^2)=5, basis frequency W
    return TransformParams(l_coef=3.0, r_coef=0.0, a_coef=1.0, b_coef=5.0)


@pytest.fixture(scope="session")
def table1_report(table1_params):
    return isospectral_report(table1_params, BasisSpec(n_dim=100, freq=4.0))
