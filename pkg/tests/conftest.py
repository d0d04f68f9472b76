import numpy as np
import pytest

from opsplit import ASign, ModelInstance, orthonormalize


@pytest.fixture
def worked_instance():
    """The two-dimensional model instance used for hand-checked values.

    U = span{(1,0)}, a = (0,2), v = (0,1), w = (1,1), gamma = lambda = 1/2.
    """
    basis = orthonormalize([np.array([1.0, 0.0])])
    return ModelInstance(subspace=basis, a=[0.0, 2.0], v=[0.0, 1.0],
                         w=[1.0, 1.0], gamma=0.5, lam=0.5, a_sign=ASign.MINUS_V)


@pytest.fixture
def worked_pair(worked_instance):
    return worked_instance.split_pair()
