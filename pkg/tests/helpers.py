import numpy as np

from bialgebra_realization.linalg import Q


def vec(*xs):
    return np.array([Q(x) for x in xs], dtype=object)


def mat(rows):
    return np.array([[Q(x) for x in row] for row in rows], dtype=object)
