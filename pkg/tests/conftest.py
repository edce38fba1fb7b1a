from fractions import Fraction

import numpy as np
import pytest

from kenmotsu.geometry import compute_geometry
from kenmotsu.manifold import FrameManifoldSpec, StructureConstants, example_spec


@pytest.fixture(scope="session")
def k3():
    return example_spec("kenmotsu3")


@pytest.fixture(scope="session")
def flat3():
    return example_spec("flat3")


@pytest.fixture(scope="session")
def k3_geom(k3):
    return compute_geometry(k3)


@pytest.fixture(scope="session")
def flat3_geom(flat3):
    return compute_geometry(flat3)


@pytest.fixture(scope="session")
def skewed(k3):
    """[e1,e3] = e1, [e2,e3] = 2 e2: almost contact, not Kenmotsu, Ricci not eta-Einstein."""
    c = StructureConstants.from_entries(3, [(1, 3, 1, 1), (2, 3, 2, 2)])
    return FrameManifoldSpec("skewed3", np.identity(3, dtype=object), c, k3.phi, k3.xi)


@pytest.fixture(scope="session")
def k3_doc(k3):
    return k3.to_document()


def F(*args):
    return Fraction(*args)
