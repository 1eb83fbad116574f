from fractions import Fraction

import pytest

from czcriterion.criterion import OperatorSpec
from czcriterion.poly import HPoly, from_dict
from czcriterion.scalar import gamma_j


def poly(n, terms):
    return from_dict(n, {tuple(e): Fraction(c) for e, c in terms.items()})


XY = poly(2, {(1, 1): 1})
R4 = poly(2, {(3, 1): 1, (1, 3): -1})
P4 = poly(2, {(4, 0): 1, (2, 2): -6, (0, 4): 1})
P8 = poly(2, {(8, 0): 1, (0, 8): 1, (6, 2): -28, (2, 6): -28, (4, 4): 70})


def xy_triple_specs():
    """Divisibility failure, controlled, zero on the sphere."""
    return (
        OperatorSpec.from_components(XY, P4),
        OperatorSpec.from_components(XY, R4),
        OperatorSpec.from_components(XY, R4.scale(2)),
    )


def lambda_family_spec(lam):
    lam = Fraction(lam)
    if lam == 0:
        return OperatorSpec.from_components(XY)
    return OperatorSpec.from_components(XY, R4.scale(lam))


def eps_family_spec(eps):
    eps = Fraction(eps)
    g2, g4, g8 = (gamma_j(2, d) for d in (2, 4, 8))
    return OperatorSpec.from_components(XY.scale(1 / g2), P4.scale(eps / g4), P8.scale(-eps / g8))


@pytest.fixture
def xy_triple():
    return xy_triple_specs()
