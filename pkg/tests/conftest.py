import pytest

from rcckit import RCC5, Network


@pytest.fixture
def example1() -> Network:
    """Five-variable RCC5 network with one non-trivial redundant edge.

    v1 PP v2, v1 PP v5, v3 PP v1, v4 PP v2, v5 {DR,PP} v2, v3 PO v4;
    the (v1, v2) constraint is entailed by the rest.
    """
    net = Network(RCC5, 5)
    net[0, 1] = "PP"
    net[0, 4] = "PP"
    net[2, 0] = "PP"
    net[3, 1] = "PP"
    net[4, 1] = "DR|PP"
    net[2, 3] = "PO"
    return net


@pytest.fixture
def example2() -> Network:
    """Four-variable RCC5 network with a P-cycle forcing v1=v2=v3.

    v1 P v2, v2 P v3, v3 P v1 with P = {PP,EQ}, plus v1 PO v4 and
    v2 PO v4.  Each PO constraint makes the other redundant, so the core
    is not equivalent to the network and prime subnetworks are not unique.
    """
    net = Network(RCC5, 4)
    net[0, 1] = "PP|EQ"
    net[1, 2] = "PP|EQ"
    net[2, 0] = "PP|EQ"
    net[0, 3] = "PO"
    net[1, 3] = "PO"
    return net


@pytest.fixture
def bad_triangle() -> Network:
    """a PP b, b PP c, a DR c: PP composed with PP forces PP, so empty."""
    net = Network(RCC5, 3)
    net[0, 1] = "PP"
    net[1, 2] = "PP"
    net[0, 2] = "DR"
    return net
