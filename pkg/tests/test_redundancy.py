"""Redundancy detection, cores, and the unique prime subnetwork."""

import random

import numpy as np
import pytest

import util_instances as gen
from rcckit import RCC5, RCC8, Network
from rcckit.algebra import d5_14, d5_20, d8_41, d8_64, h5
from rcckit.errors import (
    InconsistentNetworkError,
    MembershipError,
    NetworkShapeError,
    NotAllDifferentError,
)
from rcckit.network import remove_constraint
from rcckit.reasoning import a_closure
from rcckit.redundancy import (
    core,
    core_algorithm1,
    detect_distributive,
    equivalent,
    is_redundant,
    prime_iterative,
    weaken_scenario,
)

ALL_SUBS = (d5_14(), d5_20(), d8_41(), d8_64())


def test_is_redundant_example1(example1):
    assert is_redundant(example1, 0, 1)
    for i, j in example1.constraint_pairs():
        if (i, j) != (0, 1):
            assert not is_redundant(example1, i, j)
    # universal constraints are trivially redundant
    assert is_redundant(example1, 0, 3)
    with pytest.raises(NetworkShapeError):
        is_redundant(example1, 1, 1)


def test_core_example1(example1):
    rep = core(example1)
    assert rep.nontrivial == {(0, 1)}
    assert rep.trivially_redundant <= rep.redundant
    assert rep.network[0, 1].is_universal
    assert equivalent(example1, rep.network)


def test_core_example2_not_equivalent(example2):
    rep = core(example2)
    assert rep.nontrivial == {(0, 3), (1, 3)}
    assert not equivalent(example2, rep.network)


def test_prime_iterative_example1_any_order(example1):
    pairs = list(example1.constraint_pairs())
    rng = random.Random(3)
    for _ in range(5):
        order = pairs[:]
        rng.shuffle(order)
        out = prime_iterative(example1, order)
        assert set(out.constraint_pairs()) == set(pairs) - {(0, 1)}
        assert equivalent(example1, out)


def test_prime_iterative_example2_two_orders(example2):
    base = [(0, 1), (1, 2), (0, 2)]
    keep_24 = prime_iterative(example2, [(0, 3), (1, 3)] + base)
    keep_14 = prime_iterative(example2, [(1, 3), (0, 3)] + base)
    assert set(keep_24.constraint_pairs()) == set(base) | {(1, 3)}
    assert set(keep_14.constraint_pairs()) == set(base) | {(0, 3)}
    assert equivalent(example2, keep_24)
    assert equivalent(example2, keep_14)
    # both are prime: nothing left is redundant
    for out in (keep_24, keep_14):
        for i, j in out.constraint_pairs():
            assert not is_redundant(out, i, j)


def test_prime_iterative_validates_order(example1):
    with pytest.raises(NetworkShapeError):
        prime_iterative(example1, [(0, 1)])
    with pytest.raises(NetworkShapeError):
        prime_iterative(example1, list(example1.constraint_pairs())
                        + [(0, 1)])


def test_core_algorithm1_example1_with_override(example1):
    assert detect_distributive(example1) is None
    with pytest.raises(MembershipError):
        core_algorithm1(example1)
    rep = core_algorithm1(example1, h5())
    assert rep.nontrivial == {(0, 1)}
    assert rep.method == "algorithm1"
    assert equivalent(example1, rep.network)


def test_core_algorithm1_rejects_example2(example2):
    with pytest.raises(NotAllDifferentError):
        core_algorithm1(example2, h5())


def test_core_algorithm1_rejects_inconsistent(bad_triangle):
    with pytest.raises(InconsistentNetworkError):
        core_algorithm1(bad_triangle, h5())


def test_core_algorithm1_membership_check(example1):
    with pytest.raises(MembershipError):
        core_algorithm1(example1, d5_20())


def test_core_algorithm1_nested_scenario():
    # a NTPP b NTPP c with a NTPP c: the long edge is implied
    net = Network(RCC8, 3)
    net[0, 1] = "NTPP"
    net[1, 2] = "NTPP"
    net[0, 2] = "NTPP"
    rep = core_algorithm1(net)
    assert rep.redundant == {(0, 2)}
    assert rep.trivially_redundant == set()
    assert str(rep.network[0, 1]) == "NTPP"
    assert rep.network[0, 2].is_universal


def test_detect_distributive_order():
    net = Network(RCC8, 2)
    net[0, 1] = "DC|EC"
    assert detect_distributive(net).name == "D8_41"
    net[0, 1] = "PO|EQ"  # only in the 64-member subalgebra
    assert detect_distributive(net).name == "D8_64"
    five = Network(RCC5, 2)
    five[0, 1] = "PP|EQ"
    assert detect_distributive(five).name == "D5_14"
    five[0, 1] = "PO|EQ"
    assert detect_distributive(five).name == "D5_20"


def test_equivalent_basics(example1, example2, bad_triangle):
    assert equivalent(example1, a_closure(example1).network)
    assert equivalent(example1, remove_constraint(example1, 0, 1))
    assert not equivalent(example2, core(example2).network)
    assert equivalent(bad_triangle, bad_triangle)
    with pytest.raises(NetworkShapeError):
        equivalent(example1, example2)


def test_equivalent_distributive_inconsistent_cases():
    a = Network(RCC8, 3)
    a[0, 1] = "NTPP"
    a[1, 2] = "NTPP"
    a[0, 2] = "DC"  # NTPP chain forces NTPP: inconsistent
    b = Network(RCC8, 3)
    b[0, 1] = "DC"
    b[1, 2] = "NTPP"
    assert not equivalent(a, b)
    assert equivalent(a, a)


@pytest.mark.parametrize("sub", ALL_SUBS, ids=lambda s: s.name)
def test_uniqueness_oracle_equivalence(sub):
    """Algorithm 1 == per-constraint sweep == any-order fold, and the
    result is equivalent to the input (spot-scale version of the
    acceptance run)."""
    rng = random.Random(17)
    for net in gen.all_different_instances(sub, 12, seed=29):
        rep = core_algorithm1(net, sub)
        sweep = {(i, j)
                 for i in range(net.n) for j in range(i + 1, net.n)
                 if is_redundant(net, i, j)}
        assert rep.redundant == sweep
        order = list(net.constraint_pairs())
        rng.shuffle(order)
        folded = prime_iterative(net, order)
        assert folded == rep.network
        assert equivalent(net, rep.network)
        # prime property: nothing in the output is redundant
        for i, j in rep.network.constraint_pairs():
            assert not is_redundant(rep.network, i, j)


@pytest.mark.parametrize("sub", [d5_14(), d8_41()], ids=lambda s: s.name)
def test_redundancy_transfers_to_the_closure(sub):
    # (i,j) redundant in the network iff redundant in its a-closure
    for net in gen.all_different_instances(sub, 8, seed=41, n_lo=4, n_hi=6):
        closed = a_closure(net).network
        for i in range(net.n):
            for j in range(i + 1, net.n):
                assert is_redundant(net, i, j) \
                    == is_redundant(closed, i, j)


@pytest.mark.parametrize("sub", [d5_20(), d8_64()], ids=lambda s: s.name)
def test_simultaneous_removal_is_safe(sub):
    for net in gen.all_different_instances(sub, 8, seed=43, n_lo=4, n_hi=6):
        rep = core_algorithm1(net, sub)
        assert equivalent(net, rep.network)


def test_weaken_scenario_consistent_and_inside_subalgebra():
    rng = random.Random(5)
    sc = gen.random_scenario(6, 19)
    net = weaken_scenario(sc, d8_41(), rng)
    from rcckit.network import refines

    assert refines(sc, net)  # weakening only loosens entries
    masks = set(np.unique(net.matrix).tolist())
    assert masks <= d8_41().members
    assert a_closure(net).consistent


def test_redundancy_report_fields(example1):
    rep = core(example1)
    assert rep.method == "sweep"
    assert rep.checks == len(list(example1.constraint_pairs()))
    assert rep.trivially_redundant == {
        (i, j) for i in range(5) for j in range(i + 1, 5)
        if example1.mask(i, j) == RCC5.universal}
